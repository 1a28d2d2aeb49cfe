"""Deterministic tourist walks on graphs and the chi small-worldness coefficient."""

from .graph import (Graph, GraphError, DegenerateGraphWarning, average_shortest_path,
                    global_clustering, largest_component)
from .generators import (GeneratorSpec, Model, NoiseSpec, apply_noise, derive_seed,
                         equivalent_lattice, equivalent_random, erdos_renyi, ring_lattice,
                         watts_strogatz)
from .walker import StopReason, WalkerConfig, WalkOutcome, walk, walk_all, trace
from .signatures import joint_histogram, length_histogram, phi, psi, mean_trajectory_length
from .metrics import MetricsReport, chi, omega, metrics_report, structural_features
from .classifier import LabeledSample, LdaModel, loocv, pca_project
from .ingest import parse_edge_list, read_graph, write_edge_list

__all__ = [
    "Graph", "GraphError", "DegenerateGraphWarning", "average_shortest_path",
    "global_clustering", "largest_component",
    "GeneratorSpec", "Model", "NoiseSpec", "apply_noise", "derive_seed",
    "equivalent_lattice", "equivalent_random", "erdos_renyi", "ring_lattice", "watts_strogatz",
    "StopReason", "WalkerConfig", "WalkOutcome", "walk", "walk_all", "trace",
    "joint_histogram", "length_histogram", "phi", "psi", "mean_trajectory_length",
    "MetricsReport", "chi", "omega", "metrics_report", "structural_features",
    "LabeledSample", "LdaModel", "loocv", "pca_project",
    "parse_edge_list", "read_graph", "write_edge_list",
]

__version__ = "0.1.0"
