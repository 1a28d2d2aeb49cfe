"""Small-worldness coefficients and the structural comparison vector.

``chi = C * lbar_G / lbar_rand`` combines global clustering with the mean
tourist trajectory length relative to equivalent random graphs.
``omega = L_rand / L - C / C_lattice`` is the reference index.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import asdict, dataclass, fields
from typing import List, Optional

import numpy as np
from scipy.stats import spearmanr

from .generators import derive_seed, equivalent_lattice, equivalent_random
from .graph import (Graph, GraphError, assortativity, average_shortest_path,
                    global_clustering, largest_component, node_mean_distances)
from .signatures import mean_trajectory_length
from .walker import WalkerConfig, walk_all

DEFAULT_REALIZATIONS = 10


class DegenerateMetricError(GraphError):
    pass


@dataclass
class MetricsReport:
    clustering_C: float
    mean_walk_len: float
    baseline_walk_len: float
    chi: float
    mu: int
    baseline_realizations: int
    seed: int
    avg_path_L: Optional[float] = None
    baseline_L_random: Optional[float] = None
    baseline_C_lattice: Optional[float] = None
    omega: Optional[float] = None
    chi_degenerate: bool = False

    def to_dict(self):
        return asdict(self)

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def csv_header(cls):
        return [f.name for f in fields(cls)]

    def csv_row(self):
        return [getattr(self, name) for name in self.csv_header()]


def baseline_graphs(g: Graph, realizations: int, seed: int) -> List[Graph]:
    """Equivalent random graphs, one derived seed per realization."""
    if realizations < 1:
        raise ValueError(f"realizations must be >= 1, got {realizations}")
    return [equivalent_random(g, derive_seed(seed, r)) for r in range(realizations)]


def chi(g: Graph, cfg: WalkerConfig, realizations: int = DEFAULT_REALIZATIONS,
        seed: int = 0, baselines: Optional[List[Graph]] = None) -> MetricsReport:
    """Tourist small-worldness coefficient of ``g``.

    A graph whose walkers never move has ``chi = 0`` whatever the baseline.
    If every random baseline is frozen too (zero mean length), ``chi`` is
    reported as 0 with ``chi_degenerate`` set.
    """
    C = global_clustering(g)
    lg = mean_trajectory_length(walk_all(g, cfg))
    if baselines is None:
        baselines = baseline_graphs(g, realizations, seed)
    # per-realization means, reduced in realization order
    lr = float(np.mean([mean_trajectory_length(walk_all(r, cfg)) for r in baselines]))
    degenerate = lr == 0.0
    value = 0.0 if (lg == 0.0 or degenerate) else C * lg / lr
    return MetricsReport(
        clustering_C=C, mean_walk_len=lg, baseline_walk_len=lr, chi=value,
        mu=cfg.memory, baseline_realizations=len(baselines), seed=seed,
        chi_degenerate=degenerate and lg != 0.0,
    )


@dataclass
class OmegaParts:
    omega: float
    L: float
    L_random: float
    C: float
    C_lattice: float


def omega_parts(g: Graph, realizations: int = DEFAULT_REALIZATIONS, seed: int = 0,
                baselines: Optional[List[Graph]] = None) -> OmegaParts:
    L = average_shortest_path(g)
    C = global_clustering(g)
    try:
        C_lat = global_clustering(equivalent_lattice(g))
    except GraphError as exc:
        raise DegenerateMetricError(f"omega undefined: {exc}") from exc
    if L == 0.0 or C_lat == 0.0:
        raise DegenerateMetricError(f"omega undefined: L={L}, C_lattice={C_lat}")
    if baselines is None:
        baselines = baseline_graphs(g, realizations, seed)
    L_rand = float(np.mean([average_shortest_path(r) for r in baselines]))
    return OmegaParts(L_rand / L - C / C_lat, L, L_rand, C, C_lat)


def omega(g: Graph, realizations: int = DEFAULT_REALIZATIONS, seed: int = 0) -> float:
    return omega_parts(g, realizations, seed).omega


def metrics_report(g: Graph, cfg: WalkerConfig, realizations: int = DEFAULT_REALIZATIONS,
                   seed: int = 0, with_omega: bool = True) -> MetricsReport:
    """chi and (optionally) omega, sharing one set of random baselines."""
    baselines = baseline_graphs(g, realizations, seed)
    report = chi(g, cfg, realizations, seed, baselines=baselines)
    if with_omega:
        parts = omega_parts(g, realizations, seed, baselines=baselines)
        report.avg_path_L = parts.L
        report.baseline_L_random = parts.L_random
        report.baseline_C_lattice = parts.C_lattice
        report.omega = parts.omega
    return report


STRUCTURAL_NAMES = (
    "degree_mean", "degree_std",
    "clustering_mean", "clustering_std",
    "path_mean", "path_std",
    "assortativity", "assortativity_degenerate",
)


@dataclass(frozen=True)
class StructuralFeatures:
    degree_mean: float
    degree_std: float
    clustering_mean: float
    clustering_std: float
    path_mean: float
    path_std: float
    assortativity: float
    assortativity_degenerate: float

    def as_array(self):
        return np.array([getattr(self, name) for name in STRUCTURAL_NAMES], dtype=np.float64)


def structural_features(g: Graph) -> StructuralFeatures:
    """Eight-entry structural vector: mean/std of degree, local clustering,
    per-node mean shortest path (largest component), then assortativity and
    its degeneracy indicator.
    """
    core, _ = largest_component(g)
    dist = node_mean_distances(core) if core.n > 1 else np.zeros(1)
    r = assortativity(g)
    k = g.degrees.astype(np.float64)
    return StructuralFeatures(
        float(k.mean()), float(k.std()),
        float(g.clustering.mean()), float(g.clustering.std()),
        float(dist.mean()), float(dist.std()),
        r.value, float(r.degenerate),
    )


def spearman(x, y) -> float:
    """Spearman rank correlation (average ranks for ties); 0 for constant input."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # constant input: reported as 0 below
        value = spearmanr(x, y).statistic
    return float(value) if not math.isnan(value) else 0.0


def log_grid(lo=1e-4, hi=1.0, count=20):
    return np.logspace(np.log10(lo), np.log10(hi), count)


def ws_sweep(n, k, ps, mus, seeds=5, realizations=DEFAULT_REALIZATIONS, seed=0):
    """chi and omega across Watts-Strogatz rewiring probabilities.

    One row per ``(p, mu)`` with values averaged over ``seeds`` graphs.
    omega does not depend on ``mu`` and is computed once per graph.
    """
    from .generators import watts_strogatz

    rows = []
    for pi, p in enumerate(ps):
        acc = {mu: [] for mu in mus}
        omegas, cs = [], []
        for s in range(seeds):
            g = watts_strogatz(n, k, float(p), derive_seed(seed, k, pi, s))
            base_seed = derive_seed(seed, k, pi, s, 1)
            baselines = baseline_graphs(g, realizations, base_seed)
            omegas.append(omega_parts(g, realizations, base_seed, baselines=baselines).omega)
            cs.append(global_clustering(g))
            for mu in mus:
                r = chi(g, WalkerConfig(mu), realizations, base_seed, baselines=baselines)
                acc[mu].append((r.chi, r.mean_walk_len))
        for mu in mus:
            vals = np.array(acc[mu])
            rows.append({
                "N": n, "k": k, "p": float(p), "mu": mu,
                "chi": float(vals[:, 0].mean()), "omega": float(np.mean(omegas)),
                "C": float(np.mean(cs)), "mean_walk_len": float(vals[:, 1].mean()),
                "seeds": seeds,
            })
    return rows
