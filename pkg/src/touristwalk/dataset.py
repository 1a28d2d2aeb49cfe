"""Synthetic network datasets: manifest, per-sample specs, feature extraction."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence

from .classifier import LABELS, LabeledSample
from .generators import GeneratorSpec, Model, NoiseSpec, apply_noise, derive_seed, make_rng
from .graph import Graph
from .metrics import structural_features
from .signatures import joint_histogram, psi, truncate_signature
from .walker import WalkerConfig, walk_all

FORMAT_VERSION = 1

_MODEL_FOR = {
    "regular": Model.REGULAR,
    "random": Model.ERDOS_RENYI,
    "small_world": Model.WATTS_STROGATZ,
}


class ManifestError(ValueError):
    def __init__(self, field_name, message):
        self.field = field_name
        super().__init__(f"manifest field {field_name!r}: {message}")


@dataclass
class DatasetManifest:
    base_seed: int = 2024
    n_values: List[int] = field(default_factory=lambda: [500])
    k_values: List[int] = field(default_factory=lambda: [4, 10, 16])
    graphs_per_class: int = 50
    classes: List[str] = field(default_factory=lambda: list(LABELS))
    small_world_p: List[float] = field(default_factory=lambda: [0.01, 0.1])
    noise: float = 0.0
    mus: List[int] = field(default_factory=lambda: [1, 2, 3, 4, 5])
    # how features are prepared for classification; recorded so a run is self-describing
    signature_alignment: str = "min_n_tail_sum"
    standardize: Dict[str, bool] = field(default_factory=lambda: {"dtw": False, "structural": True})
    files: List[str] = field(default_factory=list)
    format_version: int = FORMAT_VERSION

    @classmethod
    def desk(cls, **overrides):
        return cls(**overrides)

    @classmethod
    def full_scale(cls, **overrides):
        params = dict(n_values=[500, 1000, 1500, 2000], k_values=[4, 6, 8, 10, 12, 14, 16],
                      graphs_per_class=2800)
        params.update(overrides)
        return cls(**params)

    def validate(self):
        if self.format_version != FORMAT_VERSION:
            raise ManifestError("format_version", f"unsupported version {self.format_version}")
        if not self.n_values or any(int(n) < 3 for n in self.n_values):
            raise ManifestError("n_values", "need sizes >= 3")
        for k in self.k_values:
            if k <= 0 or k % 2 or any(k >= n for n in self.n_values):
                raise ManifestError("k_values", f"degree {k} must be even, positive and < every N")
        if not self.k_values:
            raise ManifestError("k_values", "empty")
        if self.graphs_per_class < 1:
            raise ManifestError("graphs_per_class", "must be >= 1")
        unknown = set(self.classes) - set(_MODEL_FOR)
        if unknown or not self.classes:
            raise ManifestError("classes", f"unknown or empty: {sorted(unknown)}")
        lo, hi = self.small_world_p
        if not 0.0 <= lo <= hi <= 1.0:
            raise ManifestError("small_world_p", f"need 0 <= lo <= hi <= 1, got {self.small_world_p}")
        if not 0.0 <= self.noise <= 1.0:
            raise ManifestError("noise", f"rate {self.noise} outside [0, 1]")
        if not self.mus or any(m < 1 for m in self.mus) or sorted(set(self.mus)) != list(self.mus):
            raise ManifestError("mus", f"need strictly increasing memories >= 1, got {self.mus}")
        if self.signature_alignment != "min_n_tail_sum":
            raise ManifestError("signature_alignment", f"unknown mode {self.signature_alignment!r}")
        if set(self.standardize) != {"dtw", "structural"}:
            raise ManifestError("standardize", "needs boolean entries for 'dtw' and 'structural'")
        return self

    def to_json(self):
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_dict(cls, data):
        known = {f for f in cls.__dataclass_fields__}
        extra = set(data) - known
        if extra:
            raise ManifestError(sorted(extra)[0], "unknown field")
        return cls(**data).validate()

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


@dataclass(frozen=True)
class Sample:
    sample_id: str
    label: str
    spec: GeneratorSpec
    noise: Optional[NoiseSpec]

    def build(self) -> Graph:
        g = self.spec.build()
        return apply_noise(g, self.noise) if self.noise is not None else g

    def provenance(self):
        return {
            "model": self.spec.model.value, "n": self.spec.n, "k": self.spec.mean_degree,
            "p": self.spec.rewiring_p, "seed": self.spec.seed,
            "noise": self.noise.rate if self.noise else 0.0,
        }


def samples(manifest: DatasetManifest) -> List[Sample]:
    """Every sample of the dataset, in class then index order.

    Sample ``i`` of a class uses the ``i mod |grid|``-th (N, k) combination,
    so the size/degree grid is covered round-robin.
    """
    manifest.validate()
    grid = [(n, k) for n in manifest.n_values for k in manifest.k_values]
    out = []
    for c, label in enumerate(manifest.classes):
        model = _MODEL_FOR[label]
        for i in range(manifest.graphs_per_class):
            n, k = grid[i % len(grid)]
            seed = derive_seed(manifest.base_seed, c, i)
            p = 0.0
            if model is Model.WATTS_STROGATZ:
                lo, hi = manifest.small_world_p
                p = float(make_rng(derive_seed(manifest.base_seed, c, i, 2)).uniform(lo, hi))
            noise = None
            if manifest.noise > 0:
                noise = NoiseSpec(manifest.noise, derive_seed(manifest.base_seed, c, i, 1))
            out.append(Sample(f"{label}_{i:05d}", label, GeneratorSpec(model, n, k, p, seed), noise))
    return out


def dtw_signature(g: Graph, mus: Sequence[int]):
    """Concatenated signature over ``mus``, one full launch set per memory."""
    jhs = [joint_histogram(walk_all(g, WalkerConfig(mu))) for mu in mus]
    return psi(jhs, list(mus), g.n)


def align_signatures(signatures):
    """Bring signatures of differently sized graphs onto the smallest layout."""
    sizes = {max(ell for _, ell in sv.layout) for sv in signatures}
    if len(sizes) <= 1:
        return list(signatures)
    target = min(sizes)
    return [truncate_signature(sv, target) for sv in signatures]


def dtw_samples(graphs: Sequence[Graph], labels: Sequence[str], mus: Sequence[int],
                ids: Optional[Sequence[str]] = None):
    sigs = align_signatures([dtw_signature(g, mus) for g in graphs])
    ids = ids or [str(i) for i in range(len(graphs))]
    return [LabeledSample(sv.values, lab, sid) for sv, lab, sid in zip(sigs, labels, ids)], sigs


def structural_samples(graphs: Sequence[Graph], labels: Sequence[str],
                       ids: Optional[Sequence[str]] = None):
    ids = ids or [str(i) for i in range(len(graphs))]
    return [LabeledSample(structural_features(g).as_array(), lab, sid)
            for g, lab, sid in zip(graphs, labels, ids)]
