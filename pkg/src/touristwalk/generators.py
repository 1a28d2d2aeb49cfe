"""Seeded ring lattices, Watts-Strogatz, Erdos-Renyi and edge-noise perturbation.

Every generator draws from a Philox (counter-based) stream keyed by a 64-bit
seed, so output is a pure function of its arguments. Batch jobs derive one
seed per sample with :func:`derive_seed` instead of sharing a stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .graph import Graph, GraphError

_MASK64 = (1 << 64) - 1


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed) & _MASK64)))


def derive_seed(base_seed: int, *keys: int) -> int:
    """Child seed for ``keys`` (e.g. a sample index) under ``base_seed``."""
    ss = np.random.SeedSequence([int(base_seed) & _MASK64, *(int(k) & _MASK64 for k in keys)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


class Model(str, Enum):
    REGULAR = "regular"
    WATTS_STROGATZ = "watts_strogatz"
    ERDOS_RENYI = "erdos_renyi"


@dataclass(frozen=True)
class GeneratorSpec:
    model: Model
    n: int
    mean_degree: int
    rewiring_p: float = 0.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "model", Model(self.model))
        _check_lattice_args(self.n, self.mean_degree)
        if not 0.0 <= self.rewiring_p <= 1.0:
            raise GraphError(f"rewiring_p must lie in [0, 1], got {self.rewiring_p}")

    def build(self) -> Graph:
        if self.model is Model.REGULAR:
            return ring_lattice(self.n, self.mean_degree)
        if self.model is Model.WATTS_STROGATZ:
            return watts_strogatz(self.n, self.mean_degree, self.rewiring_p, self.seed)
        return erdos_renyi(self.n, self.mean_degree / (self.n - 1), self.seed)


def _check_lattice_args(n, k):
    if n < 1 or k <= 0 or k % 2 or k >= n:
        raise GraphError(f"ring lattice needs even 0 < k < n, got n={n}, k={k}")


def _lattice_keys(n, k):
    i = np.arange(n, dtype=np.int64)
    blocks = []
    for d in range(1, k // 2 + 1):
        j = (i + d) % n
        blocks.append(np.minimum(i, j) * n + np.maximum(i, j))
    return np.concatenate(blocks)


def ring_lattice(n: int, k: int) -> Graph:
    """Node ``i`` joined to ``i +- 1, ..., i +- k/2`` (mod ``n``)."""
    _check_lattice_args(n, k)
    return Graph.from_edge_keys(n, np.unique(_lattice_keys(n, k)))


def watts_strogatz(n: int, k: int, p: float, seed: int) -> Graph:
    """Watts-Strogatz rewiring of ``ring_lattice(n, k)``.

    Edges are visited lap by lap (offset ``d = 1..k/2``, then node ``i``);
    with probability ``p`` the far end of ``(i, i+d)`` moves to a uniform
    node, redrawn until it is neither ``i`` nor an existing neighbour. Nodes
    already joined to everyone are skipped. The edge count stays ``n*k/2``.
    """
    _check_lattice_args(n, k)
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"rewiring probability must lie in [0, 1], got {p}")
    if p == 0.0:
        return ring_lattice(n, k)
    rng = make_rng(seed)
    half = k // 2
    hits = rng.random((half, n)) < p
    keys = _lattice_keys(n, k)
    present = set(keys.tolist())
    deg = np.full(n, k, dtype=np.int64)
    for d, i in zip(*np.nonzero(hits)):
        d, i = int(d) + 1, int(i)
        if deg[i] >= n - 1:
            continue
        j = (i + d) % n
        while True:
            w = int(rng.integers(n))
            if w != i and (min(i, w) * n + max(i, w)) not in present:
                break
        present.discard(min(i, j) * n + max(i, j))
        present.add(min(i, w) * n + max(i, w))
        deg[j] -= 1
        deg[w] += 1
    return Graph.from_edge_keys(n, np.sort(np.fromiter(present, dtype=np.int64, count=len(present))))


def _pair_from_index(idx, n):
    """Invert the row-major index of pair ``(i, j)``, ``i < j``."""
    idx = np.asarray(idx, dtype=np.int64)
    # row i starts at i*n - i*(i+1)/2; float estimate then exact fix-up
    disc = (2 * n - 1) ** 2 - 8 * idx.astype(np.float64)
    i = np.floor(((2 * n - 1) - np.sqrt(disc)) / 2).astype(np.int64)
    i = np.clip(i, 0, n - 2)

    def row_start(r):
        return r * n - r * (r + 1) // 2

    for _ in range(2):
        i = np.where(row_start(i) > idx, i - 1, i)
        i = np.where(row_start(i + 1) <= idx, i + 1, i)
    j = idx - row_start(i) + i + 1
    return i, j


def _sample_distinct(rng, population, count):
    """``count`` distinct integers drawn uniformly from ``range(population)``."""
    if count == 0:
        return np.zeros(0, dtype=np.int64)
    if count > population // 2:
        excluded = _sample_distinct(rng, population, population - count)
        keep = np.ones(population, dtype=bool)
        keep[excluded] = False
        return np.flatnonzero(keep).astype(np.int64)
    chosen = np.zeros(0, dtype=np.int64)
    while chosen.shape[0] < count:
        need = count - chosen.shape[0]
        draw = rng.integers(0, population, size=int(need * 1.1) + 16, dtype=np.int64)
        chosen = np.union1d(chosen, draw)
    # the distinct set of iid draws is exchangeable, so a uniform subset of it is uniform
    return np.sort(rng.choice(chosen, size=count, replace=False))


def erdos_renyi(n: int, p_conn: float, seed: int) -> Graph:
    """G(n, p): each of the n(n-1)/2 pairs present independently with ``p_conn``.

    Draws the binomial edge count and then a uniform set of that many pairs,
    which has the same law and avoids touching all pairs on sparse graphs.
    """
    if not 0.0 <= p_conn <= 1.0:
        raise GraphError(f"p_conn must lie in [0, 1], got {p_conn}")
    if n < 1:
        raise GraphError("graph needs at least one node")
    rng = make_rng(seed)
    pairs = n * (n - 1) // 2
    m = int(rng.binomial(pairs, p_conn)) if pairs else 0
    idx = _sample_distinct(rng, pairs, m)
    i, j = _pair_from_index(idx, n)
    return Graph.from_edge_keys(n, i * n + j)


def equivalent_random(g: Graph, seed: int) -> Graph:
    """Erdos-Renyi graph with the same node count and expected mean degree."""
    if g.n < 2:
        return Graph.from_edges(g.n, [])
    return erdos_renyi(g.n, (2.0 * g.n_edges / g.n) / (g.n - 1), seed)


def lattice_degree(mean_degree: float, n: int) -> int:
    """Nearest even degree; odd integers (the midpoints) round up; clamped to [2, n-1]."""
    if mean_degree < 1:
        raise GraphError(f"mean degree {mean_degree} < 1 has no lattice equivalent")
    k = 2 * math.floor(mean_degree / 2 + 0.5)
    top = n - 1 if (n - 1) % 2 == 0 else n - 2
    if top < 2:
        raise GraphError(f"no even lattice degree fits n={n}")
    return int(min(max(k, 2), top))


def equivalent_lattice(g: Graph) -> Graph:
    return ring_lattice(g.n, lattice_degree(2.0 * g.n_edges / g.n, g.n))


@dataclass(frozen=True)
class NoiseSpec:
    rate: float
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.rate <= 1.0:
            raise GraphError(f"noise rate must lie in [0, 1], got {self.rate}")


@dataclass
class NoiseStats:
    operations: int = 0
    removed: int = 0
    added: int = 0
    skipped: int = 0


def apply_noise(g: Graph, spec: NoiseSpec, return_stats: bool = False):
    """Perturb ``g`` with ``round(rate * |E|)`` random edge edits.

    Each edit is a fair coin: remove a uniformly chosen current edge, or add
    a uniformly chosen current non-edge. Edits that cannot happen (removal
    from an empty graph, addition to a complete one) are skipped and
    counted.
    """
    n = g.n
    rng = make_rng(spec.seed)
    ops = int(round(spec.rate * g.n_edges))
    stats = NoiseStats(operations=ops)
    e = g.edges()
    edges = (e[:, 0] * n + e[:, 1]).tolist()
    where = {key: pos for pos, key in enumerate(edges)}
    pairs = n * (n - 1) // 2
    for _ in range(ops):
        if rng.random() < 0.5:
            if not edges:
                stats.skipped += 1
                continue
            pos = int(rng.integers(len(edges)))
            key = edges[pos]
            last = edges.pop()
            if pos < len(edges):
                edges[pos] = last
                where[last] = pos
            del where[key]
            stats.removed += 1
        else:
            if len(edges) >= pairs:
                stats.skipped += 1
                continue
            if len(edges) > pairs // 2:
                # dense: pick directly among the non-edges
                missing = np.setdiff1d(np.arange(pairs, dtype=np.int64),
                                       _pair_index(np.array(edges, dtype=np.int64), n))
                i, j = _pair_from_index(missing[int(rng.integers(missing.shape[0]))], n)
                key = int(i) * n + int(j)
            else:
                while True:
                    u, v = (int(x) for x in rng.integers(n, size=2))
                    key = min(u, v) * n + max(u, v)
                    if u != v and key not in where:
                        break
            where[key] = len(edges)
            edges.append(key)
            stats.added += 1
    out = Graph.from_edge_keys(n, np.sort(np.array(edges, dtype=np.int64)))
    return (out, stats) if return_stats else out


def _pair_index(keys, n):
    i, j = keys // n, keys % n
    return i * n - i * (i + 1) // 2 + (j - i - 1)
