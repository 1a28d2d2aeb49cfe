"""Immutable simple undirected graphs in CSR form and their structural measures."""

from __future__ import annotations

import warnings
from functools import cached_property
from typing import NamedTuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from . import kernels


class GraphError(ValueError):
    """Invalid graph input (bad node id, malformed edge list, degenerate case)."""


class DegenerateGraphWarning(UserWarning):
    pass


def _frozen(a):
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.flags.writeable = False
    return a


class Graph:
    """Simple undirected graph on nodes ``0..n-1``.

    Adjacency is stored as CSR arrays (``indptr``, ``indices``) with every
    neighbour list sorted ascending; downstream tie-breaking relies on that
    ordering. Instances are read-only; derived per-node arrays are computed
    once and cached.
    """

    def __init__(self, n, indptr, indices):
        self.n = int(n)
        if self.n < 1:
            raise GraphError("graph needs at least one node")
        self.indptr = _frozen(indptr)
        self.indices = _frozen(indices)
        if self.indptr.shape != (self.n + 1,) or self.indptr[-1] != self.indices.shape[0]:
            raise GraphError("inconsistent CSR arrays")

    @classmethod
    def from_edges(cls, n, edges):
        """Build from an ``(m, 2)`` array of undirected edges.

        Self-loops and repeated edges (in either orientation) raise
        :class:`GraphError`; use :mod:`touristwalk.ingest` for dirty input.
        """
        n = int(n)
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if edges.size and (edges.min() < 0 or edges.max() >= n):
            raise GraphError(f"edge endpoint outside 0..{n - 1}")
        u, v = edges[:, 0], edges[:, 1]
        if np.any(u == v):
            raise GraphError("self-loop in edge list")
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        keys = lo * n + hi
        if np.unique(keys).shape[0] != keys.shape[0]:
            raise GraphError("duplicate edge in edge list")
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(n, indptr, dst)

    @classmethod
    def from_edge_keys(cls, n, keys):
        """Build from unique ``u * n + v`` keys with ``u < v``."""
        keys = np.asarray(keys, dtype=np.int64)
        return cls.from_edges(n, np.column_stack([keys // n, keys % n]))

    @property
    def n_edges(self):
        return self.indices.shape[0] // 2

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    def __hash__(self):
        return hash((self.n, self.indptr.tobytes(), self.indices.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, n_edges={self.n_edges})"

    def _check(self, i):
        if not 0 <= i < self.n:
            raise GraphError(f"node id {i} outside 0..{self.n - 1}")

    def neighbors(self, i):
        self._check(i)
        return self.indices[self.indptr[i]: self.indptr[i + 1]]

    def edges(self):
        """``(m, 2)`` array of edges ``u < v`` in lexicographic order."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))
        upper = src < self.indices
        return np.column_stack([src[upper], self.indices[upper]])

    def has_edge(self, u, v):
        nb = self.neighbors(u)
        pos = np.searchsorted(nb, v)
        return bool(pos < nb.shape[0] and nb[pos] == v)

    @cached_property
    def degrees(self):
        d = np.diff(self.indptr)
        d.flags.writeable = False
        return d

    @cached_property
    def triangles(self):
        """Edges among the neighbours of each node."""
        t = kernels.triangle_counts(self.indptr, self.indices)
        t.flags.writeable = False
        return t

    @cached_property
    def clustering(self):
        """Local clustering coefficients; 0 where degree < 2."""
        k = self.degrees
        c = np.zeros(self.n, dtype=np.float64)
        ok = k >= 2
        c[ok] = (2.0 * self.triangles[ok]) / (k[ok] * (k[ok] - 1))
        c.flags.writeable = False
        return c

    def to_scipy(self):
        data = np.ones(self.indices.shape[0], dtype=np.int8)
        return csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))


def degree(g: Graph, i: int) -> int:
    g._check(i)
    return int(g.degrees[i])


def local_clustering(g: Graph, i: int) -> float:
    g._check(i)
    return float(g.clustering[i])


def global_clustering(g: Graph) -> float:
    """Mean of the local clustering coefficients (Watts-Strogatz convention)."""
    return float(g.clustering.mean())


def largest_component(g: Graph):
    """Induced subgraph on the largest connected component.

    Returns ``(subgraph, mapping)`` where ``mapping[new_id] == old_id``.
    Ties between equally large components go to the one holding the lowest
    node id.
    """
    n_comp, labels = connected_components(g.to_scipy(), directed=False)
    if n_comp == 1:
        return g, np.arange(g.n, dtype=np.int64)
    # labels are numbered in order of their lowest member, so argmax breaks ties by id
    best = int(np.argmax(np.bincount(labels)))
    mapping = np.flatnonzero(labels == best).astype(np.int64)
    return induced_subgraph(g, mapping), mapping


def induced_subgraph(g: Graph, nodes) -> Graph:
    nodes = np.asarray(nodes, dtype=np.int64)
    relabel = np.full(g.n, -1, dtype=np.int64)
    relabel[nodes] = np.arange(nodes.shape[0])
    e = g.edges()
    keep = (relabel[e[:, 0]] >= 0) & (relabel[e[:, 1]] >= 0)
    return Graph.from_edges(nodes.shape[0], relabel[e[keep]])


def component_count(g: Graph) -> int:
    return int(connected_components(g.to_scipy(), directed=False)[0])


def node_mean_distances(g: Graph) -> np.ndarray:
    """Mean BFS distance from each node to every other node it can reach."""
    sums, reach = kernels.distance_sums(g.indptr, g.indices)
    out = np.zeros(g.n, dtype=np.float64)
    ok = reach > 0
    out[ok] = sums[ok] / reach[ok]
    return out


def average_shortest_path(g: Graph) -> float:
    """Average shortest path length over ordered pairs in the largest component.

    A single-node largest component gives 0.0 and a
    :class:`DegenerateGraphWarning`.
    """
    core, _ = largest_component(g)
    if core.n < 2:
        warnings.warn("largest component has a single node; path length is 0",
                      DegenerateGraphWarning, stacklevel=2)
        return 0.0
    sums, _ = kernels.distance_sums(core.indptr, core.indices)
    return float(sums.sum() / (core.n * (core.n - 1)))


class Assortativity(NamedTuple):
    value: float
    degenerate: bool


def assortativity(g: Graph) -> Assortativity:
    """Degree assortativity: Pearson correlation over both edge orientations.

    When there are no edges or every edge endpoint has the same degree the
    coefficient is 0/0; it is reported as ``(0.0, degenerate=True)``.
    """
    if g.n_edges == 0:
        return Assortativity(0.0, True)
    k = g.degrees.astype(np.float64)
    src = np.repeat(k, g.degrees)
    dst = k[g.indices]
    xs = src - src.mean()
    var = float(np.dot(xs, xs))
    if var == 0.0:
        return Assortativity(0.0, True)
    ys = dst - dst.mean()
    r = float(np.dot(xs, ys) / np.sqrt(var * np.dot(ys, ys)))
    return Assortativity(min(1.0, max(-1.0, r)), False)
