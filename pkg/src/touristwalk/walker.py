"""The modified deterministic tourist walk.

A walker standing on node ``i`` may only step to a neighbour whose degree
differs from ``k_i``; among those not held in its memory it takes the one
with the smallest clustering gap ``|c_i - c_j|`` (lowest id on ties). Memory
is the window of the ``mu`` most recently visited nodes, current node
included, so attractors are at least ``mu + 1`` steps long.

The walk is a deterministic map on memory windows: the first window seen
twice closes the attractor. A walker with no admissible move stops with a
zero attractor, and one still moving after ``max_steps`` moves stops with
transient ``max_steps``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .graph import Graph, GraphError


class StopReason(IntEnum):
    FROZEN_REGULAR = kernels.FROZEN_REGULAR
    LOCALLY_STUCK = kernels.LOCALLY_STUCK
    ATTRACTOR_FOUND = kernels.ATTRACTOR_FOUND
    MAX_STEPS_EXCEEDED = kernels.MAX_STEPS_EXCEEDED


@dataclass(frozen=True)
class WalkerConfig:
    memory: int = 1
    max_steps: Optional[int] = None  # None: the network size

    def __post_init__(self):
        if self.memory < 1:
            raise ValueError(f"memory must be >= 1, got {self.memory}")
        if self.max_steps is not None and self.max_steps < self.memory + 1:
            raise ValueError(f"max_steps must be >= memory + 1, got {self.max_steps}")

    def steps_for(self, g: Graph) -> int:
        # tiny graphs still get room for one full attractor
        return self.max_steps if self.max_steps is not None else max(g.n, self.memory + 1)


@dataclass(frozen=True)
class WalkOutcome:
    transient: int
    attractor: int
    stop_reason: StopReason

    @property
    def length(self) -> int:
        return self.transient + self.attractor


class WalkOutcomes(Sequence):
    """Outcomes of one launch per start node, held as parallel arrays."""

    def __init__(self, transient, attractor, reason, memory, n_nodes):
        self.transient = np.asarray(transient, dtype=np.int64)
        self.attractor = np.asarray(attractor, dtype=np.int64)
        self.reason = np.asarray(reason, dtype=np.int8)
        self.memory = memory
        self.n_nodes = n_nodes

    def __len__(self):
        return self.transient.shape[0]

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        return WalkOutcome(int(self.transient[i]), int(self.attractor[i]),
                           StopReason(int(self.reason[i])))

    @property
    def lengths(self):
        return self.transient + self.attractor

    def __eq__(self, other):
        if not isinstance(other, WalkOutcomes):
            return NotImplemented
        return (np.array_equal(self.transient, other.transient)
                and np.array_equal(self.attractor, other.attractor)
                and np.array_equal(self.reason, other.reason))


def candidates(g: Graph, i: int) -> np.ndarray:
    """Neighbours of ``i`` whose degree differs from ``i``'s, ascending."""
    nb = g.neighbors(i)
    return nb[g.degrees[nb] != g.degrees[i]]


def step(g: Graph, i: int, memory_window) -> Optional[int]:
    """Next node from ``i`` given the recent-visit window, or ``None`` if stuck."""
    forbidden = set(int(x) for x in memory_window)
    best, best_gap = None, np.inf
    ci = g.clustering[i]
    for j in candidates(g, i):
        if int(j) in forbidden:
            continue
        gap = abs(ci - g.clustering[j])
        if gap < best_gap:
            best, best_gap = int(j), gap
    return best


def is_frozen(g: Graph) -> bool:
    """True when no node has a neighbour of different degree anywhere."""
    src = np.repeat(g.degrees, g.degrees)
    return not np.any(src != g.degrees[g.indices])


def _frozen_outcomes(g, cfg, count):
    zeros = np.zeros(count, dtype=np.int64)
    return WalkOutcomes(zeros, zeros.copy(), np.full(count, StopReason.FROZEN_REGULAR, np.int8),
                        cfg.memory, g.n)


def walk_all(g: Graph, cfg: WalkerConfig, starts=None) -> WalkOutcomes:
    """Launch one walker from every node (or from ``starts``), in order."""
    starts = np.arange(g.n, dtype=np.int64) if starts is None else np.asarray(starts, np.int64)
    if starts.size and (starts.min() < 0 or starts.max() >= g.n):
        raise GraphError("start node out of range")
    if is_frozen(g):
        return _frozen_outcomes(g, cfg, starts.shape[0])
    t, a, r = kernels.walk_many(g.indptr, g.indices, g.degrees, g.clustering,
                                starts, cfg.memory, cfg.steps_for(g))
    return WalkOutcomes(t, a, r, cfg.memory, g.n)


def walk(g: Graph, start: int, cfg: WalkerConfig) -> WalkOutcome:
    g._check(start)
    return walk_all(g, cfg, starts=[start])[0]


def trace(g: Graph, start: int, cfg: WalkerConfig):
    """``(outcome, visited)`` for one launch; ``visited`` lists every node in order.

    For an attractor the final node closes the cycle, so ``len(visited)``
    equals ``transient + attractor + 1``.
    """
    g._check(start)
    if is_frozen(g):
        return WalkOutcome(0, 0, StopReason.FROZEN_REGULAR), [start]
    t, a, r, path = kernels.walk_trace(g.indptr, g.indices, g.degrees, g.clustering,
                                       start, cfg.memory, cfg.steps_for(g))
    return WalkOutcome(t, a, StopReason(r)), [int(x) for x in path]


def format_trace(start: int, outcome: WalkOutcome, visited) -> str:
    """One line per launch: ``start t a reason: v0 v1 ...``."""
    return (f"{start} {outcome.transient} {outcome.attractor} {outcome.stop_reason.name}: "
            + " ".join(map(str, visited)))
