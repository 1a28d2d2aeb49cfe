"""Transient/attractor statistics and the signature vectors built from them."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .walker import WalkOutcomes


def _pairs(outcomes):
    if isinstance(outcomes, WalkOutcomes):
        return outcomes.transient, outcomes.attractor
    t = np.array([o.transient for o in outcomes], dtype=np.int64)
    a = np.array([o.attractor for o in outcomes], dtype=np.int64)
    return t, a


@dataclass(frozen=True)
class JointHistogram:
    """Fraction of launches ending with each (transient, attractor) pair."""

    counts: Dict[Tuple[int, int], float]
    n_launches: int

    def total(self):
        return sum(self.counts.values())


def joint_histogram(outcomes) -> JointHistogram:
    t, a = _pairs(outcomes)
    if t.shape[0] == 0:
        raise ValueError("joint histogram of an empty outcome list")
    n = t.shape[0]
    tally = Counter(zip(t.tolist(), a.tolist()))
    return JointHistogram({key: c / n for key, c in sorted(tally.items())}, n)


def length_histogram(jh: JointHistogram) -> Dict[int, float]:
    """Mass per total trajectory length ``t + a``.

    ``h(0)`` is the mass of the (0, 0) outcome; stuck or timed-out walkers
    (``a = 0``) count at length ``t``.
    """
    h: Dict[int, float] = {}
    for (t, a), mass in jh.counts.items():
        h[t + a] = h.get(t + a, 0.0) + mass
    return dict(sorted(h.items()))


@dataclass(frozen=True)
class SignatureVector:
    memories: List[int]
    values: np.ndarray
    layout: List[Tuple[int, int]]  # (memory, trajectory length) per position
    residual: List[float] = field(default_factory=list)  # per memory, mass at lengths 1..mu

    def __len__(self):
        return self.values.shape[0]

    def column_names(self):
        return [f"mu{m}_l{l}" for m, l in self.layout]


def phi_layout(mu: int, n: int) -> List[Tuple[int, int]]:
    return [(mu, 0)] + [(mu, ell) for ell in range(mu + 1, n + 1)]


def phi(jh: JointHistogram, mu: int, n: int) -> SignatureVector:
    """``[h(0), h(mu+1), h(mu+2), ..., h(n)]`` for a network of size ``n``.

    Lengths 1..mu cannot appear in the layout; their mass is reported in
    ``residual``.
    """
    if mu < 1:
        raise ValueError(f"memory must be >= 1, got {mu}")
    h = length_histogram(jh)
    layout = phi_layout(mu, n)
    values = np.array([h.get(ell, 0.0) for _, ell in layout], dtype=np.float64)
    residual = sum(mass for ell, mass in h.items() if 1 <= ell <= mu)
    return SignatureVector([mu], values, layout, [residual])


def psi(jhs: Sequence[JointHistogram], mus: Sequence[int], n: int) -> SignatureVector:
    """Concatenation of ``phi`` over increasing memories, one histogram each."""
    if len(jhs) != len(mus):
        raise ValueError(f"{len(jhs)} histograms for {len(mus)} memories")
    if not mus or any(b <= a for a, b in zip(mus, mus[1:])):
        raise ValueError(f"memories must be non-empty and strictly increasing, got {list(mus)}")
    parts = [phi(jh, mu, n) for jh, mu in zip(jhs, mus)]
    return SignatureVector(
        list(mus),
        np.concatenate([p.values for p in parts]),
        [pos for p in parts for pos in p.layout],
        [p.residual[0] for p in parts],
    )


def truncate_signature(sv: SignatureVector, n: int) -> SignatureVector:
    """Re-bin onto the layout of a size-``n`` network.

    Each memory block keeps ``h(0), h(mu+1) .. h(n-1)``, and its last slot
    collects every length ``>= n``, so graphs of different sizes share
    columns. Blocks shorter than the target are zero-padded.
    """
    values, layout = [], []
    for mu in sv.memories:
        block = {ell: v for (m, ell), v in zip(sv.layout, sv.values) if m == mu}
        target = phi_layout(mu, n)
        out = np.array([block.get(ell, 0.0) for _, ell in target], dtype=np.float64)
        if len(target) > 1:
            out[-1] = sum(v for ell, v in block.items() if ell >= n)
        values.append(out)
        layout.extend(target)
    return SignatureVector(list(sv.memories), np.concatenate(values), layout, list(sv.residual))


def mean_trajectory_length(outcomes) -> float:
    t, a = _pairs(outcomes)
    if t.shape[0] == 0:
        raise ValueError("mean length of an empty outcome list")
    return float((t + a).mean())
