"""Wall-clock comparison of chi and omega on Watts-Strogatz graphs."""

from __future__ import annotations

import time

import numpy as np

from .generators import derive_seed, watts_strogatz
from .metrics import DEFAULT_REALIZATIONS, chi, omega_parts
from .walker import WalkerConfig

BENCH_COLUMNS = ("N", "metric", "mu", "median_ms")


def _median_ms(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append((time.perf_counter() - t0) * 1e3)
    return float(np.median(times))


def warm_up():
    """Trigger kernel compilation so it is not billed to the first timing."""
    g = watts_strogatz(30, 4, 0.1, 0)
    chi(g, WalkerConfig(1), realizations=1)
    omega_parts(g, realizations=1)


def run_bench(sizes, p=0.05, mus=(1, 2, 3), repeats=3, k=10,
              realizations=DEFAULT_REALIZATIONS, seed=0):
    """Median milliseconds per (metric, N[, mu]).

    Each timing covers the whole metric, baseline generation included.
    Rows come back sorted by (metric, N, mu); omega rows carry ``mu = ""``.
    """
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    warm_up()
    rows = []
    for n in sizes:
        g = watts_strogatz(int(n), k, p, derive_seed(seed, int(n)))
        for mu in mus:
            ms = _median_ms(lambda: chi(g, WalkerConfig(mu), realizations, seed), repeats)
            rows.append({"N": int(n), "metric": "chi", "mu": mu, "median_ms": ms})
        ms = _median_ms(lambda: omega_parts(g, realizations, seed), repeats)
        rows.append({"N": int(n), "metric": "omega", "mu": "", "median_ms": ms})
    rows.sort(key=lambda r: (r["metric"], r["N"], str(r["mu"])))
    return rows
