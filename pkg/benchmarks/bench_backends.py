"""Kernel backends head to head: numba against the vectorised numpy path.

Times the three hot kernels (triangle counts, BFS distance sums, the walk
over all starts) on Watts-Strogatz graphs of growing size, checks that both
backends return identical arrays, and writes a CSV.

Run:

    python benchmarks/bench_backends.py --sizes 500,2000,10000 --out backends.csv
"""

import argparse
import csv
import statistics
import sys
import time

import numpy as np

from touristwalk import kernels
from touristwalk.generators import watts_strogatz


def _time(fn, repeats):
    fn()  # warm-up, also pays the JIT compile on the first numba call
    runs = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        runs.append((time.perf_counter() - t0) * 1e3)
    return statistics.median(runs)


def _jobs(g, mu):
    starts = np.arange(g.n, dtype=np.int64)
    steps = max(g.n, mu + 1)
    return {
        "triangles": lambda: kernels.triangle_counts(g.indptr, g.indices),
        "distances": lambda: kernels.distance_sums(g.indptr, g.indices),
        f"walk_mu{mu}": lambda: kernels.walk_many(g.indptr, g.indices, g.degrees,
                                                  g.clustering, starts, mu, steps),
    }


def _same(a, b):
    if isinstance(a, tuple):
        return all(np.array_equal(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="500,2000,5000")
    ap.add_argument("--k", type=int, default=10)
    ap.add_argument("--p", type=float, default=0.05)
    ap.add_argument("--mu", type=int, default=2)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--skip-distances-above", type=int, default=5000,
                    help="the numpy BFS is slow; skip it on larger graphs")
    ap.add_argument("--out", default=None)
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    if "numba" not in backends:
        print("numba is not installed; timing the numpy path only", file=sys.stderr)

    rows = []
    for n in (int(x) for x in args.sizes.split(",")):
        g = watts_strogatz(n, args.k, args.p, seed=n)
        results = {}
        for name in backends:
            with kernels.use_backend(name):
                for kernel, fn in _jobs(g, args.mu).items():
                    if kernel == "distances" and n > args.skip_distances_above:
                        continue
                    ms = _time(fn, args.repeats)
                    results[(kernel, name)] = fn()
                    rows.append({"N": n, "kernel": kernel, "backend": name, "median_ms": ms})
                    print(f"N={n:>6} {kernel:<10} {name:<6} {ms:10.2f} ms")
        for kernel in {k for k, _ in results}:
            outs = [results[(kernel, b)] for b in backends if (kernel, b) in results]
            if len(outs) == 2 and not _same(*outs):
                print(f"MISMATCH: {kernel} at N={n}", file=sys.stderr)
                return 1

    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=["N", "kernel", "backend", "median_ms"])
            w.writeheader()
            w.writerows(sorted(rows, key=lambda r: (r["kernel"], r["N"], r["backend"])))
    return 0


if __name__ == "__main__":
    sys.exit(main())
