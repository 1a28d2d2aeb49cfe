import os

import numba
import numpy as np
from numba import njit, prange

if "NUMBA_THREADING_LAYER" not in os.environ:
    # an outdated system TBB only produces a warning; skip straight past it
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

_JIT = dict(cache=True, nogil=True)


def _chunks(n):
    k = max(1, min(n, numba.get_num_threads() * 4))
    return np.linspace(0, n, k + 1).astype(np.int64)


@njit(parallel=True, **_JIT)
def _triangle_counts(indptr, indices):
    n = indptr.shape[0] - 1
    out = np.zeros(n, dtype=np.int64)
    for i in prange(n):
        twice = 0
        lo_i, hi_i = indptr[i], indptr[i + 1]
        for e in range(lo_i, hi_i):
            j = indices[e]
            # sorted merge of adj(i) and adj(j)
            p, q = lo_i, indptr[j]
            hi_j = indptr[j + 1]
            while p < hi_i and q < hi_j:
                a = indices[p]
                b = indices[q]
                if a == b:
                    twice += 1
                    p += 1
                    q += 1
                elif a < b:
                    p += 1
                else:
                    q += 1
        out[i] = twice // 2
    return out


def triangle_counts(indptr, indices):
    return _triangle_counts(indptr, indices)


@njit(parallel=True, **_JIT)
def _distance_sums(indptr, indices, bounds):
    n = indptr.shape[0] - 1
    sums = np.zeros(n, dtype=np.int64)
    reach = np.zeros(n, dtype=np.int64)
    for c in prange(bounds.shape[0] - 1):
        dist = np.full(n, -1, dtype=np.int64)
        queue = np.empty(n, dtype=np.int64)
        for s in range(bounds[c], bounds[c + 1]):
            dist[s] = 0
            queue[0] = s
            head, tail = 0, 1
            total = 0
            while head < tail:
                u = queue[head]
                head += 1
                du = dist[u] + 1
                for e in range(indptr[u], indptr[u + 1]):
                    v = indices[e]
                    if dist[v] < 0:
                        dist[v] = du
                        total += du
                        queue[tail] = v
                        tail += 1
            sums[s] = total
            reach[s] = tail - 1
            for q in range(tail):
                dist[queue[q]] = -1
    return sums, reach


def distance_sums(indptr, indices):
    return _distance_sums(indptr, indices, _chunks(indptr.shape[0] - 1))


@njit(**_JIT)
def _walk_one(start, indptr, indices, degree, clustering, memory, max_steps, traj, head, prev):
    """Run one walker; returns (transient, attractor, reason, moves).

    ``head``/``prev`` chain every earlier position that sat on the same
    node, so a repeated memory window is found by scanning only those.
    ``head`` must be all -1 on entry and is restored before returning.
    """
    traj[0] = start
    prev[0] = -1
    head[start] = 0
    m = 0
    while True:
        cur = traj[m]
        lo = m - memory + 1
        if lo < 0:
            lo = 0
        nxt = -1
        best = np.inf
        kc = degree[cur]
        cc = clustering[cur]
        for e in range(indptr[cur], indptr[cur + 1]):
            j = indices[e]
            if degree[j] == kc:
                continue
            blocked = False
            for q in range(lo, m + 1):
                if traj[q] == j:
                    blocked = True
                    break
            if blocked:
                continue
            gap = abs(cc - clustering[j])
            if gap < best:
                best = gap
                nxt = j
        if nxt < 0:
            t, a, reason = m, 0, 1
            break
        if m == max_steps:
            t, a, reason = max_steps, 0, 3
            break
        m += 1
        traj[m] = nxt
        found = -1
        if m >= memory:
            s = head[nxt]
            while s >= 0:
                if s >= memory - 1:
                    same = True
                    for q in range(1, memory):
                        if traj[s - q] != traj[m - q]:
                            same = False
                            break
                    if same:
                        found = s
                        break
                s = prev[s]
        if found >= 0:
            t, a, reason = found, m - found, 2
            break
        prev[m] = head[nxt]
        head[nxt] = m
    for q in range(m + 1):
        head[traj[q]] = -1
    return t, a, reason, m


@njit(parallel=True, **_JIT)
def _walk_many(indptr, indices, degree, clustering, starts, memory, max_steps, bounds):
    n = indptr.shape[0] - 1
    count = starts.shape[0]
    transient = np.zeros(count, dtype=np.int64)
    attractor = np.zeros(count, dtype=np.int64)
    reason = np.zeros(count, dtype=np.int8)
    for c in prange(bounds.shape[0] - 1):
        traj = np.empty(max_steps + 1, dtype=np.int64)
        prev = np.empty(max_steps + 1, dtype=np.int64)
        head = np.full(n, -1, dtype=np.int64)
        for w in range(bounds[c], bounds[c + 1]):
            t, a, r, _ = _walk_one(starts[w], indptr, indices, degree, clustering,
                                   memory, max_steps, traj, head, prev)
            transient[w] = t
            attractor[w] = a
            reason[w] = r
    return transient, attractor, reason


def walk_many(indptr, indices, degree, clustering, starts, memory, max_steps):
    starts = np.ascontiguousarray(starts, dtype=np.int64)
    return _walk_many(indptr, indices, degree, clustering, starts, memory, max_steps,
                      _chunks(starts.shape[0]))


def walk_trace(indptr, indices, degree, clustering, start, memory, max_steps):
    n = indptr.shape[0] - 1
    traj = np.empty(max_steps + 1, dtype=np.int64)
    prev = np.empty(max_steps + 1, dtype=np.int64)
    head = np.full(n, -1, dtype=np.int64)
    t, a, r, m = _walk_one(start, indptr, indices, degree, clustering,
                           memory, max_steps, traj, head, prev)
    return int(t), int(a), int(r), traj[: m + 1].copy()
