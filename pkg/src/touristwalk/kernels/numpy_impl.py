import numpy as np

# trajectory buffer budget (entries) for one lockstep batch of walkers
_BATCH_ENTRIES = 1 << 22


def _gather(indptr, nodes):
    """Positions into ``indices`` covering the neighbour lists of ``nodes``."""
    lens = indptr[nodes + 1] - indptr[nodes]
    total = int(lens.sum())
    offsets = np.repeat(indptr[nodes] - (np.cumsum(lens) - lens), lens)
    return offsets + np.arange(total, dtype=np.int64)


def triangle_counts(indptr, indices):
    n = indptr.shape[0] - 1
    deg = np.diff(indptr)
    src = np.repeat(np.arange(n, dtype=np.int64), deg)
    local = np.arange(indices.shape[0], dtype=np.int64) - indptr[src]
    # every wedge j-i-l with j < l, taken from adjacent positions in adj(i)
    reps = deg[src] - 1 - local
    first = np.repeat(np.arange(indices.shape[0], dtype=np.int64), reps)
    run_starts = np.cumsum(reps) - reps
    second = first + np.arange(first.shape[0], dtype=np.int64) - np.repeat(run_starts, reps) + 1
    upper = src < indices
    keys = src[upper] * n + indices[upper]  # sorted: CSR rows ascend, columns ascend
    wedge_keys = indices[first] * n + indices[second]
    pos = np.searchsorted(keys, wedge_keys)
    pos[pos == keys.shape[0]] = 0
    closed = keys.shape[0] > 0
    hit = (keys[pos] == wedge_keys) if closed else np.zeros(wedge_keys.shape[0], dtype=bool)
    return np.bincount(src[first][hit], minlength=n).astype(np.int64)


def distance_sums(indptr, indices):
    n = indptr.shape[0] - 1
    sums = np.zeros(n, dtype=np.int64)
    reach = np.zeros(n, dtype=np.int64)
    for s in range(n):
        dist = np.full(n, -1, dtype=np.int64)
        dist[s] = 0
        frontier = np.array([s], dtype=np.int64)
        level = 0
        while frontier.size:
            level += 1
            nb = indices[_gather(indptr, frontier)]
            nb = np.unique(nb[dist[nb] < 0])
            dist[nb] = level
            sums[s] += level * nb.size
            reach[s] += nb.size
            frontier = nb
    return sums, reach


def preference_table(indptr, indices, degree, clustering):
    """Per-node candidate list, best first, padded with -1.

    Candidates are neighbours of different degree ordered by the absolute
    clustering gap, ties by ascending id. The order depends only on the
    node, so a step reduces to "first entry not in memory".
    """
    n = indptr.shape[0] - 1
    src = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
    dst = indices.astype(np.int64)
    keep = degree[src] != degree[dst]
    src, dst = src[keep], dst[keep]
    gap = np.abs(clustering[src] - clustering[dst])
    order = np.lexsort((dst, gap, src))
    src, dst = src[order], dst[order]
    counts = np.bincount(src, minlength=n)
    width = max(int(counts.max(initial=0)), 1)
    starts = np.cumsum(counts) - counts
    table = np.full((n, width), -1, dtype=np.int64)
    table[src, np.arange(src.shape[0]) - starts[src]] = dst
    return table


def _walk_batch(table, starts, memory, max_steps, transient, attractor, reason):
    count = starts.shape[0]
    traj = np.full((count, max_steps + 1), -1, dtype=np.int64)
    traj[:, 0] = starts
    live = np.arange(count)
    for m in range(max_steps + 1):
        if live.size == 0:
            break
        prefs = table[traj[live, m]]
        window = traj[live, max(0, m - memory + 1): m + 1]
        allowed = (prefs >= 0) & ~(prefs[:, :, None] == window[:, None, :]).any(axis=2)
        movable = allowed.any(axis=1)
        stuck = live[~movable]
        transient[stuck] = m
        reason[stuck] = 1
        live = live[movable]
        if live.size == 0:
            break
        choice = prefs[movable, allowed[movable].argmax(axis=1)]
        if m == max_steps:
            transient[live] = max_steps
            reason[live] = 3
            break
        nxt = m + 1
        traj[live, nxt] = choice
        if nxt < memory:
            continue
        # earlier full windows ending on the same node
        rows, cols = np.nonzero(traj[live, memory - 1: nxt] == choice[:, None])
        if rows.size == 0:
            continue
        ends = cols + (memory - 1)
        same = np.ones(rows.size, dtype=bool)
        walkers = live[rows]
        for q in range(1, memory):
            same &= traj[walkers, ends - q] == traj[walkers, nxt - q]
        rows, ends = rows[same], ends[same]
        done = live[rows]
        transient[done] = ends
        attractor[done] = nxt - ends
        reason[done] = 2
        keep = np.ones(live.size, dtype=bool)
        keep[rows] = False
        live = live[keep]
    return traj


def walk_many(indptr, indices, degree, clustering, starts, memory, max_steps):
    starts = np.asarray(starts, dtype=np.int64)
    count = starts.shape[0]
    transient = np.zeros(count, dtype=np.int64)
    attractor = np.zeros(count, dtype=np.int64)
    reason = np.zeros(count, dtype=np.int8)
    table = preference_table(indptr, indices, degree, clustering)
    size = max(1, _BATCH_ENTRIES // (max_steps + 1))
    for lo in range(0, count, size):
        sl = slice(lo, lo + size)
        t, a, r = transient[sl], attractor[sl], reason[sl]
        _walk_batch(table, starts[sl], memory, max_steps, t, a, r)
    return transient, attractor, reason


def walk_trace(indptr, indices, degree, clustering, start, memory, max_steps):
    table = preference_table(indptr, indices, degree, clustering)
    t = np.zeros(1, dtype=np.int64)
    a = np.zeros(1, dtype=np.int64)
    r = np.zeros(1, dtype=np.int8)
    traj = _walk_batch(table, np.array([start], dtype=np.int64), memory, max_steps, t, a, r)
    moves = int(t[0] + a[0])
    return int(t[0]), int(a[0]), int(r[0]), traj[0, : moves + 1].copy()
