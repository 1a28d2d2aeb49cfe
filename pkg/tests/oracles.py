"""Slow, literal reference implementations used as test oracles.

Nothing here imports the package under test; graphs are plain adjacency
sets so the oracles share no code with the library.
"""

from itertools import combinations

import numpy as np


def adjacency(n, edges):
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def triangles(adj):
    """Edges among each node's neighbours, by checking every neighbour pair."""
    return [sum(1 for a, b in combinations(sorted(nb), 2) if b in adj[a]) for nb in adj]


def clustering(adj):
    out = []
    for nb, t in zip(adj, triangles(adj)):
        k = len(nb)
        out.append((2.0 * t) / (k * (k - 1)) if k >= 2 else 0.0)
    return out


def floyd_warshall(adj):
    n = len(adj)
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0)
    for u, nb in enumerate(adj):
        for v in nb:
            d[u, v] = 1
    for k in range(n):
        d = np.minimum(d, d[:, [k]] + d[[k], :])
    return d


def reference_walk(adj, start, mu, max_steps):
    """Tourist walk by literal simulation of the two rules.

    Returns ``(t, a, reason)`` with reason one of ``"frozen"``, ``"stuck"``,
    ``"attractor"``, ``"max_steps"``. A state is the tuple of the last ``mu``
    visited nodes; the first repeated state closes the attractor.
    """
    deg = [len(nb) for nb in adj]
    c = clustering(adj)
    if all(deg[i] == deg[j] for i in range(len(adj)) for j in adj[i]):
        return 0, 0, "frozen"
    path = [start]
    seen = {}
    m = 0
    while True:
        state = tuple(path[-mu:])
        if len(state) == mu and state in seen:
            return seen[state], m - seen[state], "attractor"
        seen.setdefault(state, m)
        cur = path[-1]
        allowed = [j for j in adj[cur] if deg[j] != deg[cur] and j not in state]
        if not allowed:
            return m, 0, "stuck"
        if m == max_steps:
            return max_steps, 0, "max_steps"
        path.append(min(allowed, key=lambda j: (abs(c[cur] - c[j]), j)))
        m += 1


def reference_outcomes(adj, mu, max_steps=None):
    n = len(adj)
    steps = max(n, mu + 1) if max_steps is None else max_steps
    return [reference_walk(adj, s, mu, steps) for s in range(n)]


def reference_phi(outcomes, mu, n):
    """``[h(0), h(mu+1), ..., h(n)]`` straight from the outcome list."""
    total = len(outcomes)
    h = {}
    for t, a, _ in outcomes:
        h[t + a] = h.get(t + a, 0) + 1
    return [h.get(0, 0) / total] + [h.get(ell, 0) / total for ell in range(mu + 1, n + 1)]


def is_connected(adj):
    seen, stack = {0}, [0]
    while stack:
        for v in adj[stack.pop()]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(adj)


def all_connected_graphs(n):
    """Every labelled connected graph on ``n`` nodes, as an edge list."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        edges = [p for b, p in enumerate(pairs) if mask >> b & 1]
        if len(edges) >= n - 1 and is_connected(adjacency(n, edges)):
            yield edges


def random_connected_graph(n, rng):
    pairs = list(combinations(range(n), 2))
    while True:
        p = rng.uniform(0.2, 0.9)
        edges = [e for e in pairs if rng.random() < p]
        if is_connected(adjacency(n, edges)):
            return edges
