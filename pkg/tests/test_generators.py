from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from touristwalk.generators import (GeneratorSpec, Model, NoiseSpec, _pair_from_index,
                                    _sample_distinct, apply_noise, derive_seed,
                                    equivalent_lattice, equivalent_random, erdos_renyi,
                                    lattice_degree, make_rng, ring_lattice, watts_strogatz)
from touristwalk.graph import Graph, GraphError, global_clustering


@st.composite
def ws_params(draw):
    n = draw(st.integers(5, 120))
    k = draw(st.sampled_from([k for k in range(2, n, 2)] or [2]))
    return n, k, draw(st.floats(0.0, 1.0)), draw(st.integers(0, 2**32))


@pytest.mark.parametrize("n,k", [(10, 2), (11, 4), (500, 10), (7, 6)])
def test_ring_lattice_shape(n, k):
    g = ring_lattice(n, k)
    assert (g.degrees == k).all() and g.n_edges == n * k // 2
    # every node has the textbook lattice clustering (k < 2n/3)
    if k < 2 * n / 3:
        assert global_clustering(g) == pytest.approx(3 * (k - 2) / (4 * (k - 1)))


@pytest.mark.parametrize("n,k", [(5, 3), (5, 0), (4, 4), (0, 2)])
def test_ring_lattice_rejects(n, k):
    with pytest.raises(GraphError):
        ring_lattice(n, k)


@given(ws_params())
def test_ws_preserves_edge_count(params):
    n, k, p, seed = params
    g = watts_strogatz(n, k, p, seed)
    assert g.n_edges == n * k // 2
    assert int(g.degrees.sum()) == n * k


def test_ws_p0_is_lattice_and_seeded():
    assert watts_strogatz(50, 4, 0.0, 9) == ring_lattice(50, 4)
    assert watts_strogatz(300, 8, 0.2, 5) == watts_strogatz(300, 8, 0.2, 5)
    assert watts_strogatz(300, 8, 0.2, 5) != watts_strogatz(300, 8, 0.2, 6)


def test_ws_clustering_follows_rewiring_law():
    # C(p) ~ C(0) (1 - p)^3 for sparse large graphs
    n, k, p = 2000, 10, 0.1
    c = np.mean([global_clustering(watts_strogatz(n, k, p, s)) for s in range(3)])
    assert c == pytest.approx(3 * (k - 2) / (4 * (k - 1)) * (1 - p) ** 3, abs=0.02)


def test_pair_index_decode_is_exact():
    for n in (2, 3, 7, 31, 100):
        pairs = list(combinations(range(n), 2))
        i, j = _pair_from_index(np.arange(len(pairs)), n)
        assert list(zip(i.tolist(), j.tolist())) == pairs


def test_pair_index_decode_large_n():
    n = 200_000
    idx = np.array([0, n - 2, n - 1, n * (n - 1) // 2 - 1, 12_345_678_901])
    i, j = _pair_from_index(idx, n)
    back = i * n - i * (i + 1) // 2 + (j - i - 1)
    np.testing.assert_array_equal(back, idx)
    assert ((0 <= i) & (i < j) & (j < n)).all()


@pytest.mark.parametrize("population,count", [(10, 0), (10, 3), (10, 9), (10, 10), (1000, 400)])
def test_sample_distinct(population, count):
    out = _sample_distinct(make_rng(1), population, count)
    assert out.shape[0] == count == np.unique(out).shape[0]
    assert out.min(initial=0) >= 0 and out.max(initial=0) < population


def test_sample_distinct_is_uniform():
    counts = np.zeros(20)
    rng = make_rng(3)
    for _ in range(4000):
        counts[_sample_distinct(rng, 20, 5)] += 1
    # each element appears with probability 1/4
    assert np.abs(counts / 4000 - 0.25).max() < 0.04


def test_er_edge_count_is_binomial():
    n, p = 400, 0.02
    pairs = n * (n - 1) // 2
    m = np.array([erdos_renyi(n, p, s).n_edges for s in range(60)])
    sd = np.sqrt(pairs * p * (1 - p))
    assert abs(m.mean() - pairs * p) < 4 * sd / np.sqrt(m.size)
    assert m.std() == pytest.approx(sd, rel=0.35)


def test_er_extremes():
    assert erdos_renyi(6, 0.0, 1).n_edges == 0
    assert erdos_renyi(6, 1.0, 1).n_edges == 15
    with pytest.raises(GraphError):
        erdos_renyi(5, 1.5, 0)


def test_generator_spec_builds_each_model():
    assert GeneratorSpec("regular", 20, 4).build() == ring_lattice(20, 4)
    ws = GeneratorSpec(Model.WATTS_STROGATZ, 20, 4, 0.3, 7).build()
    assert ws == watts_strogatz(20, 4, 0.3, 7)
    er = GeneratorSpec(Model.ERDOS_RENYI, 200, 10, seed=3).build()
    assert er == erdos_renyi(200, 10 / 199, 3)
    with pytest.raises(GraphError):
        GeneratorSpec("regular", 20, 4, rewiring_p=2.0)


def test_derive_seed_is_stable_and_distinct():
    assert derive_seed(1, 2, 3) == derive_seed(1, 2, 3)
    assert len({derive_seed(1, i) for i in range(1000)}) == 1000
    assert derive_seed(1, 2) != derive_seed(2, 1)


@pytest.mark.parametrize("mean,n,expected", [(4.0, 100, 4), (4.9, 100, 4), (5.0, 100, 6),
                                             (5.2, 100, 6), (1.0, 100, 2), (40.0, 10, 8),
                                             (40.0, 11, 10)])
def test_lattice_degree(mean, n, expected):
    assert lattice_degree(mean, n) == expected


def test_lattice_degree_rejects_sparse():
    with pytest.raises(GraphError):
        lattice_degree(0.5, 100)


def test_equivalents():
    g = watts_strogatz(300, 6, 0.3, 1)
    assert equivalent_lattice(g) == ring_lattice(300, 6)
    r = [equivalent_random(g, s).n_edges for s in range(20)]
    assert np.mean(r) == pytest.approx(g.n_edges, rel=0.05)


@given(st.floats(0.0, 1.0), st.integers(0, 2**31))
def test_noise_bookkeeping(rate, seed):
    g = watts_strogatz(60, 4, 0.1, 0)
    out, stats = apply_noise(g, NoiseSpec(rate, seed), return_stats=True)
    assert stats.operations == round(rate * g.n_edges)
    assert stats.removed + stats.added + stats.skipped == stats.operations
    assert out.n_edges == g.n_edges - stats.removed + stats.added
    assert out == apply_noise(g, NoiseSpec(rate, seed))


def test_noise_zero_is_identity_and_coin_is_fair():
    g = ring_lattice(500, 10)
    assert apply_noise(g, NoiseSpec(0.0, 1)) == g
    _, stats = apply_noise(g, NoiseSpec(1.0, 1), return_stats=True)
    assert abs(stats.added - stats.removed) < 4 * np.sqrt(stats.operations)


def test_noise_on_tiny_graphs_skips_impossible_edits():
    empty = Graph.from_edges(2, [])
    assert apply_noise(empty, NoiseSpec(1.0, 0)) == empty   # zero ops
    full = Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])
    out, stats = apply_noise(full, NoiseSpec(1.0, 4), return_stats=True)
    assert stats.operations == 3 and out.n_edges <= 3
