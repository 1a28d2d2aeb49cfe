"""Both kernel backends must agree exactly on every primitive."""

import numpy as np
import pytest

from touristwalk import kernels
from touristwalk.generators import erdos_renyi, watts_strogatz
from touristwalk.graph import Graph

pytestmark = pytest.mark.skipif(len(kernels.available_backends()) < 2,
                                reason="numba not installed")


def _run(name, fn, *args):
    with kernels.use_backend(name):
        return getattr(kernels, fn)(*args)


def _graphs():
    yield watts_strogatz(200, 6, 0.1, 1)
    yield erdos_renyi(150, 0.03, 2)          # disconnected pieces
    yield watts_strogatz(60, 4, 1.0, 3)
    yield Graph.from_edges(5, [(0, 1), (1, 2)])


@pytest.mark.parametrize("g", list(_graphs()), ids=lambda g: f"n{g.n}")
def test_triangles_and_distances_agree(g):
    np.testing.assert_array_equal(_run("numba", "triangle_counts", g.indptr, g.indices),
                                  _run("numpy", "triangle_counts", g.indptr, g.indices))
    for x, y in zip(_run("numba", "distance_sums", g.indptr, g.indices),
                    _run("numpy", "distance_sums", g.indptr, g.indices)):
        np.testing.assert_array_equal(x, y)


@pytest.mark.parametrize("g", list(_graphs()), ids=lambda g: f"n{g.n}")
@pytest.mark.parametrize("mu", [1, 2, 3, 5])
def test_walks_agree(g, mu):
    starts = np.arange(g.n, dtype=np.int64)
    args = (g.indptr, g.indices, g.degrees, g.clustering, starts, mu, max(g.n, mu + 1))
    for x, y in zip(_run("numba", "walk_many", *args), _run("numpy", "walk_many", *args)):
        np.testing.assert_array_equal(x, y)


def test_trace_agrees():
    g = watts_strogatz(100, 6, 0.2, 4)
    for start in range(0, 100, 7):
        args = (g.indptr, g.indices, g.degrees, g.clustering, start, 2, 100)
        a = _run("numba", "walk_trace", *args)
        b = _run("numpy", "walk_trace", *args)
        assert a[:3] == b[:3]
        np.testing.assert_array_equal(a[3], b[3])


def test_backend_switch_validation():
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")
    before = kernels.get_backend()
    with kernels.use_backend("numpy"):
        assert kernels.get_backend() == "numpy"
    assert kernels.get_backend() == before
