"""Hot inner loops, with a numba path and a vectorised numpy path.

The numba kernels are used when numba imports cleanly and the environment
variable ``TOURISTWALK_DISABLE_NUMBA`` is unset (or set to ``0``). Both
paths return bit-identical results; the test suite runs every kernel
through both.
"""

import contextlib
import os

from . import numpy_impl

try:
    from . import numba_impl
except ImportError:  # pragma: no cover - numba missing
    numba_impl = None

ENV_FLAG = "TOURISTWALK_DISABLE_NUMBA"

# reason codes shared by both walk kernels
FROZEN_REGULAR = 0
LOCALLY_STUCK = 1
ATTRACTOR_FOUND = 2
MAX_STEPS_EXCEEDED = 3


def _numba_requested():
    return os.environ.get(ENV_FLAG, "0").strip().lower() in ("", "0", "false", "no")


_active = "numba" if (numba_impl is not None and _numba_requested()) else "numpy"


def available_backends():
    return ("numba", "numpy") if numba_impl is not None else ("numpy",)


def get_backend():
    """Name of the backend currently used for kernel dispatch."""
    return _active


def set_backend(name):
    global _active
    if name not in available_backends():
        raise ValueError(f"backend {name!r} not available; have {available_backends()}")
    _active = name


@contextlib.contextmanager
def use_backend(name):
    """Temporarily switch the kernel backend."""
    previous = _active
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def _impl():
    return numba_impl if _active == "numba" else numpy_impl


def triangle_counts(indptr, indices):
    return _impl().triangle_counts(indptr, indices)


def distance_sums(indptr, indices):
    return _impl().distance_sums(indptr, indices)


def walk_many(indptr, indices, degree, clustering, starts, memory, max_steps):
    return _impl().walk_many(indptr, indices, degree, clustering, starts, memory, max_steps)


def walk_trace(indptr, indices, degree, clustering, start, memory, max_steps):
    return _impl().walk_trace(indptr, indices, degree, clustering, start, memory, max_steps)
