import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from touristwalk import kernels

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    """Run the test once per kernel backend."""
    with kernels.use_backend(request.param):
        yield request.param


@pytest.fixture
def karate_path():
    return os.path.join(DATA, "karate.edges")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
