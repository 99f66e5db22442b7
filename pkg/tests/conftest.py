import time

import pytest

from harmcont.continuation import follow_curve
from harmcont.problems import catalog


@pytest.fixture(scope="session")
def fig1_curve():
    t0 = time.perf_counter()
    c = follow_curve(catalog("oscillatory-p512"), 5.0, 60.0, 0.1, n_modes=64)
    return c, time.perf_counter() - t0


@pytest.fixture(scope="session")
def fig2_curve():
    return follow_curve(catalog("resonance-k7"), 10.0, 60.0, 0.1, n_modes=128)


@pytest.fixture(scope="session")
def fig3_curve():
    return follow_curve(catalog("amann-hess-type"), -40.0, 40.0, 0.1, n_modes=64)
