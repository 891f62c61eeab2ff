import sys

import numpy as np
import pytest

from eqtoeplitz import _accel, _kernels
from eqtoeplitz.domain import build_domain, trivial_domain
from eqtoeplitz.mobius import classical_pairings


@pytest.fixture(scope="session")
def pants():
    return build_domain(classical_pairings(2, 0.3))


@pytest.fixture(scope="session")
def annulus():
    return build_domain(classical_pairings(1, 0.3))


@pytest.fixture(scope="session")
def trivial():
    return trivial_domain()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(params=["numba", "numpy"])
def accel_path(request, monkeypatch):
    """Run a test once per kernel path."""
    if request.param == "numba" and not _accel.HAVE_NUMBA:
        pytest.skip("numba not available")
    monkeypatch.setattr(_kernels, "use_numba", lambda: request.param == "numba")
    return request.param


def random_disc(rng, n, rmax=0.95):
    return rmax * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = mod.report() if mod is not None else []
    if lines:
        terminalreporter.section("acceptance criteria")
        for ln in lines:
            terminalreporter.write_line(ln)
