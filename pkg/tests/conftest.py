import numpy as np
import pytest

from stateuncertainty.quantum_objects import (
    maximally_mixed_state,
    plus_minus_observable,
    plus_state,
    standard_basis_observable,
)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def sharp_obs():
    """A0 = 1/2 [[1, 1], [1, 1]], A1 = 1/2 [[1, -1], [-1, 1]]."""
    return plus_minus_observable(1.0)


@pytest.fixture
def unsharp_obs():
    """A0 = 1/2 [[1, 1/3], [1/3, 1]], A1 = 1/2 [[1, -1/3], [-1/3, 1]]."""
    return plus_minus_observable(1.0 / 3.0)


@pytest.fixture
def computational_obs():
    return standard_basis_observable(2)


@pytest.fixture
def mixed_state():
    return maximally_mixed_state(2)


@pytest.fixture
def psi_state():
    return plus_state()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS, format_line
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num, (ok, detail) in sorted(RESULTS.items()):
            terminalreporter.write_line(format_line(num, ok, detail))
