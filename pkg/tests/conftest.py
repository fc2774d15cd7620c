import numpy as np
import pytest

from phasespace import AxisGrid, Config, ho_eigenstate, make_phase_grid


@pytest.fixture(scope="session")
def config():
    return Config()


@pytest.fixture(scope="session")
def ref_grid():
    """256-point reference grid on [-8, 8)."""
    return AxisGrid(min=-8.0, step=1.0 / 16.0, count=256)


@pytest.fixture(scope="session")
def small_grid():
    """128-point grid on [-8, 8) for cheaper tests."""
    return AxisGrid(min=-8.0, step=1.0 / 8.0, count=128)


@pytest.fixture(scope="session")
def ref_phase_grid(ref_grid, config):
    return make_phase_grid(ref_grid, config)


@pytest.fixture(scope="session")
def ho_states(ref_grid, config):
    return [ho_eigenstate(n, ref_grid, config) for n in range(4)]
