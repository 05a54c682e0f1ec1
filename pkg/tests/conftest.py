"""
Shared fixtures for the test suite.
"""

# packages
import numpy
import pytest

# project
from inamc_app.config import AppConfig
from inamc_app.tables.eigen_table import build_eigen_table
from inamc_app.tables.grid import VoltageGrid


@pytest.fixture(scope="session")
def app_config() -> AppConfig:
    return AppConfig(workers=1)


@pytest.fixture(scope="session")
def coarse_grid() -> VoltageGrid:
    """1 mV grid over the default range; it contains 0 mV exactly."""
    return VoltageGrid(vmin=-100.0, vmax=70.0, dv=1.0)


@pytest.fixture(scope="session")
def coarse_table(coarse_grid, app_config):
    return build_eigen_table(coarse_grid, workers=1, app_config=app_config)


@pytest.fixture
def rng() -> numpy.random.Generator:
    return numpy.random.default_rng(20240917)


def random_occupancy(rng: numpy.random.Generator) -> numpy.ndarray:
    """Random probability vector over the nine states."""
    u = rng.random(9)
    return u / u.sum()
