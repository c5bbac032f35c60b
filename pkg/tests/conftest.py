import numpy as np
import pytest

from tcvol.models import Constant, LevyTriplet, NoiseSpec, Sine
from tcvol.simulate import simulate_tc_levy


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def brownian_series():
    """Time-changed Brownian motion with Gaussian noise, n = 2**14."""
    return simulate_tc_levy(LevyTriplet(0.0, 1.0), Sine(0.5, 1), NoiseSpec("gaussian", 0.005),
                            2 ** 14, seed=11)


@pytest.fixture(scope="session")
def constant_rate_series():
    return simulate_tc_levy(LevyTriplet(0.0, 1.0), Constant(), NoiseSpec("gaussian", 0.01),
                            2 ** 14, seed=5)
