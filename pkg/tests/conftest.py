import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from bemwe.bivariate import BemweParams
from bemwe.data import load_nfl
from bemwe.inference import partition_sample
from reference_values import NFL_FIXED

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("fast", max_examples=10, deadline=None)
settings.load_profile("default")



@pytest.fixture
def rng():
    return np.random.default_rng(20260101)


@pytest.fixture
def unit_params():
    return BemweParams(1, 1, 1, 1, 1, 1)


@pytest.fixture(scope="session")
def nfl_raw_partition():
    """Unscaled table values: the scale at which the published fit is reproduced."""
    return partition_sample(load_nfl(scale=1.0).sample(), NFL_FIXED)


@pytest.fixture(scope="session")
def nfl_partition():
    return partition_sample(load_nfl(scale=100.0).sample(), NFL_FIXED)
