import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from moving_well import WellGeometry, make_geometry

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture
def expanding_well() -> WellGeometry:
    """The reference scenario: unit width, walls receding at 0.1 and 0.2."""
    return make_geometry(1.0, -0.1, 0.2)


@pytest.fixture
def static_well() -> WellGeometry:
    return make_geometry(1.0, 0.0, 0.0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260808)
