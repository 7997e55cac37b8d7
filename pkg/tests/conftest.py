import pytest
from hypothesis import HealthCheck, settings

from shortc2.core import HenonMap

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def quad():
    """H(x, y) = (y, y^2 - x)."""
    return HenonMap.make(2, (0,), 1)


@pytest.fixture(scope="session")
def cubic():
    return HenonMap.make(3, (0, 0), 1)
