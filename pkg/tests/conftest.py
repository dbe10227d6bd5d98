import numpy as np
import pytest

from smclab.controllers import GainSet
from smclab.dynamics import RobotParams


@pytest.fixture
def params():
    """Bench robot: 320/360 mm links, 386/722 g tip masses."""
    return RobotParams(l1=0.32, l2=0.36, m1=0.386, m2=0.722, g=9.81)


@pytest.fixture
def gains():
    return GainSet(k1=[580.0, 580.0], k2=[50.0, 50.0], kr=[30.0, 30.0],
                   mu1=[40.0, 40.0], mu2=[40.0, 40.0])


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
