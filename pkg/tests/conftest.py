"""Shared, session-cached fixtures: phase sets are the expensive objects."""

import pytest
from hypothesis import settings

from weakshock import flux as fl
from weakshock import kernels as kn
from weakshock import phase_dynamics as pd

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


@pytest.fixture(scope="session")
def hopf():
    return fl.hopf()


@pytest.fixture(scope="session")
def quartic():
    return fl.quartic()


@pytest.fixture(scope="session")
def gauss():
    return kn.gaussian()


@pytest.fixture(scope="session")
def unit_state():
    """u0=0, e1=e2=1 from x=0 and x=1: t*=1/2, x*=3/2."""
    return pd.TwoShockState(0.0, 1.0, 1.0, 0.0, 1.0)


@pytest.fixture(scope="session")
def merge_state():
    """The stationary-merge data: u0=-1, e1=e2=1 from x=-1 and x=1."""
    return pd.TwoShockState(-1.0, 1.0, 1.0, -1.0, 1.0)


@pytest.fixture(scope="session")
def hopf_phases(hopf, gauss, unit_state):
    return pd.build_phase_set(hopf, unit_state, gauss, gauss, hopf_path=True)


@pytest.fixture(scope="session")
def general_phases(hopf, gauss, unit_state):
    return pd.build_phase_set(hopf, unit_state, gauss, gauss)


@pytest.fixture(scope="session")
def shifted_phases(hopf, unit_state):
    """Second kernel translated by 0.5, so the kernel pair has a nonzero first moment."""
    return pd.build_phase_set(hopf, unit_state, kn.gaussian(), kn.gaussian(shift=0.5), hopf_path=True)
