import numpy as np
import pytest

from hirota_solitons import presets
from hirota_solitons.scattering import trace_potential


@pytest.fixture
def fig1_config():
    return presets.one_soliton_reference()


@pytest.fixture
def two_soliton_config():
    return presets.two_soliton_reference()


@pytest.fixture(scope="session")
def fig1_dense_trace():
    """Potential trace at the resolution the scattering checks are rated for."""
    return trace_potential(presets.one_soliton_reference(), 0.0, 20.0, 20001)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
