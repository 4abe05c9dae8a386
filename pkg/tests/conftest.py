import numpy as np
import pytest

import cavmag as cm


@pytest.fixture
def symmetric_family():
    """eta = k = 1, gamma_2 = 1.5 MHz (figure caption parameters)."""
    return cm.symmetric_figure_family()


@pytest.fixture
def asymmetric_family():
    """eta = 2 with the EP3-compatible k, gamma_2 = 1.5 MHz."""
    return cm.asymmetric_figure_family()


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
