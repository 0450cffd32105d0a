import numpy as np
import pytest


@pytest.fixture
def rng():
    # Fixed seed: every test in the suite is reproducible bit for bit.
    return np.random.default_rng(20240831)
