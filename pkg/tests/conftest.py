import numpy as np
import pytest

from dbarkit import build_grid
from dbarkit.bumps import random_suite


@pytest.fixture(scope="session")
def grid_default():
    return build_grid(6.0, 256)


@pytest.fixture(scope="session")
def grid_small():
    return build_grid(6.0, 64)


@pytest.fixture(scope="session")
def suite20():
    return random_suite(20, seed=42)


@pytest.fixture(scope="session")
def one_member():
    return random_suite(1, seed=42)[0]


@pytest.fixture(scope="session")
def gaussian_field(grid_default):
    from dbarkit import sample

    return sample(lambda z: np.exp(-np.abs(z) ** 2), grid_default)
