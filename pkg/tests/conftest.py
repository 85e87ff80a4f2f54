import numpy as np
import pytest

from torusdamp.spectral import make_grid


@pytest.fixture
def grid1d():
    return make_grid(1, [64], [2.0 * np.pi])


@pytest.fixture
def grid2d():
    return make_grid(2, [16, 16], [2.0 * np.pi, 2.0 * np.pi])


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_values(rng, grid, scale=1.0):
    """Unstructured complex samples (not band-limited) for norm/transform tests."""
    shape = grid.shape
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
