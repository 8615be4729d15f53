import math

import numpy as np
import pytest

from smfrft import gen_gaussian, make_angle, make_grid


@pytest.fixture
def small_grid():
    # 128 points over [-8, 8); origin on the lattice
    return make_grid(-8.0, 16.0 / 128, 128)


@pytest.fixture
def std_grid():
    # the harness's default span at reduced resolution, fast enough for
    # unit tests, still a power of two
    return make_grid(-16.0, 32.0 / 512, 512)


@pytest.fixture
def gaussian_pair(small_grid):
    f = gen_gaussian(small_grid, center=0.2, width=1.0, carrier=0.8)
    g = gen_gaussian(small_grid, center=-0.4, width=0.9, carrier=-1.1)
    return f, g


@pytest.fixture
def quarter_angle():
    return make_angle(math.pi / 4)


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)
