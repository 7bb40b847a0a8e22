import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hftlab import gauss_laguerre_grid, sample_profile, uniform_grid
from hftlab.profiles import SUITE, get_profile


@pytest.fixture(scope="session")
def gl_grid():
    """Default transform grid: 512 scaled Gauss-Laguerre nodes."""
    return gauss_laguerre_grid(512, 10.0)


@pytest.fixture(scope="session")
def op_grid():
    """Default operator grid: fine uniform nodes on (0, 40]."""
    return uniform_grid(5000, 40.0)


@pytest.fixture(scope="session")
def suite_gl(gl_grid):
    return {name: sample_profile(get_profile(name), gl_grid)
            for name in SUITE}


@pytest.fixture(scope="session")
def suite_op(op_grid):
    return {name: sample_profile(get_profile(name), op_grid)
            for name in SUITE}


def relative_l2(grid, got, want):
    num = np.sqrt(float(grid.weights @ np.abs(got - want) ** 2))
    den = np.sqrt(float(grid.weights @ np.abs(want) ** 2))
    return num / den
