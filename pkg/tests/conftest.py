import sys
from pathlib import Path

import numpy as np
import pytest

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

sys.path.insert(0, str(Path(__file__).parent))

from fracspace import PowerLaw, build_space


@pytest.fixture(scope="session")
def two_point():
    """Unit-distance pair, unit weights, lambda(x, r) = 2r, dimension 1."""
    return build_space([[0.0, 1.0], [1.0, 0.0]], [1.0, 1.0], PowerLaw(2.0, 1.0), dim_n=1.0)


@pytest.fixture(scope="session")
def grid16():
    from fracspace.harness import make_space

    return make_space("grid1d:16")


def random_space(n: int, seed: int, dim: float = 2.0):
    """Small random Euclidean space with a fitted power-law majorant."""
    rng = np.random.default_rng(seed)
    coords = rng.uniform(0.0, 1.0, size=(n, 2))
    diff = coords[:, None, :] - coords[None, :, :]
    d = np.sqrt((diff**2).sum(axis=2))
    w = rng.uniform(0.5, 2.0, size=n)
    from fracspace.space import check_upper_doubling

    probe = build_space(d, w, PowerLaw(1.0, dim), dim_n=dim)
    c = check_upper_doubling(probe).fitted_constant
    return build_space(d, w, PowerLaw(c * (1 + 1e-9), dim), dim_n=dim)
