import numpy as np
import pytest

from lattice_dirac import TorusLattice

# (d, M, h) cases from the acceptance sweep that respect the 4096 dense cap
SWEEP = [
    (d, M, h)
    for d in (1, 2, 3)
    for M in (2, 3, 4)
    for h in (1.0, 0.5)
    if 2**d * M**d <= 4096
]

SMALL = [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (3, 2)]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def coarse(d, M, h=1.0):
    return TorusLattice(d, M, 2 * h)
