import numpy as np
import pytest
from hypothesis import strategies as st

from qpartsep.partition import Partition


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_hermitian(rng, dim, scale=1.0):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * (a + a.conj().T) / 2


def random_permutation_matrix(rng, dim):
    u = np.zeros((dim, dim), dtype=complex)
    u[np.arange(dim), rng.permutation(dim)] = 1
    return u


@st.composite
def partitions(draw, min_n=2, max_n=6):
    """Any bipartition, including orientations with qubit 1 on the right."""
    n = draw(st.integers(min_n, max_n))
    r = draw(st.sets(st.integers(1, n), min_size=1, max_size=n - 1))
    return Partition.from_r_block(n, r)


seeds = st.integers(0, 2**64 - 1)
