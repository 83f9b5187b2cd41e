import numpy as np
import pytest


def random_hermitian(n, rng, scale=1.0):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * 0.5 * (a + a.conj().T)


def random_hermitian_pair(n, rng, scale=1.0):
    return random_hermitian(n, rng, scale), random_hermitian(n, rng, scale)


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
