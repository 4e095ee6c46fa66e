import numpy as np
import pytest


def random_density_matrix(rng, dim=8):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


def random_pure_state(rng, dim=8):
    psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    psi /= np.linalg.norm(psi)
    return psi


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
