import math

import numpy as np
import pytest

from trithermal.bell import MeasurementFrame, svetlichny_operator
from trithermal.errors import DimensionMismatchError, NonHermitianError
from trithermal.linalg import (
    IDENTITY_2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    expectation,
    hermitian_eigenvalues,
    partial_transpose,
    tensor_product,
)
from trithermal.states import ghz_state, maximally_mixed, w_state

from conftest import random_density_matrix


def random_hermitian(rng, dim=8):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (g + g.conj().T) / 2.0


# --- tensor products -------------------------------------------------------------


def test_tensor_product_identity():
    assert np.array_equal(tensor_product(IDENTITY_2, IDENTITY_2), np.eye(4, dtype=complex))


def test_tensor_product_diagonal():
    p = 0.5
    d = np.diag([p, 1.0]).astype(complex)
    assert np.array_equal(tensor_product(d, d), np.diag([p * p, p, p, 1.0]).astype(complex))


def test_tensor_product_associative_exact(rng):
    # dyadic entries keep every float product exact, so associativity is exact equality
    mats = [
        (rng.integers(-8, 9, size=(2, 2)) + 1j * rng.integers(-8, 9, size=(2, 2))) / 8.0
        for _ in range(3)
    ]
    a, b, c = mats
    assert np.array_equal(tensor_product(tensor_product(a, b), c), tensor_product(a, tensor_product(b, c)))


def test_tensor_product_associative_generic(rng):
    a, b, c = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(3))
    left = tensor_product(tensor_product(a, b), c)
    right = tensor_product(a, tensor_product(b, c))
    assert np.allclose(left, right, rtol=1e-15, atol=1e-15)


def test_tensor_product_kraus_on_ground_projector():
    # decay-free Kraus factor diag(p, 1) three times on |000><000| scales it by p^6
    p = 0.73
    e1 = np.diag([p, 1.0]).astype(complex)
    g = tensor_product(e1, e1, e1)
    rho = np.zeros((8, 8), dtype=complex)
    rho[0, 0] = 1.0
    out = g @ rho @ g.conj().T
    expected = np.zeros((8, 8), dtype=complex)
    expected[0, 0] = p**6
    assert np.allclose(out, expected, atol=1e-15)


# --- partial transpose -----------------------------------------------------------


def test_partial_transpose_product_state(rng):
    parts = [random_density_matrix(rng, 2) for _ in range(3)]
    rho = tensor_product(*parts)
    expected = tensor_product(parts[0].T, parts[1], parts[2])
    assert np.array_equal(partial_transpose(rho, "A"), expected)


def test_partial_transpose_ghz_positions():
    # |000><111| -> |100><011|: coherences land at (5,4)/(4,5) in 1-based labels
    pt = partial_transpose(ghz_state(), "A")
    expected = np.zeros((8, 8), dtype=complex)
    expected[0, 0] = expected[7, 7] = 0.5
    expected[4, 3] = expected[3, 4] = 0.5
    assert np.allclose(pt, expected, atol=1e-15)


@pytest.mark.parametrize("subsystem", ["A", "B", "C"])
def test_partial_transpose_involution_and_hermiticity(rng, subsystem):
    rho = random_density_matrix(rng)
    pt = partial_transpose(rho, subsystem)
    assert np.max(np.abs(pt - pt.conj().T)) < 1e-15
    assert np.array_equal(partial_transpose(pt, subsystem), rho)
    assert abs(np.trace(pt) - np.trace(rho)) < 1e-15


def test_partial_transpose_composition_is_full_transpose(rng):
    rho = random_density_matrix(rng)
    out = partial_transpose(partial_transpose(partial_transpose(rho, "A"), "B"), "C")
    assert np.array_equal(out, rho.T)


def test_partial_transpose_rejects_wrong_shape():
    with pytest.raises(DimensionMismatchError):
        partial_transpose(np.eye(4, dtype=complex), "A")
    with pytest.raises(ValueError):
        partial_transpose(np.eye(8, dtype=complex), "D")


# --- eigenvalues ------------------------------------------------------------------


def test_eigenvalues_diagonal():
    assert np.allclose(hermitian_eigenvalues(np.diag([3.0, -1.0, 0.5])), [-1.0, 0.5, 3.0], atol=1e-14)


def test_eigenvalues_ghz_partial_transpose():
    eig = hermitian_eigenvalues(partial_transpose(ghz_state(), "A"))
    assert np.allclose(eig, [-0.5, 0, 0, 0, 0, 0.5, 0.5, 0.5], atol=1e-13)


def test_eigenvalues_pauli_tensor():
    eig = hermitian_eigenvalues(tensor_product(SIGMA_X, SIGMA_X))
    assert np.allclose(eig, [-1, -1, 1, 1], atol=1e-13)


def test_eigenvalues_match_lapack_oracle(rng):
    for _ in range(50):
        h = random_hermitian(rng)
        assert np.allclose(hermitian_eigenvalues(h), np.linalg.eigvalsh(h), atol=1e-11)


def test_eigenvalues_permutation_invariant(rng):
    h = random_hermitian(rng)
    perm = rng.permutation(8)
    u = np.eye(8)[perm]
    assert np.allclose(hermitian_eigenvalues(h), hermitian_eigenvalues(u @ h @ u.T), atol=1e-10)


def test_eigenvalue_sum_equals_trace(rng):
    for _ in range(20):
        h = random_hermitian(rng)
        eig = hermitian_eigenvalues(h)
        trace = np.trace(h).real
        assert abs(eig.sum() - trace) < 1e-12 * max(1.0, abs(trace))


def test_characteristic_polynomial_residual(rng):
    # independent residual check: det(h - lambda I) at each returned eigenvalue
    for _ in range(20):
        h = random_hermitian(rng)
        h /= np.linalg.norm(h, 2)  # unit spectral norm makes 1e-9 an absolute bound
        for lam in hermitian_eigenvalues(h):
            assert abs(np.linalg.det(h - lam * np.eye(8))) < 1e-9


def test_eigenvalues_ascending_order(rng):
    eig = hermitian_eigenvalues(random_hermitian(rng))
    assert np.all(np.diff(eig) >= 0)


def test_eigenvalues_reject_non_hermitian():
    m = np.zeros((3, 3), dtype=complex)
    m[0, 1] = 1.0
    with pytest.raises(NonHermitianError):
        hermitian_eigenvalues(m)


# --- expectation ------------------------------------------------------------------


def test_expectation_identity_is_trace(rng):
    assert abs(expectation(np.eye(8, dtype=complex), random_density_matrix(rng)) - 1.0) < 1e-14


def test_expectation_svetlichny_on_ghz():
    frame = MeasurementFrame.ghz(3.0 * math.pi / 4.0, 0.0)
    assert abs(expectation(svetlichny_operator(frame), ghz_state()) - 4.0 * math.sqrt(2.0)) < 1e-12


def test_expectation_parity_on_w():
    # every W-class basis ket carries exactly one second-level qubit: odd parity
    zzz = tensor_product(SIGMA_Z, SIGMA_Z, SIGMA_Z)
    assert abs(expectation(zzz, w_state()) + 1.0) < 1e-14


def test_expectation_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        expectation(np.eye(4, dtype=complex), maximally_mixed())


def test_expectation_rejects_imaginary_trace():
    with pytest.raises(ValueError):
        expectation(1j * np.eye(8, dtype=complex), maximally_mixed())


def test_pauli_y_convention():
    assert np.array_equal(SIGMA_Y, np.array([[0, -1j], [1j, 0]]))
