"""Dense complex linear algebra for systems of up to three qubits.

States and operators are plain numpy arrays in the product basis |abc>
with basis index 4a + 2b + c, qubit A most significant.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatchError, NonHermitianError

HERMITICITY_TOL = 1e-10
JACOBI_TOL = 1e-13

IDENTITY_2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

_SUBSYSTEM_AXES = {"A": 0, "B": 1, "C": 2}


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.conjugate(np.asarray(m).T)


def tensor_product(*factors: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more matrices, leftmost factor most significant."""
    if not factors:
        raise ValueError("tensor_product needs at least one factor")
    out = np.asarray(factors[0], dtype=complex)
    for f in factors[1:]:
        out = np.kron(out, np.asarray(f, dtype=complex))
    return out


def subsystem_axis(subsystem: str) -> int:
    try:
        return _SUBSYSTEM_AXES[subsystem.upper()]
    except (KeyError, AttributeError):
        raise ValueError(f"subsystem must be one of 'A', 'B', 'C', got {subsystem!r}") from None


def partial_transpose(rho: np.ndarray, subsystem: str) -> np.ndarray:
    """Transpose the index of a single qubit of an 8x8 three-qubit operator.

    Applying the same partial transpose twice returns the input exactly;
    composing the three single-qubit transposes gives the full transpose.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (8, 8):
        raise DimensionMismatchError(f"partial transpose expects an 8x8 matrix, got {rho.shape}")
    axis = subsystem_axis(subsystem)
    t = rho.reshape(2, 2, 2, 2, 2, 2)
    t = np.swapaxes(t, axis, axis + 3)
    return np.ascontiguousarray(t.reshape(8, 8))


def hermitian_eigenvalues(
    h: np.ndarray,
    *,
    hermiticity_tol: float = HERMITICITY_TOL,
    convergence_tol: float = JACOBI_TOL,
    max_sweeps: int = 60,
) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, ascending, via cyclic complex Jacobi rotations.

    The input is symmetrized to (h + h^dag)/2 before iterating; sweeps stop once
    the off-diagonal Frobenius norm falls below ``convergence_tol`` (scaled by
    the matrix norm when that exceeds one).

    Raises:
        NonHermitianError: entrywise deviation from h^dag exceeds ``hermiticity_tol``.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {h.shape}")
    if h.size and np.max(np.abs(h - h.conj().T)) > hermiticity_tol:
        raise NonHermitianError(
            f"matrix deviates from Hermiticity by more than {hermiticity_tol:g}"
        )
    a = (h + h.conj().T) / 2.0
    n = a.shape[0]
    if n == 1:
        return np.array([a[0, 0].real])

    threshold = convergence_tol * max(1.0, float(np.linalg.norm(a)))
    skip = threshold / (n * n)
    mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a[mask]))
        if off <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                absg = abs(g)
                if absg <= skip:
                    continue
                phase = g / absg
                tau = (a[q, q].real - a[p, p].real) / (2.0 * absg)
                t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # rows: U^dag A
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * phase * rq
                a[q, :] = s * rp + c * phase * rq
                # columns: (U^dag A) U
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * np.conj(phase) * cq
                a[:, q] = s * cp + c * np.conj(phase) * cq
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    return np.sort(np.diag(a).real)


def expectation(op: np.ndarray, rho: np.ndarray, *, imag_tol: float = 1e-10) -> float:
    """Re(tr(op rho)) for a Hermitian observable; the trace must be real to ``imag_tol``."""
    op = np.asarray(op, dtype=complex)
    rho = np.asarray(rho, dtype=complex)
    if op.ndim != 2 or op.shape != rho.shape or op.shape[0] != op.shape[1]:
        raise DimensionMismatchError(
            f"operator shape {op.shape} incompatible with state shape {rho.shape}"
        )
    value = complex(np.einsum("ij,ji->", op, rho))
    if abs(value.imag) > imag_tol:
        raise ValueError(f"expectation value has imaginary part {value.imag:g}")
    return value.real
