"""Initial three-qubit states and density-matrix validation."""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidStateError, NotNormalizedError
from .linalg import hermitian_eigenvalues

AMPLITUDE_NORM_TOL = 1e-10


def pure_state(amplitudes) -> np.ndarray:
    """Density matrix |psi><psi| of an 8-amplitude ket (global phase drops out)."""
    psi = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if psi.shape != (8,):
        raise NotNormalizedError(f"expected 8 amplitudes, got {psi.shape[0]}")
    norm_sq = float(np.sum(np.abs(psi) ** 2))
    if abs(norm_sq - 1.0) > AMPLITUDE_NORM_TOL:
        raise NotNormalizedError(f"amplitudes have squared norm {norm_sq!r}, expected 1")
    return np.outer(psi, psi.conj())


def ghz_state() -> np.ndarray:
    """(|000> + |111>)/sqrt(2) as a density matrix."""
    psi = np.zeros(8, dtype=complex)
    psi[0] = psi[7] = 1.0 / math.sqrt(2.0)
    return pure_state(psi)


def w_state() -> np.ndarray:
    """(sqrt(2)|001> + |010> + |100>)/2 as a density matrix.

    This is the sqrt(2)-weighted variant that teleports perfectly through an
    ideal channel, not the symmetric W state; no constructor for the symmetric
    state is provided to keep the two from being confused.
    """
    psi = np.zeros(8, dtype=complex)
    psi[1] = math.sqrt(2.0) / 2.0
    psi[2] = 0.5
    psi[4] = 0.5
    return pure_state(psi)


def maximally_mixed() -> np.ndarray:
    """I/8."""
    return np.eye(8, dtype=complex) / 8.0


def check_density_matrix(
    rho: np.ndarray,
    *,
    hermiticity_tol: float = 1e-12,
    trace_tol: float = 1e-12,
    eigenvalue_floor: float = -1e-10,
) -> None:
    """Raise InvalidStateError unless rho is Hermitian, unit-trace and positive semidefinite."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (8, 8):
        raise InvalidStateError(f"expected an 8x8 density matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > hermiticity_tol:
        raise InvalidStateError("density matrix is not Hermitian within tolerance")
    trace = complex(np.trace(rho))
    if abs(trace - 1.0) > trace_tol:
        raise InvalidStateError(f"density matrix has trace {trace!r}, expected 1")
    smallest = hermitian_eigenvalues(rho, hermiticity_tol=max(hermiticity_tol, 1e-12))[0]
    if smallest < eigenvalue_floor:
        raise InvalidStateError(f"density matrix has negative eigenvalue {smallest:g}")
