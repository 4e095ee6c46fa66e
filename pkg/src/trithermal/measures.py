"""Bipartition negativities and the tripartite negativity.

Numeric values come from the negative eigenvalues of the partial transpose;
the GHZ branch additionally has closed forms valid for equal damping rates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ReservoirParams
from .linalg import hermitian_eigenvalues, partial_transpose

EIGENVALUE_CLIP = 1e-10


def negativity(rho: np.ndarray, subsystem: str, *, clip: float = EIGENVALUE_CLIP) -> float:
    """Minus the sum of strictly negative partial-transpose eigenvalues.

    Eigenvalues in (-clip, 0) count as zero; the clip sits well above the
    eigensolver noise floor without masking genuine small negativities.
    """
    eig = hermitian_eigenvalues(partial_transpose(rho, subsystem))
    return float(-eig[eig < -clip].sum())


@dataclass(frozen=True)
class NegativityReport:
    n_a_bc: float
    n_b_ca: float
    n_c_ab: float
    tripartite: float


def tripartite_negativity(rho: np.ndarray) -> NegativityReport:
    """Geometric mean of the three one-vs-two bipartition negativities."""
    na = negativity(rho, "A")
    nb = negativity(rho, "B")
    nc = negativity(rho, "C")
    return NegativityReport(na, nb, nc, (na * nb * nc) ** (1.0 / 3.0))


def ppt_margin(rho: np.ndarray) -> float:
    """max over subsystems of the smallest partial-transpose eigenvalue.

    Negative exactly while every bipartition is entangled, i.e. while the
    tripartite negativity is positive; its zero crossing is the negativity
    death time.
    """
    return max(
        float(hermitian_eigenvalues(partial_transpose(rho, s))[0]) for s in ("A", "B", "C")
    )


def _ghz_alpha_beta(params: ReservoirParams) -> tuple[float, float]:
    params.require_equal_rates()
    p = params.decay_factors()[0]
    p2 = p * p
    if params.is_infinite_temperature:
        # limit of the finite-temperature coefficients
        return 0.0, (1.0 - p2) * (1.0 + p2) / 4.0
    n = params.nbar
    denom = 2.0 * n + 1.0
    p4 = p2 * p2
    alpha = (1.0 - p2) * (2.0 * n * (n + 1.0) * (3.0 * p4 - 1.0) + 2.0 * p4 - p2) / (
        2.0 * denom**3
    )
    beta = (1.0 - p2) * (2.0 * n * (n + 1.0) * (p2 + 1.0) + p2) / (2.0 * denom**2)
    return alpha, beta


def analytic_ghz_entanglement_margin(params: ReservoirParams) -> float:
    """sqrt(alpha^2 + p^6) - beta: positive while the evolved GHZ state is entangled.

    While positive it equals minus twice the smallest partial-transpose
    eigenvalue, so its zero crossing matches the numeric ppt_margin crossing
    (after the death another, positive, eigenvalue takes over as the minimum).
    """
    alpha, beta = _ghz_alpha_beta(params)
    p = params.decay_factors()[0]
    return math.sqrt(alpha * alpha + p**6) - beta


def analytic_negativity_ghz(params: ReservoirParams) -> float:
    """Closed-form tripartite negativity of the evolved GHZ state, equal rates only.

    All three bipartition negativities coincide on this branch, so the
    geometric mean equals each factor.

    Raises:
        UnequalRatesError: the three damping rates differ.
    """
    return 0.5 * max(0.0, analytic_ghz_entanglement_margin(params))
