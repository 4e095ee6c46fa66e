"""Average teleportation fidelity of the evolved GHZ and W channels.

Only the reduced element-combination formulas are evaluated; the classical
benchmark is 2/3, the best fidelity achievable without entanglement.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ReservoirParams

CLASSICAL_FIDELITY = 2.0 / 3.0


@dataclass(frozen=True)
class FidelityValue:
    f_av: float
    classical_margin: float


def _value(f: float) -> FidelityValue:
    return FidelityValue(f, f - CLASSICAL_FIDELITY)


def _real_element(rho: np.ndarray, i: int, j: int, imag_tol: float) -> float:
    v = complex(rho[i, j])
    if abs(v.imag) > imag_tol:
        raise ValueError(f"element ({i + 1},{j + 1}) has imaginary part {v.imag:g}")
    return v.real


def fidelity_ghz(rho: np.ndarray, *, imag_tol: float = 1e-10) -> FidelityValue:
    """(1 + rho^{11+44+55+88} + 2 rho^{18}) / 3 on the GHZ-branch evolved state.

    The channel keeps these elements real; the imaginary-part check turns that
    into a runtime assertion.
    """
    rho = np.asarray(rho, dtype=complex)
    diag = sum(_real_element(rho, i, i, imag_tol) for i in (0, 3, 4, 7))
    coherence = _real_element(rho, 0, 7, imag_tol)
    return _value((1.0 + diag + 2.0 * coherence) / 3.0)


def fidelity_w(rho: np.ndarray, *, imag_tol: float = 1e-10) -> FidelityValue:
    """(1 + rho^{22+33+44+88+35-46} + 2 sqrt(2) rho^{23}) / 3 on the W-branch evolved state."""
    rho = np.asarray(rho, dtype=complex)
    combo = (
        sum(_real_element(rho, i, i, imag_tol) for i in (1, 2, 3, 7))
        + _real_element(rho, 2, 4, imag_tol)
        - _real_element(rho, 3, 5, imag_tol)
    )
    coherence = _real_element(rho, 1, 2, imag_tol)
    return _value((1.0 + combo + 2.0 * np.sqrt(2.0) * coherence) / 3.0)


def analytic_fidelity_ghz(params: ReservoirParams) -> FidelityValue:
    """Closed-form GHZ-branch fidelity 1/2 + p^3/3 + p^4/6 + (1-p^2)^2/(6(2 nbar+1)^2).

    The last term vanishes identically in the infinite-temperature mode.  The
    t -> infinity limit is 2/3 at nbar = 0 and 1/2 at infinite temperature.

    Raises:
        UnequalRatesError: the three damping rates differ.
    """
    params.require_equal_rates()
    p = params.decay_factors()[0]
    p2 = p * p
    f = 0.5 + p * p2 / 3.0 + p2 * p2 / 6.0
    if not params.is_infinite_temperature:
        f += (1.0 - p2) ** 2 / (6.0 * (2.0 * params.nbar + 1.0) ** 2)
    return _value(f)
