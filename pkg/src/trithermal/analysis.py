"""Critical-time and critical-threshold solvers.

Death times are located on signed curves (expectation minus threshold, or the
partial-transpose margin) rather than on the clipped violation curves, so the
flat region after a death cannot destroy the bracket.  Times are reported in
units of gamma*t, or nbar*gamma*t in the infinite-temperature mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bell import maximize_violation, violation_threshold
from .channel import ReservoirParams, apply_channel
from .errors import NoCrossingError
from .measures import analytic_ghz_entanglement_margin, ppt_margin, tripartite_negativity
from .states import check_density_matrix, ghz_state, w_state
from .teleport import CLASSICAL_FIDELITY, fidelity_ghz, fidelity_w

DEFAULT_WINDOW = (0.0, 20.0)
SCAN_STEP = 1e-3
REFINE_TOL = 1e-10

_BRANCHES = ("ghz", "w")
_AXIS_FOR_BRANCH = {"ghz": "YX", "w": "ZX"}


@dataclass(frozen=True)
class CriticalReport:
    """One threshold crossing: the quantity, its time, and existence.

    ``tau_gamma`` is math.inf when no crossing exists in the window.
    ``n_at_tau`` carries the tripartite negativity at the crossing for
    fidelity searches (the critical negativity) and is None otherwise.
    """

    quantity: str
    tau_gamma: float
    exists: bool
    n_at_tau: float | None = None


def find_crossing(
    curve: Callable[[float], float],
    threshold: float,
    window: tuple[float, float] = DEFAULT_WINDOW,
    *,
    scan_step: float = SCAN_STEP,
    refine_tol: float = REFINE_TOL,
    noise_floor: float = 0.0,
    quantity: str = "custom",
) -> CriticalReport:
    """First strict sign change of curve(t) - threshold in the window, bisected to refine_tol.

    A forward scan with the given step finds the bracketing interval; if no
    sign change occurs the report has exists=False and an infinite time.
    ``noise_floor`` discards brackets whose preceding sample sits closer than
    that to the threshold: curves that decay to the threshold asymptotically
    flip sign at rounding scale in the tail, while a genuine crossing is
    approached through samples far above any noise.
    """
    lo, hi = window
    if not (hi > lo >= 0.0):
        raise ValueError(f"window must satisfy 0 <= lo < hi, got {window}")

    def f(t: float) -> float:
        return curve(t) - threshold

    t_prev, f_prev = lo, f(lo)
    bracket = None
    steps = int(math.ceil((hi - lo) / scan_step))
    for i in range(1, steps + 1):
        t = min(lo + i * scan_step, hi)
        ft = f(t)
        if (
            f_prev != 0.0
            and abs(f_prev) > noise_floor
            and (f_prev > 0.0) != (ft > 0.0)
        ):
            bracket = (t_prev, f_prev, t, ft)
            break
        t_prev, f_prev = t, ft
    if bracket is None:
        return CriticalReport(quantity, math.inf, False)

    a, fa, b, _ = bracket
    while b - a > refine_tol:
        mid = (a + b) / 2.0
        fm = f(mid)
        if fm == 0.0:
            a = b = mid
            break
        if (fa > 0.0) == (fm > 0.0):
            a, fa = mid, fm
        else:
            b = mid
    return CriticalReport(quantity, (a + b) / 2.0, True)


def _check_branch(branch: str) -> str:
    b = branch.lower()
    if b not in _BRANCHES:
        raise ValueError(f"branch must be 'ghz' or 'w', got {branch!r}")
    return b


def reservoir_at(nbar: float, gamma_t: float) -> ReservoirParams:
    """Symmetric-rate parameters at dimensionless time gamma*t (nbar*gamma*t when nbar is inf)."""
    if math.isinf(nbar):
        return ReservoirParams.infinite_temperature(gamma_t)
    return ReservoirParams.symmetric(nbar, gamma_t)


def initial_state(branch: str) -> np.ndarray:
    return ghz_state() if _check_branch(branch) == "ghz" else w_state()


def _evolver(branch: str, nbar: float) -> Callable[[float], np.ndarray]:
    rho0 = initial_state(branch)
    check_density_matrix(rho0)
    return lambda gamma_t: apply_channel(rho0, reservoir_at(nbar, gamma_t), validate=False)


def negativity_curve(branch: str, nbar: float) -> Callable[[float], float]:
    """gamma*t -> numeric tripartite negativity of the evolved state."""
    evolve = _evolver(branch, nbar)
    return lambda gamma_t: tripartite_negativity(evolve(gamma_t)).tripartite


def entanglement_margin_curve(
    branch: str, nbar: float, *, analytic: bool = False
) -> Callable[[float], float]:
    """Signed curve whose zero is the negativity death time (negative while entangled).

    ``analytic=True`` is available on the GHZ branch only and evaluates the
    closed form instead of the channel pipeline.
    """
    if analytic:
        if _check_branch(branch) != "ghz":
            raise ValueError("analytic margin exists only for the GHZ branch")
        return lambda gamma_t: -analytic_ghz_entanglement_margin(reservoir_at(nbar, gamma_t))
    evolve = _evolver(branch, nbar)
    return lambda gamma_t: ppt_margin(evolve(gamma_t))


def fidelity_curve(branch: str, nbar: float) -> Callable[[float], float]:
    """gamma*t -> average teleportation fidelity of the evolved state."""
    branch = _check_branch(branch)
    evolve = _evolver(branch, nbar)
    fid = fidelity_ghz if branch == "ghz" else fidelity_w
    return lambda gamma_t: fid(evolve(gamma_t)).f_av


def bell_expectation_curve(branch: str, quantity: str, nbar: float) -> Callable[[float], float]:
    """gamma*t -> max over frame angles of |<quantity>| on the evolved state."""
    branch = _check_branch(branch)
    axis = _AXIS_FOR_BRANCH[branch]
    evolve = _evolver(branch, nbar)
    return lambda gamma_t: maximize_violation(evolve(gamma_t), quantity, axis).max_abs_expectation


# Curves that start exactly at their threshold (the P1/P4 maxima equal 2 at
# t = 0) or decay to it asymptotically flip sign at rounding scale; a genuine
# crossing is approached through scan samples far above this band.
_NOISE_FLOOR = 1e-8


def bell_death_time(
    branch: str,
    quantity: str,
    nbar: float,
    *,
    window: tuple[float, float] = DEFAULT_WINDOW,
) -> CriticalReport:
    """Time at which the maximal |expectation| falls to its classical threshold."""
    curve = bell_expectation_curve(branch, quantity, nbar)
    return find_crossing(
        curve,
        violation_threshold(quantity),
        window,
        noise_floor=_NOISE_FLOOR,
        quantity=quantity,
    )


def negativity_death_time(
    branch: str,
    nbar: float,
    *,
    window: tuple[float, float] = DEFAULT_WINDOW,
    analytic: bool = False,
) -> CriticalReport:
    """Time at which the tripartite negativity reaches zero (sudden death)."""
    curve = entanglement_margin_curve(branch, nbar, analytic=analytic)
    report = find_crossing(
        curve, 0.0, window, noise_floor=_NOISE_FLOOR, quantity="negativity"
    )
    return CriticalReport("negativity", report.tau_gamma, report.exists)


def fidelity_critical_time(
    branch: str,
    nbar: float,
    *,
    window: tuple[float, float] = DEFAULT_WINDOW,
) -> CriticalReport:
    """Time at which the average fidelity falls to 2/3, with the negativity there."""
    report = find_crossing(
        fidelity_curve(branch, nbar),
        CLASSICAL_FIDELITY,
        window,
        noise_floor=_NOISE_FLOOR,
        quantity="fidelity",
    )
    if not report.exists:
        return report
    n_at_tau = negativity_curve(branch, nbar)(report.tau_gamma)
    return CriticalReport("fidelity", report.tau_gamma, True, n_at_tau)


def critical_negativity(
    branch: str,
    nbar: float,
    *,
    window: tuple[float, float] = DEFAULT_WINDOW,
) -> float:
    """Tripartite negativity at the fidelity crossing time.

    Raises:
        NoCrossingError: the fidelity never falls to 2/3 inside the window.
    """
    report = fidelity_critical_time(branch, nbar, window=window)
    if not report.exists:
        raise NoCrossingError(
            f"fidelity of branch {branch!r} never reaches 2/3 for nbar={nbar} in {window}"
        )
    return float(report.n_at_tau)


def short_time_svetlichny(params: ReservoirParams) -> float:
    """Quadratic short-time approximation 2 sqrt(2) (a^2 - 2a + 2), a = 3(2 nbar+1) gamma t / 2.

    Valid while both the approximation and the exact maximum stay above the
    classical threshold 4.
    """
    params.require_equal_rates()
    a = 1.5 * params.rescaled_times()[0]
    return 2.0 * math.sqrt(2.0) * (a * a - 2.0 * a + 2.0)


def _positive_root_quartic() -> float:
    # unique positive root of p^4 + 2 p^3 = 1 by bisection
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = (lo + hi) / 2.0
        if mid**4 + 2.0 * mid**3 - 1.0 < 0.0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def closed_form_constants() -> dict[str, float]:
    """High-precision reference constants used as test oracles.

    All times are in gamma*t units for nbar = 0 except the entries whose names
    say otherwise; ``*_rescaled_death`` values are tau * 3(2 nbar+1) gamma,
    valid at every temperature.
    """
    sqrt2 = math.sqrt(2.0)
    sqrt5 = math.sqrt(5.0)
    p_inf = _positive_root_quartic()
    n_inf = 0.5 * (p_inf**3 - (1.0 - p_inf**4) / 4.0)
    return {
        "ghz_svetlichny_rescaled_death": math.log(2.0),
        "ghz_p2_rescaled_death": math.log(5.0 / 4.0),
        "ghz_p3_rescaled_death": math.log(2.0),
        "ghz_p5_rescaled_death": math.log(4.0),
        "ghz_tau_t_nbar0": math.log((3.0 + sqrt5) / 2.0),
        "ghz_critical_negativity_nbar0": (2.0 - sqrt5 + math.sqrt(197.0 - 88.0 * sqrt5)) / 4.0,
        "ghz_inf_temperature_p_critical": p_inf,
        "ghz_inf_temperature_critical_negativity": n_inf,
        "w_tau_t_nbar0": math.log(5.0 / 3.0),
        "w_tau_s_nbar0": math.log(
            (16.0 + 20.0 * sqrt2) / (4.0 + 9.0 * sqrt2 + math.sqrt(274.0 + 328.0 * sqrt2))
        ),
        "w_tau_p5_nbar0": math.log(
            (20.0 + 8.0 * sqrt2) / (9.0 + 2.0 * sqrt2 + math.sqrt(169.0 + 68.0 * sqrt2))
        ),
    }
