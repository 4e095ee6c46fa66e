"""Svetlichny and WWZB Bell operators, closed-form expectations and violation maximization.

Measurement conventions: qubit A uses a fixed operator pair, (sigma_y, sigma_x)
on the GHZ branch and (sigma_z, sigma_x) on the W branch.  Qubits B and C use
the same pair rotated in its plane,

    M_K  = cos(theta_K) M_A - sin(theta_K) M'_A,
    M'_K = sin(theta_K) M_A + cos(theta_K) M'_A.

A state is Svetlichny-nonlocal when |<S>| > 4 and WWZB-nonlocal when any
|<B_PI>| > 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ReservoirParams, apply_channel
from .linalg import SIGMA_X, SIGMA_Y, SIGMA_Z, expectation, tensor_product
from .states import w_state

SVETLICHNY_THRESHOLD = 4.0
WWZB_THRESHOLD = 2.0

GRID_STEP = math.pi / 60.0
ANGLE_TOL = 1e-8

_AXES = {
    "YX": (SIGMA_Y, SIGMA_X),  # GHZ branch
    "ZX": (SIGMA_Z, SIGMA_X),  # W branch
}

_QUANTITIES = ("S", "P1", "P2", "P3", "P4", "P5")

# Each operator is scale * sum of signed three-fold products; the triple
# selects the unprimed (0) or primed (1) direction per qubit.
_TERMS: dict[str, tuple[float, tuple[tuple[int, tuple[int, int, int]], ...]]] = {
    "S": (
        1.0,
        (
            (+1, (0, 0, 0)),
            (+1, (0, 0, 1)),
            (+1, (0, 1, 0)),
            (+1, (1, 0, 0)),
            (-1, (1, 1, 1)),
            (-1, (1, 1, 0)),
            (-1, (1, 0, 1)),
            (-1, (0, 1, 1)),
        ),
    ),
    "P1": (2.0, ((+1, (0, 0, 0)),)),
    "P2": (
        0.5,
        (
            (-1, (0, 0, 0)),
            (+1, (0, 0, 1)),
            (+1, (0, 1, 0)),
            (+1, (1, 0, 0)),
            (+1, (0, 1, 1)),
            (+1, (1, 0, 1)),
            (+1, (1, 1, 0)),
            (+1, (1, 1, 1)),
        ),
    ),
    "P3": (
        1.0,
        (
            (+1, (0, 0, 0)),
            (+1, (0, 1, 0)),
            (+1, (1, 0, 0)),
            (-1, (1, 1, 0)),
        ),
    ),
    "P4": (
        1.0,
        (
            (+1, (0, 0, 0)),
            (+1, (0, 0, 1)),
            (-1, (1, 1, 0)),
            (+1, (1, 1, 1)),
        ),
    ),
    "P5": (
        1.0,
        (
            (+1, (0, 0, 1)),
            (+1, (0, 1, 0)),
            (+1, (1, 0, 0)),
            (-1, (1, 1, 1)),
        ),
    ),
}


def violation_threshold(quantity: str) -> float:
    """Classical bound crossed by a violation: 4 for S, 2 for the WWZB classes."""
    _check_quantity(quantity)
    return SVETLICHNY_THRESHOLD if quantity == "S" else WWZB_THRESHOLD


def _check_quantity(quantity: str) -> None:
    if quantity not in _QUANTITIES:
        raise ValueError(f"quantity must be one of {_QUANTITIES}, got {quantity!r}")


def _axis_operators(axis_pair_a: str) -> tuple[np.ndarray, np.ndarray]:
    try:
        return _AXES[axis_pair_a.upper()]
    except (KeyError, AttributeError):
        raise ValueError(f"axis_pair_a must be 'YX' or 'ZX', got {axis_pair_a!r}") from None


@dataclass(frozen=True)
class MeasurementFrame:
    """Qubit-A operator pair choice plus the B and C rotation angles."""

    axis_pair_a: str
    theta_b: float
    theta_c: float

    def __post_init__(self):
        _axis_operators(self.axis_pair_a)
        object.__setattr__(self, "axis_pair_a", self.axis_pair_a.upper())

    @classmethod
    def ghz(cls, theta_b: float, theta_c: float) -> "MeasurementFrame":
        return cls("YX", theta_b, theta_c)

    @classmethod
    def w(cls, theta_b: float, theta_c: float) -> "MeasurementFrame":
        return cls("ZX", theta_b, theta_c)


def build_measurements(frame: MeasurementFrame) -> tuple[np.ndarray, ...]:
    """The six operators (M_A, M'_A, M_B, M'_B, M_C, M'_C) of a frame."""
    o1, o2 = _axis_operators(frame.axis_pair_a)
    out = [o1, o2]
    for theta in (frame.theta_b, frame.theta_c):
        c, s = math.cos(theta), math.sin(theta)
        out.append(c * o1 - s * o2)
        out.append(s * o1 + c * o2)
    return tuple(out)


def _combination_operator(quantity: str, frame: MeasurementFrame) -> np.ndarray:
    ma, mpa, mb, mpb, mc, mpc = build_measurements(frame)
    per_site = ((ma, mpa), (mb, mpb), (mc, mpc))
    scale, terms = _TERMS[quantity]
    total = np.zeros((8, 8), dtype=complex)
    for sign, (xa, xb, xc) in terms:
        total += sign * tensor_product(per_site[0][xa], per_site[1][xb], per_site[2][xc])
    return scale * total


def svetlichny_operator(frame: MeasurementFrame) -> np.ndarray:
    """The eight-term Svetlichny operator of a measurement frame."""
    return _combination_operator("S", frame)


def wwzb_operator(class_id: str, frame: MeasurementFrame) -> np.ndarray:
    """One representative operator of a WWZB symmetry class, 'P1'..'P5'."""
    _check_quantity(class_id)
    if class_id == "S":
        raise ValueError("class_id must be one of 'P1'..'P5'; use svetlichny_operator for S")
    return _combination_operator(class_id, frame)


# --- expectation evaluation via axis correlators -------------------------------------
#
# Every frame operator is bilinear in the two axis operators per qubit, so any
# expectation reduces exactly to the eight correlators
# tr(rho O_i (x) O_j (x) O_k) with O in the axis pair, and from there to the
# bilinear form scale * (cos b, sin b) K (cos c, sin c)^T with a 2x2 kernel K.
# The optimizer uses this factorization; it equals the explicit operator
# construction identically.

_AXIS_STACKS: dict[str, np.ndarray] = {}

# row-coefficient maps: (cos t, sin t) @ _U[x] gives the unprimed/primed mixing row
_U = (np.array([[1.0, 0.0], [0.0, -1.0]]), np.array([[0.0, 1.0], [1.0, 0.0]]))


def _axis_stack(axis_pair_a: str) -> np.ndarray:
    key = axis_pair_a.upper()
    if key not in _AXIS_STACKS:
        o1, o2 = _axis_operators(key)
        pair = (o1, o2)
        _AXIS_STACKS[key] = np.stack(
            [
                tensor_product(pair[i], pair[j], pair[k])
                for i in range(2)
                for j in range(2)
                for k in range(2)
            ]
        ).reshape(2, 2, 2, 8, 8)
    return _AXIS_STACKS[key]


def _axis_correlators(rho: np.ndarray, axis_pair_a: str) -> np.ndarray:
    corr = np.einsum("abcij,ji->abc", _axis_stack(axis_pair_a), rho)
    if np.max(np.abs(corr.imag)) > 1e-10:
        raise ValueError("axis correlators acquired an imaginary part")
    return corr.real


def _bilinear_kernel(corr: np.ndarray, quantity: str) -> np.ndarray:
    scale, terms = _TERMS[quantity]
    kernel = np.zeros((2, 2))
    for sign, (xa, xb, xc) in terms:
        kernel += sign * (_U[xb] @ corr[xa] @ _U[xc].T)
    return scale * kernel


def _expectation_from_correlators(
    corr: np.ndarray, quantity: str, theta_b: float, theta_c: float
) -> float:
    return _kernel_value(_bilinear_kernel(corr, quantity), theta_b, theta_c)


def _kernel_value(kernel: np.ndarray, theta_b: float, theta_c: float) -> float:
    cb, sb = math.cos(theta_b), math.sin(theta_b)
    cc, sc = math.cos(theta_c), math.sin(theta_c)
    return (
        cb * (kernel[0, 0] * cc + kernel[0, 1] * sc)
        + sb * (kernel[1, 0] * cc + kernel[1, 1] * sc)
    )


def _kernel_grid(kernel: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    u = np.stack([np.cos(thetas), np.sin(thetas)], axis=1)  # (n, 2)
    return u @ kernel @ u.T


@dataclass(frozen=True)
class ViolationReport:
    """Best angles and maximal |expectation| for one Bell quantity.

    ``violation`` is max(max_abs_expectation - threshold, 0); ``best_angles``
    is None for the extended Bloch-direction search, which has no frame angles.
    """

    quantity: str
    best_angles: tuple[float, float] | None
    max_abs_expectation: float
    violation: float


def _golden_max(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Golden-section maximization on [lo, hi]; returns (x, f(x))."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = f(x1)
    x = (a + b) / 2.0
    return x, f(x)


def maximize_violation(
    rho: np.ndarray,
    quantity: str,
    axis_pair_a: str,
    *,
    grid_step: float = GRID_STEP,
    angle_tol: float = ANGLE_TOL,
    extended: bool = False,
    restarts: int = 12,
    seed: int = 7,
) -> ViolationReport:
    """Maximize |<quantity>| over the frame angles (theta_B, theta_C) in [0, 2pi)^2.

    Coarse grid scan (the objective is a low-frequency trigonometric
    polynomial, so the grid cannot skip a basin) followed by alternating
    golden-section refinement of each coordinate; ties on the grid resolve to
    the lexicographically smallest angle pair.  ``extended=True`` instead
    searches arbitrary Bloch directions for all six operators (seesaw with
    random restarts); that path is exploratory and can exceed the restricted
    frame's maximum.
    """
    _check_quantity(quantity)
    if extended:
        return _extended_maximize(rho, quantity, restarts=restarts, seed=seed)
    kernel = _bilinear_kernel(_axis_correlators(rho, axis_pair_a), quantity)

    n = max(2, int(round(2.0 * math.pi / grid_step)))
    thetas = np.arange(n) * (2.0 * math.pi / n)
    grid = np.abs(_kernel_grid(kernel, thetas))
    gmax = float(grid.max())
    # lexicographically smallest among ties (row-major argwhere order)
    candidates = np.argwhere(grid >= gmax - 1e-12 * max(1.0, gmax))
    ib, ic = candidates[0]
    best = (gmax, float(thetas[ib]), float(thetas[ic]))

    def objective(tb: float, tc: float) -> float:
        return abs(_kernel_value(kernel, tb, tc))

    tb, tc = best[1], best[2]
    half = 2.0 * math.pi / n
    for _ in range(50):
        nb, fb = _golden_max(lambda x: objective(x, tc), tb - half, tb + half, angle_tol)
        if fb > best[0]:
            best = (fb, nb, tc)
        nc, fc = _golden_max(lambda x: objective(nb, x), tc - half, tc + half, angle_tol)
        if fc > best[0]:
            best = (fc, nb, nc)
        moved = max(abs(nb - tb), abs(nc - tc))
        tb, tc = nb, nc
        if moved < angle_tol:
            break

    max_abs, tb, tc = best
    angles = (tb % (2.0 * math.pi), tc % (2.0 * math.pi))
    threshold = violation_threshold(quantity)
    return ViolationReport(quantity, angles, max_abs, max(max_abs - threshold, 0.0))


# --- extended search over arbitrary Bloch directions ----------------------------------


def _pauli_correlation_tensor(rho: np.ndarray) -> np.ndarray:
    paulis = (SIGMA_X, SIGMA_Y, SIGMA_Z)
    t = np.empty((3, 3, 3), dtype=float)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                t[i, j, k] = expectation(tensor_product(paulis[i], paulis[j], paulis[k]), rho)
    return t


def _extended_maximize(
    rho: np.ndarray, quantity: str, *, restarts: int, seed: int
) -> ViolationReport:
    tensor = _pauli_correlation_tensor(rho)
    scale, terms = _TERMS[quantity]
    rng = np.random.default_rng(seed)
    best = 0.0

    def term_value(vecs, sign, triple):
        va, vb, vc = (vecs[site][triple[site]] for site in range(3))
        return sign * np.einsum("a,b,c,abc->", va, vb, vc, tensor)

    for _ in range(restarts):
        vecs = [
            [v / np.linalg.norm(v) for v in rng.standard_normal((2, 3))] for _ in range(3)
        ]
        for target in (1.0, -1.0):  # maximize +<B> and -<B>
            value = 0.0
            for _ in range(200):
                # best-response update of each qubit's two directions in turn
                for site in range(3):
                    grads = [np.zeros(3), np.zeros(3)]
                    for sign, triple in terms:
                        others = [vecs[s][triple[s]] for s in range(3)]
                        idx = "abc"[site]
                        sub = "".join("abc"[s] for s in range(3) if s != site)
                        contracted = np.einsum(
                            f"{sub[0]},{sub[1]},abc->{idx}",
                            *(others[s] for s in range(3) if s != site),
                            tensor,
                        )
                        grads[triple[site]] += target * sign * contracted
                    for which in range(2):
                        norm = np.linalg.norm(grads[which])
                        if norm > 1e-14:
                            vecs[site][which] = grads[which] / norm
                new_value = sum(term_value(vecs, sign, triple) for sign, triple in terms)
                if abs(new_value - value) < 1e-12:
                    value = new_value
                    break
                value = new_value
            best = max(best, abs(scale * value))
    threshold = violation_threshold(quantity)
    return ViolationReport(quantity, None, best, max(best - threshold, 0.0))


# --- printed closed forms --------------------------------------------------------------


def _w_elements(rho: np.ndarray, imag_tol: float = 1e-10) -> dict[str, float]:
    """Real parts of the density-matrix elements entering the W-branch forms.

    Keys use 1-based element labels under the |abc> -> 4a+2b+c+1 index map.
    """
    pairs = {
        "11": (0, 0),
        "44": (3, 3),
        "66": (5, 5),
        "77": (6, 6),
        "23": (1, 2),
        "25": (1, 4),
        "35": (2, 4),
        "46": (3, 5),
        "47": (3, 6),
        "67": (5, 6),
    }
    out = {}
    for name, (i, j) in pairs.items():
        v = complex(rho[i, j])
        if abs(v.imag) > imag_tol:
            raise ValueError(f"element {name} has imaginary part {v.imag:g}")
        out[name] = v.real
    return out


def closed_form_expectation(
    state_branch: str,
    quantity: str,
    params: ReservoirParams,
    theta_b: float,
    theta_c: float,
) -> float:
    """Printed closed-form expectation value for the evolved GHZ or W state.

    GHZ-branch forms are explicit in p = exp(-(2*nbar+1)*gamma*t/2); W-branch
    forms are element combinations evaluated on the numerically evolved state.
    Both assume equal damping rates and the branch's measurement axes.

    Raises:
        UnequalRatesError: the three damping rates differ.
    """
    _check_quantity(quantity)
    params.require_equal_rates()
    tbc = theta_b + theta_c
    sin_bc, cos_bc = math.sin(tbc), math.cos(tbc)

    branch = state_branch.lower()
    if branch == "ghz":
        p3 = params.decay_factors()[0] ** 3
        if quantity == "S":
            return 4.0 * p3 * (sin_bc - cos_bc)
        if quantity in ("P1", "P4"):
            return 2.0 * p3 * sin_bc
        if quantity == "P2":
            return -p3 * (2.0 * sin_bc + cos_bc)
        if quantity == "P3":
            return 2.0 * p3 * (sin_bc - cos_bc)
        return -4.0 * p3 * cos_bc  # P5

    if branch != "w":
        raise ValueError(f"state_branch must be 'ghz' or 'w', got {state_branch!r}")

    e = _w_elements(apply_channel(w_state(), params, validate=False))
    diag = e["11"] + e["44"] + e["66"] + e["77"]
    if quantity == "S":
        comb = diag + e["46"] + e["47"] + e["67"] - e["23"] - e["25"] - e["35"]
        return (2.0 * comb - 1.0) * (sin_bc + cos_bc)
    if quantity == "P1":
        return (4.0 * diag - 2.0) * math.cos(theta_b) * math.cos(theta_c) + 4.0 * (
            e["23"] - e["47"]
        ) * math.sin(theta_b) * math.sin(theta_c)
    if quantity == "P2":
        return (
            (e["25"] + e["35"] - e["46"] - e["47"]) * cos_bc
            + (e["25"] - e["35"] + e["46"] - e["47"]) * math.sin(theta_b - theta_c)
            + (e["23"] - e["67"] - diag + 0.5) * (cos_bc - sin_bc)
        )
    if quantity == "P3":
        x_plus = math.sqrt(2.0) * math.sin(theta_b + math.pi / 4.0) * math.cos(theta_c)
        x_minus = math.sqrt(2.0) * math.sin(theta_b - math.pi / 4.0) * math.sin(theta_c)
        return (2.0 * (diag - e["35"] + e["46"]) - 1.0) * x_plus + 4.0 * (
            e["23"] - e["47"]
        ) * x_minus
    if quantity == "P4":
        y_plus = math.sqrt(2.0) * math.sin(theta_c + math.pi / 4.0) * math.cos(theta_b)
        y_minus = math.sqrt(2.0) * math.sin(theta_c - math.pi / 4.0) * math.cos(theta_b)
        return (
            (2.0 * diag - 1.0) * y_plus
            + 2.0 * (e["35"] - e["46"]) * y_minus
            + 4.0 * (e["23"] - e["47"]) * math.sin(theta_b) * math.sin(theta_c)
        )
    comb = diag + e["46"] + e["47"] + e["67"] - e["23"] - e["25"] - e["35"]  # P5
    return (2.0 * comb - 1.0) * sin_bc
