import math

import numpy as np
import pytest

from trithermal.bell import (
    MeasurementFrame,
    build_measurements,
    closed_form_expectation,
    maximize_violation,
    svetlichny_operator,
    violation_threshold,
    wwzb_operator,
)
from trithermal.channel import ReservoirParams, apply_channel
from trithermal.errors import UnequalRatesError
from trithermal.linalg import SIGMA_X, SIGMA_Y, expectation, hermitian_eigenvalues
from trithermal.states import ghz_state, maximally_mixed, w_state

from conftest import random_density_matrix

QUANTITIES = ("S", "P1", "P2", "P3", "P4", "P5")


def frame_operator(quantity, frame):
    return svetlichny_operator(frame) if quantity == "S" else wwzb_operator(quantity, frame)


# --- measurement construction -----------------------------------------------------


def test_zero_rotation_reproduces_axes():
    ma, mpa, mb, mpb, mc, mpc = build_measurements(MeasurementFrame.ghz(0.0, 0.0))
    assert np.array_equal(ma, SIGMA_Y)
    assert np.array_equal(mpa, SIGMA_X)
    assert np.array_equal(mb, SIGMA_Y)
    assert np.array_equal(mpc, SIGMA_X)


def test_quarter_rotation():
    _, _, mb, mpb, _, _ = build_measurements(MeasurementFrame.ghz(math.pi / 2.0, 0.0))
    assert np.allclose(mb, -SIGMA_X, atol=1e-15)
    assert np.allclose(mpb, SIGMA_Y, atol=1e-15)


def test_half_rotation_negates_pair():
    ma, mpa, mb, mpb, _, _ = build_measurements(MeasurementFrame.w(math.pi, 0.0))
    assert np.allclose(mb, -ma, atol=1e-15)
    assert np.allclose(mpb, -mpa, atol=1e-15)


@pytest.mark.parametrize("axis", ["YX", "ZX"])
def test_measurements_are_unit_spin_observables(rng, axis):
    for _ in range(10):
        frame = MeasurementFrame(axis, rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi))
        for op in build_measurements(frame):
            assert np.max(np.abs(op - op.conj().T)) < 1e-15
            assert np.allclose(hermitian_eigenvalues(op), [-1.0, 1.0], atol=1e-12)


def test_frame_rejects_unknown_axes():
    with pytest.raises(ValueError):
        MeasurementFrame("XX", 0.0, 0.0)


def test_wwzb_operator_rejects_s():
    with pytest.raises(ValueError):
        wwzb_operator("S", MeasurementFrame.ghz(0.0, 0.0))


# --- operator-level equality with the printed forms --------------------------------


def test_operators_hermitian(rng):
    frame = MeasurementFrame.ghz(rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi))
    for q in QUANTITIES:
        op = frame_operator(q, frame)
        assert np.max(np.abs(op - op.conj().T)) < 1e-13


def test_ghz_closed_forms_match_operators(rng):
    for _ in range(200):
        nbar, gamma_t = rng.uniform(0, 2), rng.uniform(0, 2)
        tb, tc = rng.uniform(0, 2 * math.pi, 2)
        params = ReservoirParams.symmetric(nbar, gamma_t)
        rho = apply_channel(ghz_state(), params, validate=False)
        frame = MeasurementFrame.ghz(tb, tc)
        for q in QUANTITIES:
            op_value = expectation(frame_operator(q, frame), rho)
            assert abs(op_value - closed_form_expectation("ghz", q, params, tb, tc)) < 1e-10


def test_w_closed_forms_match_operators(rng):
    for _ in range(200):
        nbar, gamma_t = rng.uniform(0, 2), rng.uniform(0, 2)
        tb, tc = rng.uniform(0, 2 * math.pi, 2)
        params = ReservoirParams.symmetric(nbar, gamma_t)
        rho = apply_channel(w_state(), params, validate=False)
        frame = MeasurementFrame.w(tb, tc)
        for q in QUANTITIES:
            op_value = expectation(frame_operator(q, frame), rho)
            assert abs(op_value - closed_form_expectation("w", q, params, tb, tc)) < 1e-10


def test_svetlichny_vanishes_on_maximally_mixed(rng):
    frame = MeasurementFrame.ghz(rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi))
    assert abs(expectation(svetlichny_operator(frame), maximally_mixed())) < 1e-13


def test_quantum_bound_on_random_states(rng):
    bound = 4.0 * math.sqrt(2.0)
    for _ in range(50):
        rho = random_density_matrix(rng)
        frame = MeasurementFrame.ghz(rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi))
        assert abs(expectation(svetlichny_operator(frame), rho)) <= bound + 1e-9


def test_angle_periodicity(rng):
    params = ReservoirParams.symmetric(0.2, 0.4)
    tb, tc = rng.uniform(0, 2 * math.pi, 2)
    for q in QUANTITIES:
        base = closed_form_expectation("ghz", q, params, tb, tc)
        assert abs(closed_form_expectation("ghz", q, params, tb + 2 * math.pi, tc) - base) < 1e-12
        assert abs(closed_form_expectation("ghz", q, params, tb, tc + 2 * math.pi) - base) < 1e-12


def test_closed_form_rejects_unequal_rates():
    with pytest.raises(UnequalRatesError):
        closed_form_expectation("ghz", "S", ReservoirParams(0.0, (1, 2, 1), 0.1), 0.0, 0.0)


# --- maximization -------------------------------------------------------------------


def test_maximize_ghz_initial_svetlichny():
    report = maximize_violation(ghz_state(), "S", "YX")
    assert abs(report.max_abs_expectation - 4.0 * math.sqrt(2.0)) < 1e-10
    tb, tc = report.best_angles
    theta_bc = (tb + tc) % (2.0 * math.pi)
    assert min(abs(theta_bc - 3.0 * math.pi / 4.0), abs(theta_bc - 7.0 * math.pi / 4.0)) < 1e-6
    assert abs(report.violation - (4.0 * math.sqrt(2.0) - 4.0)) < 1e-10


def test_maximize_tie_breaks_lexicographically():
    # the ridge theta_B + theta_C = 3pi/4 starts at the smallest pair (0, 3pi/4)
    report = maximize_violation(ghz_state(), "S", "YX")
    assert abs(report.best_angles[0]) < 1e-7
    assert abs(report.best_angles[1] - 3.0 * math.pi / 4.0) < 1e-7


def test_maximize_dominates_grid(rng):
    rho = apply_channel(ghz_state(), ReservoirParams.symmetric(0.1, 0.2), validate=False)
    for q in ("S", "P2", "P5"):
        report = maximize_violation(rho, q, "YX")
        frame_value = max(
            abs(expectation(frame_operator(q, MeasurementFrame.ghz(tb, tc)), rho))
            for tb in np.arange(0, 2 * math.pi, math.pi / 6)
            for tc in np.arange(0, 2 * math.pi, math.pi / 6)
        )
        assert report.max_abs_expectation >= frame_value - 1e-12


def test_maximize_ghz_decay_laws(rng):
    for _ in range(10):
        nbar, gamma_t = rng.uniform(0, 0.5), rng.uniform(0, 1.0)
        rho = apply_channel(ghz_state(), ReservoirParams.symmetric(nbar, gamma_t), validate=False)
        decay = math.exp(-1.5 * (2.0 * nbar + 1.0) * gamma_t)
        for q, amplitude in (("S", 4 * math.sqrt(2)), ("P2", math.sqrt(5)), ("P3", 2 * math.sqrt(2)), ("P5", 4.0)):
            report = maximize_violation(rho, q, "YX")
            assert abs(report.max_abs_expectation - amplitude * decay) < 1e-7


def test_ghz_p1_never_violates(rng):
    for gamma_t in np.linspace(0.0, 2.0, 9):
        rho = apply_channel(ghz_state(), ReservoirParams.symmetric(0.1, gamma_t), validate=False)
        p_cubed = math.exp(-1.5 * 1.2 * gamma_t)
        report = maximize_violation(rho, "P1", "YX")
        assert report.violation == 0.0
        assert abs(report.max_abs_expectation - 2.0 * p_cubed) < 1e-8


def test_maximize_w_initial_svetlichny():
    report = maximize_violation(w_state(), "S", "ZX")
    assert abs(report.max_abs_expectation - (2.0 + 1.5 * math.sqrt(2.0))) < 1e-10


def test_violation_definition_exact():
    report = maximize_violation(w_state(), "P5", "ZX")
    assert report.violation == max(report.max_abs_expectation - violation_threshold("P5"), 0.0)
    report = maximize_violation(w_state(), "P4", "ZX")
    assert report.violation == 0.0


def test_thresholds():
    assert violation_threshold("S") == 4.0
    for q in ("P1", "P2", "P3", "P4", "P5"):
        assert violation_threshold(q) == 2.0
    with pytest.raises(ValueError):
        violation_threshold("P6")


def test_extended_search_reaches_restricted_maximum():
    restricted = maximize_violation(ghz_state(), "S", "YX")
    extended = maximize_violation(ghz_state(), "S", "YX", extended=True, restarts=8, seed=3)
    assert extended.best_angles is None
    assert extended.max_abs_expectation >= restricted.max_abs_expectation - 1e-9
    assert extended.max_abs_expectation <= 4.0 * math.sqrt(2.0) + 1e-9


def test_extended_search_w_branch():
    restricted = maximize_violation(w_state(), "P5", "ZX")
    extended = maximize_violation(w_state(), "P5", "ZX", extended=True, restarts=8, seed=3)
    # the restricted frame family need not be globally optimal, so only a lower bound holds
    assert extended.max_abs_expectation >= restricted.max_abs_expectation - 1e-9
