"""Resonance-curve location, width scaling, and rescaled boundary limits."""

import numpy as np
import pytest

from reslab import resonance
from reslab.errors import ResonanceNotBracketed


def test_curve_at_critical_coupling(p1):
    lam, kappa = resonance.solve_resonance_curve(p1, p1.alpha0)
    assert abs(lam - p1.lambda0) < 1e-8
    assert abs(kappa) < 1e-12


def test_lambda_slope_at_critical_coupling(p1):
    # lambda'(alpha0) = 1/(alpha0^2 ||phi||^2) = 2/3 for P1.
    h = 1e-4
    hi, _ = resonance.solve_resonance_curve(p1, p1.alpha0 + h)
    lo, _ = resonance.solve_resonance_curve(p1, p1.alpha0 - h)
    slope = (hi - lo) / (2 * h)
    assert slope == pytest.approx(1.0 / (p1.alpha0 ** 2 * p1.phi_norm_sq), rel=1e-5)
    assert slope == pytest.approx(2.0 / 3.0, rel=1e-5)


def test_root_residual_along_sweep(p1):
    for d in np.geomspace(1e-4, 0.3, 12):
        for sign in (-1, +1):
            alpha = p1.alpha0 + sign * d
            lam, kappa = resonance.solve_resonance_curve(p1, alpha)
            assert abs(1.0 + alpha * p1.gamma_weight(lam)) < 1e-10
            assert kappa > 0.0
            assert abs(lam - p1.lambda0) < 2.0 * abs(p1.alpha0 - alpha)


def test_width_quadratic_scaling(p1):
    # kappa(alpha)/(alpha-alpha0)^2 stays bounded and stabilizes for order 1.
    ratios = [resonance.solve_resonance_curve(p1, p1.alpha0 + d)[1] / d ** 2
              for d in (1e-1, 1e-2, 1e-3)]
    assert max(ratios) / min(ratios) < 1.5
    assert ratios[1] == pytest.approx(ratios[2], rel=0.05)


def test_width_order4_scaling(p1_order2):
    # Order-2 vanishing: kappa <= C |alpha-alpha0|^4.
    ratios = [resonance.solve_resonance_curve(p1_order2, p1_order2.alpha0 + d)[1]
              / d ** 4 for d in (1e-1, 1e-2, 1e-3)]
    assert max(ratios) / min(ratios) < 1.5


def test_not_bracketed_outside_window(p1):
    with pytest.raises(ResonanceNotBracketed):
        resonance.solve_resonance_curve(p1, 0.0)


def test_window_discovery(p1):
    curve = resonance.ResonanceCurve.discover(p1)
    lo, hi = curve.alpha_window
    assert lo < p1.alpha0 < hi
    # endpoints solve; the curve caches and is consistent with the direct op
    assert curve.lambda_of(p1.alpha0 + 0.01) == \
        resonance.solve_resonance_curve(p1, p1.alpha0 + 0.01)[0]
    assert curve.lambda_h(p1.alpha0 + 0.01, 2.0) == pytest.approx(
        curve.lambda_of(p1.alpha0 + 0.01) + 2.0 * curve.kappa_of(p1.alpha0 + 0.01))


@pytest.mark.parametrize("h", [-2.0, -1.0, 0.0, 1.0, 2.0])
def test_scaled_limits_converge_monotonically(p1, h):
    detunings = [1e-1, 1e-2, 1e-3]
    rows = resonance.scaled_F_limits(p1, h, [p1.alpha0 + d for d in detunings])
    for key, target_key in [
        ("f1_over_kappa", "target_f1_over_kappa"),
        ("f2_over_kappa", "target_f2_over_kappa"),
        ("kappa_f1_over_absF2", "target_kappa_f1"),
        ("kappa_f2_over_absF2", "target_kappa_f2"),
    ]:
        errs = [abs(r[key] - r[target_key]) for r in rows]
        # strictly decreasing, except once the target is hit at roundoff level
        for a, b in zip(errs, errs[1:]):
            assert b < a or b < 1e-10


def test_scaled_limit_values_p1(p1):
    # P1: alpha0*||phi||^2 = 1, so at h=0 F2/kappa -> 1 and kappa*F1/|F|^2 -> 0;
    # at h=1 both kappa*F_i/|F|^2 -> 1/2.
    alpha = p1.alpha0 + 1e-3
    row0 = resonance.scaled_F_limits(p1, 0.0, [alpha])[0]
    assert row0["target_f2_over_kappa"] == pytest.approx(1.0, abs=1e-9)
    assert abs(row0["f1_over_kappa"]) < 1e-2
    assert row0["f2_over_kappa"] == pytest.approx(1.0, abs=1e-2)
    assert abs(row0["kappa_f1_over_absF2"]) < 1e-3

    row1 = resonance.scaled_F_limits(p1, 1.0, [alpha])[0]
    assert row1["kappa_f1_over_absF2"] == pytest.approx(0.5, abs=1e-2)
    assert row1["kappa_f2_over_absF2"] == pytest.approx(0.5, abs=1e-2)
