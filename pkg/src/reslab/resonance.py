"""Resonance curve, line width, and the scaled boundary-function limits.

For couplings alpha near the critical alpha0 the real part of the boundary
function keeps a simple zero lambda(alpha) near the former embedded
eigenvalue; the line width is

    kappa(alpha) = pi * weight(lambda(alpha)) / ||phi||^2,

with weight(lam) the squared profile modulus.  On the rescaled abscissa
lambda_h(alpha) = lambda(alpha) + h*kappa(alpha) the ratios F1/kappa,
F2/kappa and kappa*F_i/|F|^2 converge to Lorentzian-shaped limits as
alpha -> alpha0; ``scaled_F_limits`` tabulates computed values against the
targets.

Works on any model exposing lambda0, alpha0, phi_norm_sq, weight(lam) and
gamma_weight(lam) (both the 1D profile and the radial 3D profile do).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .errors import ResonanceNotBracketed

#: residual target for the resonance root
ROOT_TOL = 1e-12

#: bracket radius around lambda0 used by the root solve
BRACKET_RADIUS = 0.5


def _f1(model, alpha, lam):
    return 1.0 + alpha * model.gamma_weight(lam)


def solve_resonance_curve(model, alpha: float,
                          bracket_radius: float = BRACKET_RADIUS):
    """Zero of lam -> 1 + alpha*gamma_weight(lam) near lambda0, plus width.

    Returns (lambda_alpha, kappa_alpha).  The zero is bracketed in
    [lambda0 - r, lambda0 + r] and refined (Brent bisection/secant hybrid,
    then secant polish) until |F1| < 1e-12.  Raises ResonanceNotBracketed
    when F1 does not change sign across the bracket.
    """
    lo = model.lambda0 - bracket_radius
    hi = model.lambda0 + bracket_radius
    f_lo = _f1(model, alpha, lo)
    f_hi = _f1(model, alpha, hi)
    if f_lo == 0.0:
        root = lo
    elif f_hi == 0.0:
        root = hi
    elif np.sign(f_lo) == np.sign(f_hi):
        raise ResonanceNotBracketed(
            f"F1(alpha={alpha}, .) has no sign change on "
            f"[{lo:.6g}, {hi:.6g}]; coupling outside the resonance window")
    else:
        root = optimize.brentq(lambda lam: _f1(model, alpha, lam), lo, hi,
                               xtol=1e-15, rtol=8.9e-16, maxiter=200)
    # secant polish in case interpolation noise leaves a residual
    prev = root + 16 * np.finfo(float).eps * max(1.0, abs(root))
    f_root, f_prev = _f1(model, alpha, root), _f1(model, alpha, prev)
    for _ in range(8):
        if abs(f_root) < ROOT_TOL or f_root == f_prev:
            break
        step = f_root * (root - prev) / (f_root - f_prev)
        prev, f_prev = root, f_root
        root = root - step
        f_root = _f1(model, alpha, root)
    kappa = float(np.pi * model.weight(root) / model.phi_norm_sq)
    return float(root), kappa


@dataclass
class ResonanceCurve:
    """lambda(alpha) and kappa(alpha) over an adaptively discovered window."""

    model: object
    alpha_window: tuple
    _cache: dict = field(default_factory=dict, repr=False)

    @classmethod
    def discover(cls, model, initial_radius: float | None = None,
                 growth: float = 1.5, max_radius: float | None = None):
        """Expand the coupling window symmetrically until bracketing fails."""
        alpha0 = model.alpha0
        r = initial_radius if initial_radius is not None else 0.05 * abs(alpha0)
        cap = max_radius if max_radius is not None else 3.0 * abs(alpha0)
        lo_ok = hi_ok = r
        side_ok = {-1: True, +1: True}
        while r < cap and any(side_ok.values()):
            for sign in (-1, +1):
                if not side_ok[sign]:
                    continue
                try:
                    solve_resonance_curve(model, alpha0 + sign * r)
                    if sign < 0:
                        lo_ok = r
                    else:
                        hi_ok = r
                except ResonanceNotBracketed:
                    side_ok[sign] = False
            r *= growth
        return cls(model, (alpha0 - lo_ok, alpha0 + hi_ok))

    def _solve(self, alpha: float):
        if alpha not in self._cache:
            self._cache[alpha] = solve_resonance_curve(self.model, alpha)
        return self._cache[alpha]

    def lambda_of(self, alpha: float) -> float:
        return self._solve(alpha)[0]

    def kappa_of(self, alpha: float) -> float:
        return self._solve(alpha)[1]

    def lambda_h(self, alpha: float, h: float) -> float:
        lam, kappa = self._solve(alpha)
        return lam + h * kappa


def scaled_F_limits(model, h: float, alpha_sequence) -> list:
    """Tabulate the four rescaled boundary-function ratios at lambda_h(alpha).

    Per coupling: F1/kappa, F2/kappa, kappa*F1/|F|^2, kappa*F2/|F|^2 together
    with their limit targets h*a, a, (h/(h^2+1))/a and (1/(h^2+1))/a where
    a = alpha0*||phi||^2.
    """
    a = model.alpha0 * model.phi_norm_sq
    rows = []
    for alpha in alpha_sequence:
        lam, kappa = solve_resonance_curve(model, alpha)
        if kappa == 0.0:
            raise ResonanceNotBracketed(
                "scaled limits need alpha != alpha0 (kappa vanishes)")
        lam_h = lam + h * kappa
        f1 = _f1(model, alpha, lam_h)
        f2 = alpha * np.pi * model.weight(lam_h)
        abs_sq = f1 * f1 + f2 * f2
        rows.append({
            "alpha": float(alpha),
            "h": float(h),
            "lambda_alpha": lam,
            "kappa": kappa,
            "f1_over_kappa": float(f1 / kappa),
            "f2_over_kappa": float(f2 / kappa),
            "kappa_f1_over_absF2": float(kappa * f1 / abs_sq),
            "kappa_f2_over_absF2": float(kappa * f2 / abs_sq),
            "target_f1_over_kappa": float(h * a),
            "target_f2_over_kappa": float(a),
            "target_kappa_f1": float(h / (h ** 2 + 1) / a),
            "target_kappa_f2": float(1.0 / (h ** 2 + 1) / a),
        })
    return rows
