"""Rank-one perturbations of multiplication by x on the line.

The model is H = M_x + alpha <., u> u with a unit profile u that vanishes
at exactly one point lambda0.  At the critical coupling
alpha0 = -1/gamma(|u|^2, lambda0) the point lambda0 becomes an embedded
eigenvalue with eigenvector phi = u/(x - lambda0); for every other coupling
the spectrum is purely absolutely continuous and the eigenvalue dissolves
into a resonance.

Profiles are drawn from the Hermite-Gaussian family

    u(x) = c * (x - lambda0)^n * exp(-(x - center)^2 / 2),

which gives closed-form constants for n = 1 and a tunable vanishing order.
The boundary function F(alpha, lam) = F1 + i F2 with
F1 = 1 + alpha*gamma(|u|^2, lam) and F2 = alpha*pi*|u(lam)|^2 drives all
downstream resonance, density and scattering formulas.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import pv
from .errors import (
    DegenerateProfile,
    EvaluationWindowError,
    PreconditionError,
    SingularBoundaryPoint,
)

#: boundary-function magnitude below which a point counts as singular
F_SINGULAR_TOL = 1e-10

#: tolerance on the model invariants checked at construction
MODEL_TOL = 1e-8


def inner_product(f: pv.SampledFunction, g: pv.SampledFunction) -> complex:
    """<f, g> = int f(x) conj(g(x)) dx by the grid rectangle rule."""
    if f.grid != g.grid:
        raise PreconditionError("inner product requires matching grids")
    return complex(f.grid.spacing * np.sum(f.values * np.conj(g.values)))


@dataclass
class Profile1D:
    """Hermite-Gaussian perturbation profile with its eigenvalue data.

    Carries the sampled profile u, the vanishing point lambda0 of order
    ``order``, the critical coupling alpha0, the eigenvector phi of the
    critical operator, and the precomputed principal value of |u|^2 used by
    every boundary-value formula.
    """

    u: pv.SampledFunction
    lambda0: float
    order: int
    center: float
    scale: float
    norm_check: float
    alpha0: float
    phi: pv.SampledFunction
    phi_norm_sq: float
    gamma_u2: pv.PrincipalValueResult
    _gamma_u2_prime: pv.PrincipalValueResult | None = field(default=None, repr=False)

    @property
    def grid(self) -> pv.UniformGrid:
        return self.u.grid

    # -- analytic evaluations (exact for the Hermite-Gaussian family) -------

    def u_at(self, x):
        x = np.asarray(x, dtype=float)
        return self.scale * (x - self.lambda0) ** self.order * np.exp(
            -((x - self.center) ** 2) / 2.0)

    def weight(self, lam):
        """|u(lam)|^2, evaluated in closed form."""
        lam = np.asarray(lam, dtype=float)
        return self.scale ** 2 * (lam - self.lambda0) ** (2 * self.order) * np.exp(
            -((lam - self.center) ** 2))

    def weight_prime(self, lam):
        """d/dlam |u(lam)|^2 in closed form."""
        lam = np.asarray(lam, dtype=float)
        d = lam - self.lambda0
        return self.scale ** 2 * np.exp(-((lam - self.center) ** 2)) * (
            2 * self.order * d ** (2 * self.order - 1)
            - 2 * (lam - self.center) * d ** (2 * self.order))

    # -- interpolated principal-value data -----------------------------------

    def gamma_weight(self, lam):
        """gamma(|u|^2, lam), interpolated from the precomputed grid values."""
        return np.real(self.gamma_u2.at(lam))

    def gamma_weight_prime(self, lam):
        """gamma((|u|^2)', lam) = d/dlam gamma(|u|^2, lam)."""
        if self._gamma_u2_prime is None:
            sampled = pv.SampledFunction(self.grid, self.weight_prime(self.grid.nodes))
            self._gamma_u2_prime = pv.principal_value(sampled)
        return np.real(self._gamma_u2_prime.at(lam))

    def export_csv(self, path):
        """Dump the sampled profile as x, re, im rows."""
        self.u.to_csv(path)


def build_hermite_profile(lambda0: float, order: int = 1, center: float = 0.0,
                          grid: pv.UniformGrid | None = None) -> Profile1D:
    """Construct the normalized profile c*(x-lambda0)^order * exp(-(x-center)^2/2).

    The critical coupling is derived from the vanishing point as
    alpha0 = -1/gamma(|u|^2, lambda0), which makes the embedded-eigenvalue
    conditions hold exactly.  Raises DegenerateProfile when that principal
    value vanishes (no finite critical coupling; e.g. lambda0 = center with
    order 1, by odd symmetry).
    """
    if order < 1:
        raise PreconditionError("vanishing order must be a positive integer")
    grid = grid or pv.default_grid()
    x = grid.nodes
    raw = (x - lambda0) ** order * np.exp(-((x - center) ** 2) / 2.0)
    norm = np.sqrt(grid.spacing * np.sum(raw ** 2))
    scale = 1.0 / norm
    u = pv.SampledFunction(grid, scale * raw)

    u2 = pv.SampledFunction(grid, np.abs(u.values) ** 2)
    gamma_u2 = pv.principal_value(u2)
    gamma0 = float(np.real(gamma_u2.at(lambda0)))
    if abs(gamma0) < 1e-10:
        raise DegenerateProfile(
            f"gamma(|u|^2, {lambda0}) = {gamma0:.2e}; no finite critical coupling"
        )
    alpha0 = -1.0 / gamma0

    phi = pv.divided_difference(u, lambda0)
    phi_norm_sq = float(np.trapezoid(np.abs(phi.values) ** 2, dx=grid.spacing))

    profile = Profile1D(
        u=u, lambda0=lambda0, order=order, center=center, scale=scale,
        norm_check=u.norm_l2(), alpha0=alpha0, phi=phi,
        phi_norm_sq=phi_norm_sq, gamma_u2=gamma_u2,
    )
    _check_profile_invariants(profile)
    return profile


def _check_profile_invariants(profile: Profile1D):
    if abs(profile.norm_check - 1.0) > MODEL_TOL:
        raise PreconditionError(f"profile norm {profile.norm_check} is not 1")
    if abs(profile.u.at(profile.lambda0)) > MODEL_TOL:
        raise PreconditionError("profile does not vanish at lambda0")
    # modulus scan: no second zero away from lambda0 where the envelope is alive
    x = profile.grid.nodes
    live = np.abs(x - profile.center) < 25.0
    away = live & (np.abs(x - profile.lambda0) > 3 * profile.grid.spacing)
    if np.any(np.abs(profile.u.values[away]) == 0.0):
        raise PreconditionError("profile vanishes away from lambda0")
    resid = 1.0 + profile.alpha0 * profile.gamma_weight(profile.lambda0)
    if abs(resid) > MODEL_TOL:
        raise PreconditionError(f"critical-coupling identity violated: {resid:.2e}")
    independent = pv.pv_derivative_at_zero(profile.u, profile.lambda0)
    if abs(independent - profile.phi_norm_sq) > MODEL_TOL * max(1.0, independent):
        raise PreconditionError("phi norm disagrees with pv slope at lambda0")


def profile_from_spec(spec: dict | str) -> Profile1D:
    """Build a profile from the model-spec JSON schema.

    Schema: {"family": "hermite", "lambda0": ..., "n": ..., "center": ...,
             "grid": {"L": ..., "N": ...}}
    """
    if isinstance(spec, str):
        spec = json.loads(spec)
    family = spec.get("family")
    if family != "hermite":
        raise PreconditionError(f"unknown 1d profile family: {family!r}")
    gspec = spec.get("grid", {})
    grid = pv.UniformGrid(float(gspec.get("L", pv.DEFAULT_HALF_WIDTH)),
                          int(gspec.get("N", pv.DEFAULT_POINT_COUNT)))
    return build_hermite_profile(float(spec["lambda0"]), int(spec.get("n", 1)),
                                 float(spec.get("center", 0.0)), grid)


@dataclass
class BoundaryFunction:
    """F(alpha, lam) = 1 + alpha*<R0(lam+i0)u, u> split into real/imag parts."""

    profile: Profile1D

    def f1(self, alpha, lam):
        return 1.0 + alpha * self.profile.gamma_weight(lam)

    def f2(self, alpha, lam):
        return alpha * np.pi * self.profile.weight(lam)

    def __call__(self, alpha, lam):
        return self.f1(alpha, lam) + 1j * self.f2(alpha, lam)


def eval_F(profile: Profile1D, alpha: float, lam):
    """Boundary function F(alpha, lam) = F1 + i F2."""
    bf = BoundaryFunction(profile)
    return bf(alpha, lam)


def resolvent_boundary_matrix_element(profile: Profile1D, alpha: float,
                                      lam: float, v: pv.SampledFunction,
                                      w: pv.SampledFunction,
                                      side: int = +1) -> complex:
    """Boundary value of <R_alpha(lam +- i0) v, w> via the rank-one update.

    Uses <R0(lam +- i0) a, b> = gamma(a conj b, lam) +- i pi a(lam) conj(b(lam))
    for each free-resolvent element and divides by 1 + alpha <R0 u, u>.
    Raises SingularBoundaryPoint when the denominator falls below 1e-10
    (the point lies on the exceptional set).
    """
    if abs(lam) > profile.grid.safe_window:
        raise EvaluationWindowError(
            f"lambda = {lam} outside safe window +-{profile.grid.safe_window}")
    u = profile.u
    r0_vw = pv.plemelj_boundary_value(v * w.conjugate(), lam, side)
    r0_vu = pv.plemelj_boundary_value(v * u.conjugate(), lam, side)
    r0_uw = pv.plemelj_boundary_value(u * w.conjugate(), lam, side)
    r0_uu = pv.plemelj_boundary_value(u * u.conjugate(), lam, side)
    denom = 1.0 + alpha * r0_uu
    if abs(denom) < F_SINGULAR_TOL:
        raise SingularBoundaryPoint(
            f"F(alpha={alpha}, lambda={lam}) = {denom:.2e}; "
            "boundary value does not exist")
    return complex(r0_vw - alpha * r0_vu * r0_uw / denom)


@dataclass(frozen=True)
class EigenpairReport:
    """Residual diagnostics for the embedded eigenpair."""

    alpha: float
    residual_rel: float
    phi_u_inner: complex
    gamma_at_lambda0: float

    @property
    def inner_product_error(self) -> float:
        return abs(self.phi_u_inner - self.gamma_at_lambda0)


def verify_eigenpair(profile: Profile1D, alpha: float | None = None) -> EigenpairReport:
    """Residual of (M_x - lambda0) phi + alpha <phi, u> u on the grid.

    At alpha = alpha0 the residual vanishes (phi is the embedded
    eigenvector); for shifted couplings it grows linearly in the shift.
    Also reports <phi, u> against gamma(|u|^2, lambda0), which the model
    identities force to coincide with -1/alpha0.
    """
    if alpha is None:
        alpha = profile.alpha0
    x = profile.grid.nodes
    phi_u = inner_product(profile.phi, profile.u)
    residual = (x - profile.lambda0) * profile.phi.values \
        + alpha * phi_u * profile.u.values
    rel = float(np.sqrt(profile.grid.spacing * np.sum(np.abs(residual) ** 2))
                / np.sqrt(profile.phi_norm_sq))
    return EigenpairReport(
        alpha=float(alpha),
        residual_rel=rel,
        phi_u_inner=phi_u,
        gamma_at_lambda0=float(profile.gamma_weight(profile.lambda0)),
    )
