"""Energy evaluation: quadrature routes, closed forms, grids, distortion, duality.

Radial energy (the quantity being minimized, for h = H(t) e^(i theta)):

    E = 2 pi * integral over [1, r] of (a^2 t^2 H'^2 + b^2 H^2) / (t H^(2 lam)) dt.

Closed forms for the solved extremals:

    lam != 1:  E = (2 pi a b / (lam - 1)) (sqrt(1 + alpha/b^2)
                   - R^(1-lam) sqrt(R^(2-2 lam) + alpha/b^2))
    lam  = 1:  E = 2 pi ln R (a^2 ln R / ln r + b^2 ln r / ln R)

The distortion functional K integrates (a^2 rho^2 |grad Theta|^2
+ b^2 |grad rho|^2) / (J |z|^(2 lam)); for any homeomorphism h it equals the
radial energy of the inverse map, K[h] = E[h^(-1)], which inverse_energy
evaluates through an independent root-finding route as a cross-check.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from . import extremal
from .core import AnnulusPair, EnergyParams, ExtremalSolution, PolarField, alpha_lower_bound
from .errors import (
    MissingDerivatives,
    NonPositiveJacobian,
    QuadratureFailure,
    ValidationError,
)

METHODS = ("closed_form", "radial_quadrature", "grid_quadrature")


@dataclass(frozen=True)
class EnergyReport:
    """An energy value, the route that produced it, and an error estimate."""

    value: float
    method: str
    est_error: float

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValidationError(f"unknown method {self.method!r}")
        if not (self.value >= 0.0):
            raise ValidationError(f"energy must be nonnegative, got {self.value}")
        if not (self.est_error >= 0.0):
            raise ValidationError(f"est_error must be nonnegative, got {self.est_error}")

    def as_dict(self) -> dict:
        return {"value": self.value, "method": self.method, "est_error": self.est_error}

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def _certified_quad(f, lo, hi, rel_cap, epsabs=1e-12, epsrel=1e-12):
    """Adaptive quadrature that must certify err <= rel_cap * max(1, |value|)."""
    for limit in (200, 800):
        out = quad(f, lo, hi, epsabs=epsabs, epsrel=epsrel, limit=limit, full_output=1)
        val, err = out[0], out[1]
        if len(out) == 3 and err <= rel_cap * max(1.0, abs(val)):
            return val, err
    raise QuadratureFailure(
        f"estimated error {err:.3e} exceeds cap {rel_cap:.1e} * max(1, |{val:.6g}|)"
    )


def radial_energy(H, Hdot, annuli: AnnulusPair, params: EnergyParams) -> EnergyReport:
    """Adaptive quadrature of the radial energy for profile evaluators H, Hdot."""
    a, b, lam = params.a, params.b, params.lam

    def integrand(x):
        t = math.exp(x)
        h = H(t)
        hd = Hdot(t)
        return (a * a * t * t * hd * hd + b * b * h * h) * math.exp(-2.0 * lam * math.log(h))

    val, err = _certified_quad(integrand, 0.0, math.log(annuli.r), rel_cap=1e-10)
    return EnergyReport(2.0 * math.pi * val, "radial_quadrature", 2.0 * math.pi * err)


def solution_radial_energy(sol: ExtremalSolution) -> EnergyReport:
    """Radial-quadrature energy of a solved extremal (independent of the closed form)."""
    return radial_energy(
        lambda t: extremal.profile(sol, t),
        lambda t: extremal.derivative(sol, t),
        sol.annuli,
        sol.params,
    )


def closed_form_energy(sol: ExtremalSolution) -> EnergyReport:
    """Closed-form energy of a solved extremal; radicands fused at the feasibility boundary."""
    p, ann = sol.params, sol.annuli
    a, b, lam = p.a, p.b, p.lam
    if sol.branch == "lambda_eq_1":
        lnR, lnr = math.log(ann.R), math.log(ann.r)
        value = 2.0 * math.pi * lnR * (a * a * lnR / lnr + b * b * lnr / lnR)
    else:
        b2 = b * b
        am = alpha_lower_bound(ann.R, b, lam)
        if lam > 1.0:
            rad1 = 1.0 + sol.alpha / b2
            rad2 = (sol.alpha - am) / b2
        else:
            rad1 = (sol.alpha - am) / b2
            rad2 = math.exp((2.0 - 2.0 * lam) * math.log(ann.R)) + sol.alpha / b2
        term1 = math.sqrt(max(rad1, 0.0))
        term2 = math.exp((1.0 - lam) * math.log(ann.R)) * math.sqrt(max(rad2, 0.0))
        value = (2.0 * math.pi * a * b / (lam - 1.0)) * (term1 - term2)
    return EnergyReport(value, "closed_form", 4e-16 * abs(value))


_trapz = getattr(np, "trapezoid", None) or np.trapz


def _log_uniform_dx(t: np.ndarray) -> float | None:
    x = np.log(t)
    dx = np.diff(x)
    dx0 = float(np.mean(dx))
    if dx0 > 0.0 and np.max(np.abs(dx - dx0)) <= 1e-9 * dx0:
        return dx0
    return None


def _simpson_uniform(g: np.ndarray, dx: float) -> float:
    total = g[0] + g[-1] + 4.0 * np.sum(g[1:-1:2]) + 2.0 * np.sum(g[2:-1:2])
    return float(total) * dx / 3.0


def _integrate_radially(t: np.ndarray, w: np.ndarray) -> tuple[float, float]:
    """integral of w(t) * t dt over [t0, tN] from samples, with an error estimate.

    Uses composite Simpson in x = ln t when the grid is log-uniform with an
    odd point count (estimate from half-resolution Richardson comparison),
    composite trapezoid otherwise.
    """
    g = w * t * t  # integrand in x: w(e^x) e^(2x)
    dx = _log_uniform_dx(t)
    if dx is not None and t.size % 2 == 1 and t.size >= 5:
        full = _simpson_uniform(g, dx)
        if (t.size - 1) % 4 == 0:
            half = _simpson_uniform(g[::2], 2.0 * dx)
            return full, abs(full - half) / 15.0
        return full, abs(full - float(_trapz(g, dx=dx))) / 3.0
    x = np.log(t)
    full = float(_trapz(g, x))
    half = float(_trapz(g[::2], x[::2]))
    return full, abs(full - half) / 3.0


def _theta_integral(values: np.ndarray, ntheta: int) -> np.ndarray:
    # periodic trapezoid on a uniform theta grid: spectrally accurate
    return (2.0 * math.pi / ntheta) * np.sum(values, axis=1)


def grid_energy(field: PolarField, params: EnergyParams) -> EnergyReport:
    """Combined energy of a sampled field: periodic trapezoid in theta, panels in ln t."""
    if field.hN_values is None or field.hT_values is None:
        raise MissingDerivatives("grid_energy needs hN_values and hT_values samples")
    a, b, lam = params.a, params.b, params.lam
    mod_h = np.abs(field.h_values)
    W = (a * a * np.abs(field.hN_values) ** 2 + b * b * np.abs(field.hT_values) ** 2) / mod_h ** (
        2.0 * lam
    )
    Wint = _theta_integral(W, field.theta_grid.size)
    val, err = _integrate_radially(field.t_grid, Wint)
    return EnergyReport(val, "grid_quadrature", err)


def _grid_distortion(field: PolarField, params: EnergyParams) -> EnergyReport:
    if field.hN_values is None or field.hT_values is None:
        raise MissingDerivatives("distortion_energy on a field needs hN_values and hT_values")
    a, b, lam = params.a, params.b, params.lam
    h = field.h_values
    rho = np.abs(h)
    unit = np.conj(h) / rho
    dN = unit * field.hN_values  # rho_t + i rho Theta_t
    dT = unit * field.hT_values  # rho_theta / t + i rho Theta_theta / t
    rho_t = dN.real
    rho_Theta_t = dN.imag
    rho_th_over_t = dT.real
    rho_Theta_th_over_t = dT.imag
    jac = rho_t * rho_Theta_th_over_t - rho_Theta_t * rho_th_over_t
    if np.any(jac <= 0.0):
        raise NonPositiveJacobian("Jacobian must be strictly positive on the grid")
    grad_rho_sq = rho_t**2 + rho_th_over_t**2
    rho_sq_grad_Theta_sq = rho_Theta_t**2 + rho_Theta_th_over_t**2
    t_pow = np.exp((2.0 * lam) * np.log(field.t_grid))[:, None]
    W = (a * a * rho_sq_grad_Theta_sq + b * b * grad_rho_sq) / (jac * t_pow)
    Wint = _theta_integral(W, field.theta_grid.size)
    val, err = _integrate_radially(field.t_grid, Wint)
    return EnergyReport(val, "grid_quadrature", err)


def _radial_distortion(sol: ExtremalSolution) -> EnergyReport:
    p, ann = sol.params, sol.annuli
    a, b, lam = p.a, p.b, p.lam

    def integrand(x):
        t = math.exp(x)
        h = extremal.profile(sol, t)
        hd = extremal.derivative(sol, t)
        # (a^2 H^2/t^2 + b^2 H'^2) * t^2 / (H' H t^(2 lam)), in x = ln t
        return (a * a * h * h / (t * t) + b * b * hd * hd) * math.exp(
            (2.0 - 2.0 * lam) * math.log(t)
        ) * t / (hd * h)

    val, err = _certified_quad(integrand, 0.0, math.log(ann.r), rel_cap=1e-8, epsabs=1e-11, epsrel=1e-11)
    return EnergyReport(2.0 * math.pi * val, "radial_quadrature", 2.0 * math.pi * err)


def distortion_energy(obj, params: EnergyParams | None = None) -> EnergyReport:
    """Distortion functional K; accepts a solved extremal or a sampled PolarField."""
    if isinstance(obj, ExtremalSolution):
        return _radial_distortion(obj)
    if isinstance(obj, PolarField):
        if params is None:
            raise ValidationError("distortion_energy on a PolarField requires params")
        return _grid_distortion(obj, params)
    raise ValidationError(f"unsupported argument type {type(obj).__name__}")


def inverse_energy(sol: ExtremalSolution) -> EnergyReport:
    """Radial energy of the inverse map, with T = H^(-1) found by root bracketing.

    E[h^(-1)] = 2 pi * integral over [1, R] of
                (a^2 s^2 T'(s)^2 + b^2 T(s)^2) / (s T(s)^(2 lam)) ds,
    T'(s) = 1 / H'(T(s)).
    """
    p, ann = sol.params, sol.annuli
    a, b, lam = p.a, p.b, p.lam

    def integrand(xs):
        s = math.exp(xs)
        T = extremal.inverse_profile(sol, s)
        Td = 1.0 / extremal.derivative(sol, T)
        return (a * a * s * s * Td * Td + b * b * T * T) * math.exp(-2.0 * lam * math.log(T))

    val, err = _certified_quad(integrand, 0.0, math.log(ann.R), rel_cap=1e-9, epsabs=1e-11, epsrel=1e-11)
    return EnergyReport(2.0 * math.pi * val, "radial_quadrature", 2.0 * math.pi * err)


def radial_polar_field(
    sol: ExtremalSolution, beta: float = 0.0, nt: int = 513, ntheta: int = 64
) -> PolarField:
    """Sample h(z) = H(t) e^(i (theta + beta)) and its derivatives on a polar grid."""
    t = extremal.log_grid(sol.annuli.r, nt)
    theta = 2.0 * math.pi * np.arange(ntheta) / ntheta
    H = extremal.profile(sol, t)
    Hd = extremal.derivative(sol, t)
    phase = np.exp(1j * (theta[None, :] + beta))
    return PolarField(
        t_grid=t,
        theta_grid=theta,
        h_values=H[:, None] * phase,
        hN_values=Hd[:, None] * phase,
        hT_values=1j * (H / t)[:, None] * phase,
    )
