"""Closed-form radial extremals and their evaluators.

For lam != 1 the extremal profile with first-integral constant alpha is

    H(t) = [ 2 (1 + s0) ]^(1/(lam-1)) * t^(b/a)
           / [ (1 + s0)^2 - t^(2(lam-1) b/a) alpha/b^2 ]^(1/(lam-1)),
    s0 = sqrt(1 + alpha/b^2),

evaluated here in the log domain as
H = exp( (ln D(1) - ln D(t)) / (lam - 1) + (b/a) ln t ) with
D(t) = (1+s0)^2 - t^(2(lam-1) b/a) alpha/b^2, which pins H(1) = 1 exactly
and reduces bit-exactly to the power map t^(b/a) at alpha = 0.  At lam = 1
the extremal is H = t^(ln R / ln r).  The derivative uses the first
integral: H'(t) = sqrt(alpha H^(2 lam) + b^2 H^2) / (a t).
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .alpha import alpha_for_lambda1, solve_alpha
from .core import (
    BRANCH_GENERIC,
    BRANCH_LOG,
    LAMBDA_ONE_WINDOW,
    AnnulusPair,
    EnergyParams,
    ExtremalSolution,
    RadialProfile,
    validate,
)
from .errors import DegenerateDenominator, OutOfDomain, OutOfRange, QuadratureFailure

#: Relative slack accepted when checking t against [1, r] or rho against [1, R].
RANGE_SLACK = 1e-9


def solve_extremal(annuli: AnnulusPair, params: EnergyParams, tol: float = 1e-12) -> ExtremalSolution:
    """Solve for alpha and assemble the extremal solution object.

    lam = 1 must be passed exactly; values with 0 < |lam - 1| < 1e-9 are
    refused rather than silently evaluated next to the removable singularity.
    """
    annuli, params = validate(annuli, params)
    if params.is_lambda_one:
        return ExtremalSolution(
            alpha=alpha_for_lambda1(annuli, params),
            params=params,
            annuli=annuli,
            branch=BRANCH_LOG,
        )
    if abs(params.lam - 1.0) < LAMBDA_ONE_WINDOW:
        raise OutOfDomain(
            f"lambda={params.lam} lies within {LAMBDA_ONE_WINDOW} of 1; "
            "pass lambda=1 exactly to select the logarithmic branch"
        )
    alpha = solve_alpha(annuli, params, tol=tol)
    return ExtremalSolution(alpha=alpha, params=params, annuli=annuli, branch=BRANCH_GENERIC)


def _check_t_range(sol: ExtremalSolution, t: np.ndarray) -> np.ndarray:
    r = sol.annuli.r
    slack = RANGE_SLACK * r
    if np.any(t < 1.0 - slack) or np.any(t > r + slack):
        raise OutOfRange(f"t outside the domain annulus [1, {r}]")
    return np.clip(t, 1.0, r)


def _eval(sol, t, fn):
    arr = np.asarray(t, dtype=float)
    scalar = arr.ndim == 0
    out = fn(sol, np.atleast_1d(arr))
    return float(out[0]) if scalar else out


def _profile_arr(sol: ExtremalSolution, t: np.ndarray) -> np.ndarray:
    t = _check_t_range(sol, t)
    p, ann = sol.params, sol.annuli
    lt = np.log(t)
    if sol.branch == BRANCH_LOG:
        gamma = math.log(ann.R) / math.log(ann.r)
        return np.exp(gamma * lt)
    a, b, lam = p.a, p.b, p.lam
    aob2 = sol.alpha / (b * b)
    s0 = 1.0 + math.sqrt(max(1.0 + aob2, 0.0))
    pw = b / a
    c2 = np.exp((2.0 * (lam - 1.0) * pw) * lt)
    D = s0 * s0 - c2 * aob2
    if np.any(D <= 0.0):
        raise DegenerateDenominator("profile denominator lost positivity (inadmissible alpha)")
    lnD1 = math.log(s0 * s0 - 1.0 * aob2)
    return np.exp((lnD1 - np.log(D)) / (lam - 1.0) + pw * lt)


def profile(sol: ExtremalSolution, t):
    """H(t), the extremal radial profile; H(1) = 1 exactly."""
    return _eval(sol, t, _profile_arr)


def _derivative_arr(sol: ExtremalSolution, t: np.ndarray) -> np.ndarray:
    t = _check_t_range(sol, t)
    p = sol.params
    y = _profile_arr(sol, t)
    # alpha y^(2 lam) + b^2 y^2 = y^2 (b^2 + alpha y^(2 lam - 2)); vanishes only
    # at the feasibility boundary, where the derivative is legitimately 0.
    rad = y * y * (p.b * p.b + sol.alpha * np.exp((2.0 * p.lam - 2.0) * np.log(y)))
    return np.sqrt(np.maximum(rad, 0.0)) / (p.a * t)


def derivative(sol: ExtremalSolution, t):
    """H'(t), from the first integral; strictly positive off the feasibility boundary."""
    return _eval(sol, t, _derivative_arr)


def _second_derivative_arr(sol: ExtremalSolution, t: np.ndarray) -> np.ndarray:
    t = _check_t_range(sol, t)
    p = sol.params
    y = _profile_arr(sol, t)
    zeta = t * _derivative_arr(sol, t)
    a2 = p.a * p.a
    ypp = (p.lam * sol.alpha * np.exp((2.0 * p.lam - 1.0) * np.log(y)) + p.b * p.b * y) / a2
    return (ypp - zeta) / (t * t)


def second_derivative(sol: ExtremalSolution, t):
    """H''(t), by the chain rule through x = ln t (no finite differences)."""
    return _eval(sol, t, _second_derivative_arr)


def t_of_y(sol: ExtremalSolution, y: float) -> float:
    """Invert the profile by the quadrature t = exp(integral_1^y a ds / sqrt(alpha s^(2 lam) + b^2 s^2)).

    Independent of the closed-form profile; used as a cross-check route.
    """
    p, ann = sol.params, sol.annuli
    slack = RANGE_SLACK * ann.R
    if y < 1.0 - slack or y > ann.R + slack:
        raise OutOfRange(f"y outside the target annulus [1, {ann.R}]")
    y = min(max(y, 1.0), ann.R)
    if y == 1.0:
        return 1.0
    a, b, lam, alpha = p.a, p.b, p.lam, sol.alpha

    def integrand(s):
        return a / (s * math.sqrt(max(b * b + alpha * math.exp((2.0 * lam - 2.0) * math.log(s)), 0.0)))

    val, err = quad(integrand, 1.0, y, epsabs=1e-13, epsrel=1e-13, limit=400)
    if err > 1e-9 * max(1.0, abs(val)):
        raise QuadratureFailure(f"t_of_y quadrature error {err:.3e} too large")
    return math.exp(val)


def inverse_profile(sol: ExtremalSolution, rho: float) -> float:
    """H^(-1)(rho) by monotone root bracketing on [1, r] (one code path for all branches)."""
    ann = sol.annuli
    slack = RANGE_SLACK * ann.R
    if rho < 1.0 - slack or rho > ann.R + slack:
        raise OutOfRange(f"rho outside the target annulus [1, {ann.R}]")
    rho = min(max(rho, 1.0), ann.R)
    if rho == 1.0:
        return 1.0
    hi_val = profile(sol, ann.r)
    if rho >= hi_val:
        return ann.r
    return float(brentq(lambda t: profile(sol, t) - rho, 1.0, ann.r, xtol=1e-15, rtol=8.9e-16))


def full_map(sol: ExtremalSolution, beta: float = 0.0):
    """The planar map h(z) = H(|z|) e^(i (arg z + beta)) as a callable on complex z."""

    def h(z):
        z_arr = np.asarray(z, dtype=complex)
        scalar = z_arr.ndim == 0
        z1 = np.atleast_1d(z_arr)
        t = np.abs(z1)
        H = _profile_arr(sol, t)
        w = H * np.exp(1j * (np.angle(z1) + beta))
        return complex(w[0]) if scalar else w

    return h


def sample_profile(sol: ExtremalSolution, n: int = 513) -> RadialProfile:
    """Sample the profile on the default log-spaced grid (endpoints exact)."""
    t = log_grid(sol.annuli.r, n)
    return RadialProfile(t_grid=t, H_values=_profile_arr(sol, t))


def log_grid(r: float, n: int) -> np.ndarray:
    """n log-spaced points on [1, r] with both endpoints exact."""
    if n < 2:
        raise ValueError("grid needs at least 2 points")
    t = np.exp(np.linspace(0.0, math.log(r), n))
    t[0] = 1.0
    t[-1] = r
    return t


def write_profile_csv(sol: ExtremalSolution, path: str, n: int = 513) -> None:
    """Write t, H, Hdot samples with 17 significant digits."""
    t = log_grid(sol.annuli.r, n)
    H = _profile_arr(sol, t)
    Hd = _derivative_arr(sol, t)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("t,H,Hdot\n")
        for ti, hi, di in zip(t, H, Hd):
            fh.write(f"{ti:.17g},{hi:.17g},{di:.17g}\n")
