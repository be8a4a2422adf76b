"""Solving for the first-integral constant alpha.

For lam != 1 the outer radius reached by the radial extremal with constant
alpha is the strictly decreasing map

    phi(alpha) = [ R^(lam-1) (1 + sqrt(1 + alpha/b^2))
                   / (1 + sqrt(1 + R^(2 lam - 2) alpha/b^2)) ]^((1/(lam-1)) (a/b)),

defined for alpha >= alpha_min (see core.alpha_lower_bound), with
phi(alpha_min) equal to the Nitsche-type bound and phi(0) = R^(a/b).
solve_alpha inverts phi(alpha) = r by bracketed bisection.  At lam = 1 the
extremal is H = t^(ln R / ln r) and alpha = a^2 (ln R/ln r)^2 - b^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import AnnulusPair, EnergyParams, alpha_lower_bound, validate
from .errors import Infeasible, LambdaOne, NoConvergence, OutOfDomain
from .nitsche import is_feasible

#: Default residual tolerance factor: |phi(alpha) - r| <= ALPHA_TOL * max(1, r).
ALPHA_TOL = 1e-12
#: Bisection iteration cap.
MAX_BISECT = 200
#: Radicands in [-RADICAND_CLAMP, 0) are treated as exact zeros.
RADICAND_CLAMP = 1e-14


def _clamped_sqrt(radicand: float, what: str) -> float:
    if radicand < 0.0:
        if radicand >= -RADICAND_CLAMP:
            return 0.0
        raise OutOfDomain(f"{what} radicand is negative ({radicand:.3e}): alpha below admissible range")
    return math.sqrt(radicand)


def phi(alpha: float, R: float, params: EnergyParams) -> float:
    """Outer radius reached for first-integral constant alpha (lam != 1).

    Radicands that vanish at alpha_min are evaluated in the fused form
    (alpha - alpha_min) * scale so the boundary value is exact; tiny negative
    values above -1e-14 are clamped to zero.
    """
    if params.is_lambda_one:
        raise LambdaOne("phi is undefined at lambda = 1; use alpha_for_lambda1")
    a, b, lam = params.a, params.b, params.lam
    b2 = b * b
    am = alpha_lower_bound(R, b, lam)
    if alpha < am - max(RADICAND_CLAMP, 1e-12 * abs(am)):
        raise OutOfDomain(f"alpha={alpha} below admissible lower bound {am}")
    try:
        r_pow = math.exp((2.0 * lam - 2.0) * math.log(R))  # R^(2 lam - 2)
    except OverflowError as exc:
        raise OutOfDomain(f"R^(2 lam - 2) overflows for R={R}, lam={lam}") from exc
    if lam > 1.0:
        rad_lo = 1.0 + alpha / b2
        rad_hi = (alpha - am) * r_pow / b2
    else:
        rad_lo = (alpha - am) / b2
        rad_hi = 1.0 + r_pow * alpha / b2
    s_lo = _clamped_sqrt(rad_lo, "inner")
    s_hi = _clamped_sqrt(rad_hi, "outer")
    log_phi = (a / b) * (math.log(R) + (math.log1p(s_lo) - math.log1p(s_hi)) / (lam - 1.0))
    try:
        return math.exp(log_phi)
    except OverflowError:
        return math.inf


@dataclass(frozen=True)
class AlphaBracket:
    """A bisection bracket [lo, hi] with phi(lo) >= r >= phi(hi)."""

    lo: float
    hi: float


def bracket_alpha(annuli: AnnulusPair, params: EnergyParams) -> AlphaBracket:
    """Bracket the root of phi(alpha) = r, growing the upper end by doubling."""
    r, R = annuli.r, annuli.R
    am = alpha_lower_bound(R, params.b, params.lam)
    hi = max(0.0, am + 1.0)
    offset = 1.0
    for _ in range(MAX_BISECT):
        if phi(hi, R, params) <= r:
            return AlphaBracket(am, hi)
        hi += offset
        offset *= 2.0
    raise NoConvergence(f"failed to bracket alpha for r={r}, R={R} within {MAX_BISECT} doublings")


def solve_alpha(
    annuli: AnnulusPair,
    params: EnergyParams,
    tol: float = ALPHA_TOL,
    max_iter: int = MAX_BISECT,
) -> float:
    """Solve phi(alpha) = r by bisection (lam != 1).

    Returns alpha with |phi(alpha) - r| <= tol * max(1, r); the bisection
    keeps halving to the floating-point resolution of the bracket and
    returns the best iterate, so the residual is typically near machine
    level.  Exactly-boundary configurations (r == bound) return alpha_min.
    """
    annuli, params = validate(annuli, params)
    if params.is_lambda_one:
        raise LambdaOne("solve_alpha requires lambda != 1; use alpha_for_lambda1")
    report = is_feasible(annuli, params)
    if not report.feasible:
        raise Infeasible(
            f"r={annuli.r} exceeds the feasibility bound {report.bound} "
            f"(R={annuli.R}, a={params.a}, b={params.b}, lambda={params.lam})",
            bound=report.bound,
        )
    r, R = annuli.r, annuli.R
    am = alpha_lower_bound(R, params.b, params.lam)
    if phi(am, R, params) <= r:
        return am  # at (or within rounding of) the feasibility boundary
    bracket = bracket_alpha(annuli, params)
    lo, hi = bracket.lo, bracket.hi
    best_alpha = lo
    best_res = abs(phi(lo, R, params) - r)
    resid_tol = tol * max(1.0, r)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break  # bracket exhausted at float resolution
        fm = phi(mid, R, params)
        res = fm - r
        if abs(res) < best_res:
            best_res = abs(res)
            best_alpha = mid
        if res == 0.0:
            break
        if res > 0.0:
            lo = mid
        else:
            hi = mid
    if best_res > resid_tol:
        raise NoConvergence(
            f"bisection residual {best_res:.3e} above tolerance {resid_tol:.3e} "
            f"after {max_iter} iterations (r may sit too close to the bound)"
        )
    return best_alpha


def alpha_for_lambda1(annuli: AnnulusPair, params: EnergyParams) -> float:
    """First-integral constant of the logarithmic branch: a^2 (ln R/ln r)^2 - b^2."""
    annuli, params = validate(annuli, params)
    gamma = math.log(annuli.R) / math.log(annuli.r)
    return params.a * params.a * gamma * gamma - params.b * params.b
