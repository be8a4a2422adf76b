"""Nitsche-type feasibility bound for the weighted annulus energy problem.

A radial extremal from A(1, r) onto A(1, R) exists iff

    r <= ( R^|lam-1| + sqrt(R^(2|lam-1|) - 1) )^( (1/|lam-1|) * (a/b) ),

with no condition at lam = 1 (the bound is +infinity there).  At lam = 0
the bound is equivalent to R >= cosh((b/a) ln r); lam and 2 - lam give the
same bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import AnnulusPair, EnergyParams, validate

#: Relative slack used when classifying r against the bound, so that exact
#: boundary configurations never flip to infeasible by last-ulp rounding.
FEASIBILITY_SLACK = 16 * 2.2204460492503131e-16


def log_nitsche_bound(R: float, params: EnergyParams) -> float:
    """Natural log of the bound, computed overflow-free (inf at lam = 1)."""
    if params.is_lambda_one:
        return math.inf
    d = abs(params.lam - 1.0)
    q = d * math.log(R)
    # log(e^q + sqrt(e^(2q) - 1)) = q + log1p(sqrt(1 - e^(-2q)))
    log_base = q + math.log1p(math.sqrt(-math.expm1(-2.0 * q)))
    return (params.a / (params.b * d)) * log_base


def nitsche_bound(R: float, params: EnergyParams) -> float:
    """Largest feasible domain radius r for target radius R (inf at lam = 1).

    Evaluated with direct powers when they fit in double precision (this
    keeps rational cases like R=1.25, a=b, |lam-1|=1 -> 2.0 exact) and in
    the log domain otherwise.
    """
    if R <= 1.0:
        raise ValueError(f"target radius must satisfy R > 1, got {R}")
    if params.is_lambda_one:
        return math.inf
    d = abs(params.lam - 1.0)
    try:
        Rd = math.pow(R, d)
        base = Rd + math.sqrt(Rd * Rd - 1.0)
        return math.pow(base, params.a / (params.b * d))
    except OverflowError:
        pass
    log_bound = log_nitsche_bound(R, params)
    try:
        return math.exp(log_bound)
    except OverflowError:
        return math.inf


@dataclass(frozen=True)
class FeasibilityReport:
    """Outcome of the bound check: the bound, the requested r, and bound - r."""

    feasible: bool
    bound: float
    r: float
    margin: float

    def as_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "bound": self.bound,
            "r": self.r,
            "margin": self.margin,
        }


def is_feasible(annuli: AnnulusPair, params: EnergyParams) -> FeasibilityReport:
    """Classify an annulus pair against the bound (boundary r == bound is feasible)."""
    annuli, params = validate(annuli, params)
    bound = nitsche_bound(annuli.R, params)
    if math.isinf(bound):
        return FeasibilityReport(True, bound, annuli.r, math.inf)
    slack = FEASIBILITY_SLACK * max(annuli.r, bound, 1.0)
    feasible = annuli.r <= bound + slack
    return FeasibilityReport(feasible, bound, annuli.r, bound - annuli.r)
