"""Domain types shared across the package.

The problem: among homeomorphisms h between the concentric annuli
A(1, r) = {1 <= |z| <= r} and A(1, R) = {1 <= |w| <= R}, minimize the
weighted combined energy

    E[h] = integral over A(1, r) of (a^2 |h_N|^2 + b^2 |h_T|^2) / |h|^(2*lam)

with |h_N|, |h_T| the normal and tangential derivative moduli and area
element t dt dtheta.  Radial minimizers have the form h = H(t) e^(i theta)
with H pinned to H(1) = 1, H(r) = R.  Types here carry the problem data;
the algorithms live in the sibling modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateAnnulus,
    MonotonicityViolation,
    NonPositiveWeight,
    ValidationError,
)

#: Branch tags for ExtremalSolution.
BRANCH_GENERIC = "lambda_ne_1"
BRANCH_LOG = "lambda_eq_1"

#: Width of the exclusion window around lam = 1 for the generic branch.
LAMBDA_ONE_WINDOW = 1e-9


@dataclass(frozen=True)
class AnnulusPair:
    """Domain annulus A(1, r) and target annulus A(1, R); both radii > 1."""

    r: float
    R: float

    def __post_init__(self):
        if not (math.isfinite(self.r) and self.r > 1.0):
            raise DegenerateAnnulus(f"domain outer radius must satisfy r > 1, got r={self.r}")
        if not (math.isfinite(self.R) and self.R > 1.0):
            raise DegenerateAnnulus(f"target outer radius must satisfy R > 1, got R={self.R}")


@dataclass(frozen=True)
class EnergyParams:
    """Stretch weights a (normal), b (tangential) and the modulus exponent lam."""

    a: float
    b: float
    lam: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0.0):
            raise NonPositiveWeight(f"weight a must be > 0, got {self.a}")
        if not (math.isfinite(self.b) and self.b > 0.0):
            raise NonPositiveWeight(f"weight b must be > 0, got {self.b}")
        if not math.isfinite(self.lam):
            raise ValidationError(f"lambda must be finite, got {self.lam}")

    @property
    def is_lambda_one(self) -> bool:
        """True only on exact equality; the lam = 1 branch is detected, never approximated."""
        return self.lam == 1.0


def validate(annuli: AnnulusPair, params: EnergyParams) -> tuple[AnnulusPair, EnergyParams]:
    """Re-run constructor validation on an (annuli, params) pair and return it unchanged."""
    annuli = AnnulusPair(annuli.r, annuli.R)
    params = EnergyParams(params.a, params.b, params.lam)
    return annuli, params


def alpha_lower_bound(R: float, b: float, lam: float) -> float:
    """Lower edge of the admissible first-integral constants.

    -b^2 / R^(2(lam-1)) for lam > 1, and -b^2 for lam <= 1 (at lam = 1 the
    logarithmic branch gives alpha = a^2 (ln R / ln r)^2 - b^2 >= -b^2).
    """
    if lam > 1.0:
        return -b * b * math.exp((2.0 - 2.0 * lam) * math.log(R))
    return -b * b


def _as_strictly_increasing(name: str, values: np.ndarray) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise ValidationError(f"{name} must be a 1-D array with at least 2 entries")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} contains non-finite entries")
    if not np.all(np.diff(arr) > 0.0):
        raise MonotonicityViolation(f"{name} must be strictly increasing")
    return arr


@dataclass(frozen=True)
class RadialProfile:
    """A sampled radial map: strictly increasing H on a strictly increasing t grid.

    Pinning convention: t_grid[0] == 1 and H_values[0] == 1 exactly; the last
    entries define the outer radii r and R of the profile.
    """

    t_grid: np.ndarray
    H_values: np.ndarray

    def __post_init__(self):
        t = _as_strictly_increasing("t_grid", self.t_grid)
        H = _as_strictly_increasing("H_values", self.H_values)
        if t.shape != H.shape:
            raise ValidationError("t_grid and H_values must have the same length")
        if t[0] != 1.0:
            raise ValidationError(f"t_grid must start at 1 exactly, got {t[0]!r}")
        if H[0] != 1.0:
            raise ValidationError(f"H_values must start at 1 exactly, got {H[0]!r}")
        object.__setattr__(self, "t_grid", t)
        object.__setattr__(self, "H_values", H)

    @property
    def r(self) -> float:
        return float(self.t_grid[-1])

    @property
    def R(self) -> float:
        return float(self.H_values[-1])

    def __len__(self) -> int:
        return int(self.t_grid.size)


@dataclass(frozen=True)
class ExtremalSolution:
    """A solved radial extremal: first-integral constant alpha plus problem data.

    branch is "lambda_eq_1" exactly when params.lam == 1 (the logarithmic
    family H = t^(ln R / ln r)); otherwise "lambda_ne_1" with alpha at or
    above alpha_lower_bound.  Evaluators live in combenergy.extremal.
    """

    alpha: float
    params: EnergyParams
    annuli: AnnulusPair
    branch: str = field(default=BRANCH_GENERIC)

    def __post_init__(self):
        if self.branch not in (BRANCH_GENERIC, BRANCH_LOG):
            raise ValidationError(f"unknown branch {self.branch!r}")
        if self.params.is_lambda_one != (self.branch == BRANCH_LOG):
            raise ValidationError("branch tag inconsistent with params.lam")
        if not math.isfinite(self.alpha):
            raise ValidationError(f"alpha must be finite, got {self.alpha}")
        lo = alpha_lower_bound(self.annuli.R, self.params.b, self.params.lam)
        slack = 1e-12 * max(1.0, abs(lo))
        if self.alpha < lo - slack:
            raise ValidationError(f"alpha={self.alpha} below admissible lower bound {lo}")


@dataclass(frozen=True)
class PolarField:
    """A map sampled on a polar tensor grid, with optional derivative samples.

    h_values[i, j] = h(t_i e^(i theta_j)); hN_values and hT_values sample the
    normal derivative h_N = dh/dt and tangential derivative h_T = (1/t) dh/dtheta.
    Boundary rings must have constant modulus: |h| = 1 at t = 1 and |h| = R at
    the outer edge (checked to 1e-9; closed-form builders achieve 1e-12).
    """

    t_grid: np.ndarray
    theta_grid: np.ndarray
    h_values: np.ndarray
    hN_values: np.ndarray | None = None
    hT_values: np.ndarray | None = None

    def __post_init__(self):
        t = _as_strictly_increasing("t_grid", self.t_grid)
        theta = _as_strictly_increasing("theta_grid", self.theta_grid)
        if t[0] != 1.0:
            raise ValidationError(f"t_grid must start at 1 exactly, got {t[0]!r}")
        if theta[0] < 0.0 or theta[-1] >= 2.0 * math.pi:
            raise ValidationError("theta_grid must lie in [0, 2*pi)")
        h = np.asarray(self.h_values, dtype=complex)
        if h.shape != (t.size, theta.size):
            raise ValidationError("h_values must have shape (len(t_grid), len(theta_grid))")
        mod = np.abs(h)
        if np.max(np.abs(mod[0, :] - 1.0)) > 1e-9:
            raise ValidationError("inner ring modulus must equal 1 (within 1e-9)")
        outer = mod[-1, :]
        if np.max(outer) - np.min(outer) > 1e-9 * max(1.0, float(np.max(outer))):
            raise ValidationError("outer ring modulus must be constant (within 1e-9)")
        object.__setattr__(self, "t_grid", t)
        object.__setattr__(self, "theta_grid", theta)
        object.__setattr__(self, "h_values", h)
        for name in ("hN_values", "hT_values"):
            val = getattr(self, name)
            if val is not None:
                val = np.asarray(val, dtype=complex)
                if val.shape != h.shape:
                    raise ValidationError(f"{name} must match h_values in shape")
                object.__setattr__(self, name, val)

    @property
    def outer_modulus(self) -> float:
        """The common modulus R of the outer ring."""
        return float(np.mean(np.abs(self.h_values[-1, :])))
