"""Independent ODE-level verification of solved extremals.

Radial minimizers satisfy the Euler-Lagrange equation

    a^2 t^2 H H'' + a^2 t H H' + (lam - 1) b^2 H^2 - lam a^2 t^2 H'^2 = 0,

whose first integral in x = ln t (with y = H, zeta = dy/dx = t H') is

    a^2 zeta^2 - b^2 y^2 = alpha * y^(2 lam)   (constant alpha).

shoot() re-derives the profile by integrating the second-order system
y' = zeta, zeta' = lam zeta^2 / y - (lam - 1) (b/a)^2 y from (y, zeta)(0)
= (1, sqrt(alpha + b^2)/a), with zeta evolved independently of y so the
first-integral drift is a real measure of integrator accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import AnnulusPair, EnergyParams, RadialProfile
from .errors import RadicandNegative, StepFailure

#: Initial radicands in [-INITIAL_RADICAND_CLAMP, 0) are treated as exact zeros.
INITIAL_RADICAND_CLAMP = 1e-12


def euler_lagrange_residual(H, Hdot, Hddot, params: EnergyParams):
    """Residual of the Euler-Lagrange equation for profile evaluators (0 at extremals)."""
    a, b, lam = params.a, params.b, params.lam

    def residual(t):
        t = np.asarray(t, dtype=float)
        h = np.asarray(H(t), dtype=float)
        hd = np.asarray(Hdot(t), dtype=float)
        hdd = np.asarray(Hddot(t), dtype=float)
        a2 = a * a
        out = (
            a2 * t * t * h * hdd
            + a2 * t * h * hd
            + (lam - 1.0) * b * b * h * h
            - lam * a2 * t * t * hd * hd
        )
        return float(out) if out.ndim == 0 else out

    return residual


def first_integral(H, Hdot, params: EnergyParams):
    """(a^2 zeta^2 - b^2 y^2) / y^(2 lam) with y = H(t), zeta = t H'(t); constant on extremals."""
    a, b, lam = params.a, params.b, params.lam

    def value(t):
        t = np.asarray(t, dtype=float)
        y = np.asarray(H(t), dtype=float)
        zeta = t * np.asarray(Hdot(t), dtype=float)
        out = (a * a * zeta * zeta - b * b * y * y) * np.exp(-2.0 * lam * np.log(y))
        return float(out) if out.ndim == 0 else out

    return value


@dataclass(frozen=True)
class ShootingState:
    """One point of a shot trajectory in x = ln t coordinates."""

    x: float
    y: float
    zeta: float


@dataclass(frozen=True)
class ShootResult:
    """A shot trajectory: node arrays plus the data that produced it."""

    x: np.ndarray
    y: np.ndarray
    zeta: np.ndarray
    alpha: float
    params: EnergyParams

    def omega(self) -> np.ndarray:
        """First-integral values (a^2 zeta^2 - b^2 y^2) / y^(2 lam) at the nodes."""
        a, b, lam = self.params.a, self.params.b, self.params.lam
        return (a * a * self.zeta**2 - b * b * self.y**2) * np.exp(-2.0 * lam * np.log(self.y))

    def profile(self) -> RadialProfile:
        t = np.exp(self.x)
        t[0] = 1.0
        return RadialProfile(t_grid=t, H_values=self.y.copy())

    def states(self) -> list[ShootingState]:
        return [ShootingState(float(xi), float(yi), float(zi)) for xi, yi, zi in zip(self.x, self.y, self.zeta)]

    def write_csv(self, path: str) -> None:
        """Write x, y, zeta, omega rows with 17 significant digits."""
        om = self.omega()
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("x,y,zeta,omega\n")
            for xi, yi, zi, oi in zip(self.x, self.y, self.zeta, om):
                fh.write(f"{xi:.17g},{yi:.17g},{zi:.17g},{oi:.17g}\n")


def shoot(
    alpha: float,
    params: EnergyParams,
    r: float,
    n: int = 65,
    rtol: float = 1e-12,
    atol: float = 1e-14,
) -> ShootResult:
    """Integrate the extremal system across [0, ln r] and return node samples.

    Raises RadicandNegative when alpha is inadmissible: either alpha + b^2 < 0
    at the start, or the trajectory's turning point (zeta crossing 0 going
    negative) lies inside the integration window, which happens exactly when
    alpha is below its lower bound for the reached outer radius.
    """
    if not (r > 1.0):
        raise ValueError(f"outer radius must satisfy r > 1, got {r}")
    if n < 2:
        raise ValueError("need at least 2 output nodes")
    a, b = params.a, params.b
    rad0 = alpha + b * b
    if rad0 < 0.0:
        if rad0 < -INITIAL_RADICAND_CLAMP * max(1.0, b * b):
            raise RadicandNegative(f"alpha + b^2 = {rad0:.3e} < 0: alpha below admissible range")
        rad0 = 0.0
    zeta0 = math.sqrt(rad0) / a
    x_nodes = np.linspace(0.0, math.log(r), n)
    y, zeta, status, x_fail = _kernels.shoot_path(
        float(alpha), float(a), float(b), float(params.lam), x_nodes, float(rtol), float(atol), zeta0
    )
    if status == 1:
        raise RadicandNegative(
            f"trajectory left the admissible region near x={x_fail:.6g} "
            f"(turning point inside [0, ln r]): alpha={alpha} is below its lower bound"
        )
    if status == 2:
        raise StepFailure(f"step size underflow near x={x_fail:.6g}")
    return ShootResult(x=x_nodes, y=y, zeta=zeta, alpha=float(alpha), params=params)
