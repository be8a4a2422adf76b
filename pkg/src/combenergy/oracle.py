"""Brute-force variational oracle: minimize the discrete radial energy directly.

The competitor class is piecewise-linear strictly increasing profiles on a
log-spaced grid, pinned to H(1) = 1 and H(r) = R.  The discrete energy is
the composite midpoint rule applied to the radial energy integrand (exact
gradient and tridiagonal Hessian come from the kernel layer), minimized by
projected Newton steps with an Armijo backtracking line search and a
projected-gradient fallback; monotonicity is restored, when a trial step
loses it, by weighted isotonic (pool-adjacent-violators) projection.

This route never touches the closed forms: agreement between the discrete
minimizer and the solved extremal is evidence for both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import LinAlgError, solveh_banded

from . import _kernels, extremal
from .core import AnnulusPair, EnergyParams, ExtremalSolution, RadialProfile, validate
from .errors import (
    MonotonicityLost,
    MonotonicityViolation,
    NoConvergence,
    ValidationError,
)

TWO_PI = 2.0 * math.pi


class Lcg64:
    """64-bit linear congruential generator (Knuth MMIX multiplier/increment).

    state <- (6364136223846793005 * state + 1442695040888963407) mod 2^64;
    floats take the top 53 bits.  Fixed here so perturbation sweeps are
    bit-reproducible across platforms and kernel backends.
    """

    MULT = 6364136223846793005
    INC = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next_u01(self) -> float:
        self.state = (self.MULT * self.state + self.INC) & self.MASK
        return (self.state >> 11) * (1.0 / 9007199254740992.0)


@dataclass(frozen=True)
class DiscreteProblem:
    """Grid, tolerance and seed for the discrete minimization."""

    annuli: AnnulusPair
    params: EnergyParams
    n: int = 513
    tol: float = 1e-9
    seed: int = 42
    t_grid: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        validate(self.annuli, self.params)
        if self.n < 8:
            raise ValidationError(f"grid needs n >= 8 nodes, got {self.n}")
        if not (0.0 < self.tol <= 1e-2):
            raise ValidationError(f"tol must lie in (0, 1e-2], got {self.tol}")
        object.__setattr__(self, "t_grid", extremal.log_grid(self.annuli.r, self.n))


def _check_profile_vector(problem: DiscreteProblem, H_values) -> np.ndarray:
    H = np.asarray(H_values, dtype=float)
    if H.shape != problem.t_grid.shape:
        raise ValidationError("H_values length must match the problem grid")
    if H[0] != 1.0:
        raise ValidationError(f"H_values[0] must equal 1 exactly, got {H[0]!r}")
    if not np.all(np.diff(H) > 0.0):
        raise MonotonicityViolation("H_values must be strictly increasing")
    return H


def discrete_energy(problem: DiscreteProblem, H_values) -> float:
    """Composite-midpoint energy of a pinned, strictly increasing grid profile."""
    H = _check_profile_vector(problem, H_values)
    p = problem.params
    return TWO_PI * _kernels.midpoint_energy(problem.t_grid, H, p.a, p.b, p.lam)


def discrete_gradient(problem: DiscreteProblem, H_values) -> np.ndarray:
    """Exact gradient of discrete_energy with respect to every node value."""
    H = _check_profile_vector(problem, H_values)
    p = problem.params
    return TWO_PI * _kernels.midpoint_energy_gradient(problem.t_grid, H, p.a, p.b, p.lam)


def _project_monotone(H: np.ndarray, lo: float, hi: float) -> np.ndarray:
    w = np.ones_like(H)
    w[0] = w[-1] = 1e15  # quasi-pin the endpoints, then set them exactly
    out = _kernels.pav_nondecreasing(H, w)
    out[0] = lo
    out[-1] = hi
    return out


@dataclass(frozen=True)
class OracleResult:
    """Outcome of the discrete minimization."""

    profile: RadialProfile
    energy: float
    iterations: int
    energy_history: tuple

    @property
    def n(self) -> int:
        return len(self.profile)


def minimize(problem: DiscreteProblem, init_H=None, max_iter: int = 100) -> OracleResult:
    """Projected-Newton minimization of the discrete energy.

    Stops when the interior sup-norm of the gradient falls below problem.tol.
    The iterate sequence is energy-monotone (Armijo); Newton directions come
    from the tridiagonal Hessian via banded Cholesky, with a steepest-descent
    fallback whenever the Hessian is not positive definite.
    """
    t = problem.t_grid
    p = problem.params
    r, R = problem.annuli.r, problem.annuli.R
    if init_H is None:
        gamma = math.log(R) / math.log(r)
        H = np.exp(gamma * np.log(t))
        H[0], H[-1] = 1.0, R
    else:
        H = np.asarray(init_H, dtype=float).copy()
        if H.shape != t.shape:
            raise ValidationError("init_H length must match the problem grid")
        H[0], H[-1] = 1.0, R
        if not np.all(np.diff(H) > 0.0):
            raise MonotonicityViolation("init_H must be strictly increasing")
    energy = TWO_PI * _kernels.midpoint_energy(t, H, p.a, p.b, p.lam)
    history = [energy]
    iterations = 0
    converged = False
    for _ in range(max_iter):
        g = TWO_PI * _kernels.midpoint_energy_gradient(t, H, p.a, p.b, p.lam)[1:-1]
        if float(np.max(np.abs(g))) <= problem.tol:
            converged = True
            break
        diag, off = _kernels.midpoint_energy_hessian(t, H, p.a, p.b, p.lam)
        diag = TWO_PI * diag[1:-1]
        off = TWO_PI * off[1:-1]
        direction = None
        try:
            ab = np.zeros((2, diag.size))
            ab[0, 1:] = off
            ab[1, :] = diag
            direction = solveh_banded(ab, -g, lower=False)
        except LinAlgError:
            direction = None
        if direction is None or float(np.dot(g, direction)) >= 0.0:
            direction = -g / max(1.0, float(np.max(np.abs(g))))
        slope = float(np.dot(g, direction))
        step = 1.0
        accepted = False
        projection_blocked = True
        for _ls in range(60):
            cand = H.copy()
            cand[1:-1] += step * direction
            if not np.all(np.diff(cand) > 0.0):
                cand = _project_monotone(cand, 1.0, R)
                if not np.all(np.diff(cand) > 0.0):
                    step *= 0.5
                    continue
            projection_blocked = False
            cand_energy = TWO_PI * _kernels.midpoint_energy(t, cand, p.a, p.b, p.lam)
            if cand_energy <= energy + 1e-4 * step * slope:
                H = cand
                energy = cand_energy
                accepted = True
                break
            step *= 0.5
        if not accepted:
            if projection_blocked:
                raise MonotonicityLost("projection could not restore strict monotonicity")
            # descent stalled at rounding level; accept if the gradient is already tiny
            if float(np.max(np.abs(g))) <= 1e3 * problem.tol:
                converged = True
                break
            raise NoConvergence("line search failed to find a descent step")
        iterations += 1
        history.append(energy)
    if not converged:
        raise NoConvergence(f"gradient norm above tol after {max_iter} iterations")
    return OracleResult(
        profile=RadialProfile(t_grid=t.copy(), H_values=H),
        energy=energy,
        iterations=iterations,
        energy_history=tuple(history),
    )


def perturbation_sweep(
    problem: DiscreteProblem,
    solution: ExtremalSolution,
    k: int = 100,
    magnitude: float = 1e-2,
) -> np.ndarray:
    """Energy deltas of k random pinned bump perturbations around the extremal.

    Bumps are sin^2-tapered Gaussians in x = ln t (zero value and slope at
    both endpoints), with center, width and sign drawn from the stated LCG;
    all deltas must be nonnegative up to discretization error if the sampled
    profile truly minimizes.  Raises MonotonicityViolation if a perturbed
    profile is no longer strictly increasing (magnitude too large).
    """
    t = problem.t_grid
    p = problem.params
    xs = np.log(t)
    X = xs[-1]
    H0 = np.asarray(extremal.profile(solution, t), dtype=float)
    H0[0] = 1.0
    base = _kernels.midpoint_energy(t, H0, p.a, p.b, p.lam)
    taper = np.sin(math.pi * xs / X) ** 2
    lcg = Lcg64(problem.seed)
    deltas = np.empty(k)
    for i in range(k):
        u1 = lcg.next_u01()
        u2 = lcg.next_u01()
        u3 = lcg.next_u01()
        center = X * (0.15 + 0.7 * u1)
        width = X * (0.2 + 0.25 * u2)
        sign = 1.0 if u3 < 0.5 else -1.0
        bump = sign * magnitude * taper * np.exp(-(((xs - center) / width) ** 2))
        bump[0] = 0.0
        bump[-1] = 0.0
        cand = H0 + bump
        if not np.all(np.diff(cand) > 0.0):
            raise MonotonicityViolation(
                f"perturbation {i} (magnitude {magnitude}) broke strict monotonicity"
            )
        deltas[i] = TWO_PI * (_kernels.midpoint_energy(t, cand, p.a, p.b, p.lam) - base)
    return deltas
