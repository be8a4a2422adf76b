"""Validation behavior of the core value types."""

import math

import numpy as np
import pytest

from combenergy import (
    AnnulusPair,
    DegenerateAnnulus,
    EnergyParams,
    ExtremalSolution,
    MonotonicityViolation,
    NonPositiveWeight,
    PolarField,
    RadialProfile,
    ValidationError,
    alpha_lower_bound,
    validate,
)
from combenergy.core import BRANCH_GENERIC, BRANCH_LOG


def test_annulus_pair_accepts_valid_radii():
    ann = AnnulusPair(1.5, 1.25)
    assert ann.r == 1.5
    assert ann.R == 1.25


@pytest.mark.parametrize("r,R", [(1.0, 1.5), (0.5, 1.5), (1.5, 1.0), (1.5, 0.0), (-2.0, 1.5)])
def test_annulus_pair_rejects_degenerate_radii(r, R):
    with pytest.raises(DegenerateAnnulus):
        AnnulusPair(r, R)


def test_annulus_pair_rejects_nonfinite():
    with pytest.raises(ValidationError):
        AnnulusPair(math.nan, 1.5)
    with pytest.raises(ValidationError):
        AnnulusPair(1.5, math.inf)


@pytest.mark.parametrize("a,b", [(0.0, 1.0), (1.0, 0.0), (-1.0, 1.0), (1.0, -2.0)])
def test_energy_params_rejects_nonpositive_weights(a, b):
    with pytest.raises(NonPositiveWeight):
        EnergyParams(a, b, 2.0)


def test_energy_params_lambda_unrestricted():
    for lam in (-3.0, 0.0, 0.5, 1.0, 2.0, 10.0):
        p = EnergyParams(1.0, 2.0, lam)
        assert p.lam == lam
    assert EnergyParams(1.0, 1.0, 1.0).is_lambda_one
    assert not EnergyParams(1.0, 1.0, 1.0 + 1e-15).is_lambda_one


def test_validate_round_trips():
    validate(AnnulusPair(2.0, 3.0), EnergyParams(0.5, 2.0, -1.0))


def test_alpha_lower_bound_branches():
    # lam > 1: -b^2 / R^(2(lam-1)); lam <= 1: -b^2
    assert alpha_lower_bound(2.0, 1.0, 2.0) == pytest.approx(-0.25, rel=1e-15)
    assert alpha_lower_bound(2.0, 3.0, 0.5) == -9.0
    assert alpha_lower_bound(5.0, 2.0, 1.0) == -4.0


def test_radial_profile_requires_strict_monotonicity():
    t = np.array([1.0, 1.2, 1.5])
    with pytest.raises(MonotonicityViolation):
        RadialProfile(t_grid=t, H_values=np.array([1.0, 1.3, 1.3]))
    with pytest.raises(MonotonicityViolation):
        RadialProfile(t_grid=np.array([1.0, 1.0, 1.5]), H_values=np.array([1.0, 1.1, 1.2]))


def test_radial_profile_requires_exact_anchors():
    t = np.array([1.0, 1.2, 1.5])
    with pytest.raises(ValidationError):
        RadialProfile(t_grid=t + 1e-12, H_values=np.array([1.0, 1.1, 1.25]))
    with pytest.raises(ValidationError):
        RadialProfile(t_grid=t, H_values=np.array([1.0 + 1e-12, 1.1, 1.25]))
    prof = RadialProfile(t_grid=t, H_values=np.array([1.0, 1.1, 1.25]))
    assert prof.r == 1.5
    assert prof.R == 1.25
    assert len(prof) == 3


def test_extremal_solution_checks_branch_consistency():
    ann = AnnulusPair(1.5, 1.25)
    sol = ExtremalSolution(alpha=-0.5376, params=EnergyParams(1.0, 1.0, 2.0), annuli=ann, branch=BRANCH_GENERIC)
    assert sol.alpha == -0.5376
    with pytest.raises(ValidationError):
        ExtremalSolution(alpha=-0.5376, params=EnergyParams(1.0, 1.0, 2.0), annuli=ann, branch=BRANCH_LOG)
    with pytest.raises(ValidationError):
        ExtremalSolution(alpha=3.0, params=EnergyParams(1.0, 1.0, 1.0), annuli=ann, branch=BRANCH_GENERIC)


def test_extremal_solution_rejects_alpha_below_lower_bound():
    ann = AnnulusPair(1.5, 1.25)
    params = EnergyParams(1.0, 1.0, 2.0)
    lo = alpha_lower_bound(ann.R, params.b, params.lam)
    with pytest.raises(ValidationError):
        ExtremalSolution(alpha=lo - 1e-6, params=params, annuli=ann, branch=BRANCH_GENERIC)
    # exactly at the bound is allowed (boundary configuration)
    ExtremalSolution(alpha=lo, params=params, annuli=ann, branch=BRANCH_GENERIC)


def _ring_field(inner_scale=1.0, outer_wobble=0.0):
    t = np.array([1.0, 1.25, 1.5])
    theta = np.linspace(0.0, 2.0 * math.pi, 8, endpoint=False)
    tt, th = np.meshgrid(t, theta, indexing="ij")
    h = (1.0 + (tt - 1.0)) * np.exp(1j * th)
    h[0, :] *= inner_scale
    h[-1, 0] *= 1.0 + outer_wobble
    return t, theta, h


def test_polar_field_boundary_validation():
    t, theta, h = _ring_field()
    field = PolarField(t_grid=t, theta_grid=theta, h_values=h)
    assert field.outer_modulus == pytest.approx(1.5, rel=1e-12)
    with pytest.raises(ValidationError):
        _, _, bad = _ring_field(inner_scale=1.01)
        PolarField(t_grid=t, theta_grid=theta, h_values=bad)
    with pytest.raises(ValidationError):
        _, _, bad = _ring_field(outer_wobble=1e-6)
        PolarField(t_grid=t, theta_grid=theta, h_values=bad)
