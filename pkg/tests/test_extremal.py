"""Extremal stretch profile: construction, evaluation, inversion, sampling."""

import math
import random

import numpy as np
import pytest

from combenergy import (
    AnnulusPair,
    EnergyParams,
    OutOfDomain,
    OutOfRange,
    extremal,
)
from combenergy.core import BRANCH_GENERIC, BRANCH_LOG


FROZEN = (AnnulusPair(1.5, 1.25), EnergyParams(1.0, 1.0, 2.0))


def test_power_map_configs_recover_power_profile():
    # R = r^(b/a) is the alpha = 0 configuration, whose profile is H(t) = t^(b/a)
    for a, b, lam in [(1.0, 1.0, 2.0), (2.0, 1.0, 0.5), (0.5, 1.5, 3.0)]:
        gamma = b / a
        R = 1.7**gamma
        annuli = AnnulusPair(1.7, R)
        sol = extremal.solve_extremal(annuli, EnergyParams(a, b, lam))
        ts = np.linspace(1.0, 1.7, 23)
        got = extremal.profile(sol, ts)
        expected = ts**gamma
        assert np.max(np.abs(got - expected)) <= 1e-10 * R


def test_profile_inner_anchor_is_exact():
    annuli, params = FROZEN
    sol = extremal.solve_extremal(annuli, params)
    assert extremal.profile(sol, 1.0) == 1.0
    prof = extremal.sample_profile(sol, n=65)
    assert prof.H_values[0] == 1.0
    assert prof.t_grid[0] == 1.0


def test_profile_endpoint_hits_target_radius():
    annuli, params = FROZEN
    sol = extremal.solve_extremal(annuli, params)
    assert extremal.profile(sol, annuli.r) == pytest.approx(annuli.R, abs=1e-12)


def test_frozen_derivative_at_inner_boundary():
    # tH'(t) at t=1 equals sqrt(alpha + b^2)/a = sqrt(0.4624) = 0.68 exactly
    annuli, params = FROZEN
    sol = extremal.solve_extremal(annuli, params)
    assert extremal.derivative(sol, 1.0) == pytest.approx(0.68, abs=1e-12)


def test_lambda_one_branch_is_power_map():
    e = math.e
    sol = extremal.solve_extremal(AnnulusPair(e, e * e), EnergyParams(1.0, 1.0, 1.0))
    assert sol.branch == BRANCH_LOG
    assert sol.alpha == pytest.approx(3.0, abs=1e-12)
    ts = np.linspace(1.0, e, 17)
    assert np.max(np.abs(extremal.profile(sol, ts) - ts**2)) <= 1e-12 * e * e


def test_generic_branch_label():
    annuli, params = FROZEN
    sol = extremal.solve_extremal(annuli, params)
    assert sol.branch == BRANCH_GENERIC


def test_near_lambda_one_window_is_refused():
    with pytest.raises(OutOfDomain):
        extremal.solve_extremal(AnnulusPair(1.5, 1.25), EnergyParams(1.0, 1.0, 1.0 + 1e-12))


def test_profile_rejects_out_of_range_argument():
    annuli, params = FROZEN
    sol = extremal.solve_extremal(annuli, params)
    with pytest.raises(OutOfRange):
        extremal.profile(sol, 0.5)
    with pytest.raises(OutOfRange):
        extremal.profile(sol, annuli.r + 1e-3)
    # a few ulps outside the interval is treated as the endpoint
    assert math.isfinite(extremal.profile(sol, annuli.r + 1e-13))


def test_t_of_y_inverts_profile_endpoint():
    annuli, params = FROZEN
    sol = extremal.solve_extremal(annuli, params)
    assert extremal.t_of_y(sol, 1.25) == pytest.approx(1.5, abs=1e-8)
    assert extremal.t_of_y(sol, 1.0) == 1.0


def test_inverse_profile_round_trip():
    rng = random.Random(11)
    annuli, params = FROZEN
    sol = extremal.solve_extremal(annuli, params)
    for _ in range(25):
        t = 1.0 + (annuli.r - 1.0) * rng.random()
        rho = extremal.profile(sol, t)
        back = extremal.inverse_profile(sol, rho)
        assert abs(back - t) <= 1e-12 * t
    assert extremal.inverse_profile(sol, 1.0) == 1.0
    assert extremal.inverse_profile(sol, annuli.R) == pytest.approx(annuli.r, rel=1e-12)


def test_full_map_rotates_and_stretches():
    annuli, params = FROZEN
    sol = extremal.solve_extremal(annuli, params)
    h = extremal.full_map(sol, beta=math.pi / 3.0)
    z = 1.2 * complex(math.cos(0.4), math.sin(0.4))
    w = h(z)
    assert abs(w) == pytest.approx(extremal.profile(sol, 1.2), rel=1e-14)
    angle = math.atan2(w.imag, w.real)
    assert math.remainder(angle - 0.4 - math.pi / 3.0, 2.0 * math.pi) == pytest.approx(0.0, abs=1e-12)


def test_lambda_two_profile_matches_direct_formula():
    # For lam = 2 the profile admits the direct rational-in-power form
    #   H(t) = 2(1+s) t^(b/a) / ((1+s)^2 - t^(2b/a) alpha/b^2),  s = sqrt(1 + alpha/b^2).
    for annuli, params in [
        (AnnulusPair(1.5, 1.25), EnergyParams(1.0, 1.0, 2.0)),
        (AnnulusPair(1.4, 1.3), EnergyParams(1.3, 0.8, 2.0)),
    ]:
        sol = extremal.solve_extremal(annuli, params)
        al, a, b = sol.alpha, params.a, params.b
        s = math.sqrt(1.0 + al / (b * b))
        ts = np.linspace(1.0, annuli.r, 100)
        tp = ts ** (b / a)
        direct = 2.0 * (1.0 + s) * tp / ((1.0 + s) ** 2 - tp * tp * al / (b * b))
        got = extremal.profile(sol, ts)
        assert np.max(np.abs(got - direct)) <= 1e-12


def test_sample_profile_shape_and_monotonicity():
    annuli, params = FROZEN
    sol = extremal.solve_extremal(annuli, params)
    prof = extremal.sample_profile(sol, n=129)
    assert len(prof) == 129
    assert prof.t_grid[-1] == annuli.r
    assert np.all(np.diff(prof.H_values) > 0)


def test_write_profile_csv(tmp_path):
    annuli, params = FROZEN
    sol = extremal.solve_extremal(annuli, params)
    path = tmp_path / "profile.csv"
    extremal.write_profile_csv(sol, str(path), n=9)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "t,H,Hdot"
    assert len(lines) == 10
    first = [float(v) for v in lines[1].split(",")]
    last = [float(v) for v in lines[-1].split(",")]
    assert first[0] == 1.0 and first[1] == 1.0 and first[2] == pytest.approx(0.68, abs=1e-12)
    assert last[0] == pytest.approx(annuli.r, rel=1e-15)
    assert last[1] == pytest.approx(annuli.R, abs=1e-12)


def test_log_grid_endpoints_exact():
    g = extremal.log_grid(1.5, 33)
    assert g[0] == 1.0 and g[-1] == 1.5
    assert np.all(np.diff(g) > 0)
