"""Backend agreement and kernel-level properties."""

import math

import numpy as np
import pytest

from combenergy._kernels import _pure, available_backends

BACKENDS = available_backends()
HAS_COMPILED = "cython" in BACKENDS

needs_compiled = pytest.mark.skipif(not HAS_COMPILED, reason="compiled backend not built")


def _inputs(n=513):
    rng = np.random.default_rng(314159)
    t = np.exp(np.linspace(0.0, math.log(1.5), n))
    t[0], t[-1] = 1.0, 1.5
    H = t**1.3 + 0.001 * np.sin(np.linspace(0.0, 3.0, n))
    H[0] = 1.0
    assert np.all(np.diff(H) > 0)
    noisy = t**1.3 + 0.05 * rng.standard_normal(n)
    weights = 0.5 + rng.random(n)
    return t, H, noisy, weights


@needs_compiled
def test_energy_kernels_agree_across_backends():
    t, H, _, _ = _inputs()
    core = BACKENDS["cython"]
    a, b, lam = 1.1, 0.9, 2.0
    e_pure = _pure.midpoint_energy(t, H, a, b, lam)
    e_core = core.midpoint_energy(t, H, a, b, lam)
    assert abs(e_pure - e_core) <= 5e-13 * max(1.0, abs(e_pure))
    g_pure = _pure.midpoint_energy_gradient(t, H, a, b, lam)
    g_core = core.midpoint_energy_gradient(t, H, a, b, lam)
    assert np.max(np.abs(g_pure - g_core)) <= 5e-13 * max(1.0, float(np.max(np.abs(g_pure))))
    d_pure, o_pure = _pure.midpoint_energy_hessian(t, H, a, b, lam)
    d_core, o_core = core.midpoint_energy_hessian(t, H, a, b, lam)
    assert np.max(np.abs(d_pure - d_core)) <= 5e-13 * float(np.max(np.abs(d_pure)))
    assert np.max(np.abs(o_pure - o_core)) <= 5e-13 * float(np.max(np.abs(o_pure)))


@needs_compiled
def test_pav_agrees_across_backends():
    _, _, noisy, weights = _inputs()
    core = BACKENDS["cython"]
    p = _pure.pav_nondecreasing(noisy, weights)
    c = core.pav_nondecreasing(noisy, weights)
    assert np.max(np.abs(p - c)) <= 1e-12 * max(1.0, float(np.max(np.abs(p))))


@needs_compiled
def test_shoot_path_agrees_across_backends():
    core = BACKENDS["cython"]
    x_nodes = np.linspace(0.0, math.log(1.5), 65)
    zeta0 = math.sqrt(1.0 - 0.5376)
    args = (-0.5376, 1.0, 1.0, 2.0, x_nodes, 1e-12, 1e-14, zeta0)
    y_p, z_p, s_p, _ = _pure.shoot_path(*args)
    y_c, z_c, s_c, _ = core.shoot_path(*args)
    assert s_p == s_c == 0
    assert np.max(np.abs(np.asarray(y_p) - np.asarray(y_c))) <= 5e-13
    assert np.max(np.abs(np.asarray(z_p) - np.asarray(z_c))) <= 5e-13


def test_pav_output_is_nondecreasing():
    _, _, noisy, weights = _inputs(257)
    out = _pure.pav_nondecreasing(noisy, weights)
    assert np.all(np.diff(out) >= 0.0)


def test_pav_fixes_sorted_input():
    y = np.linspace(0.0, 1.0, 50)
    w = np.ones(50)
    assert np.array_equal(_pure.pav_nondecreasing(y, w), y)


def test_pav_is_weighted_projection():
    # the PAV output must beat every feasible (nondecreasing) competitor in
    # the weighted least-squares sense
    rng = np.random.default_rng(2718)
    y = rng.standard_normal(40)
    w = 0.5 + rng.random(40)
    proj = _pure.pav_nondecreasing(y, w)
    best = float(np.sum(w * (proj - y) ** 2))
    for _ in range(50):
        cand = np.sort(rng.standard_normal(40))
        assert best <= float(np.sum(w * (cand - y) ** 2)) + 1e-12
    # pooling preserves the weighted mean on every level set
    assert float(np.sum(w * proj)) == pytest.approx(float(np.sum(w * y)), rel=1e-12)


def test_shoot_path_status_codes():
    x_nodes = np.linspace(0.0, math.log(1.5), 17)
    # admissible trajectory
    _, _, status, _ = _pure.shoot_path(0.0, 1.0, 1.0, 2.0, x_nodes, 1e-12, 1e-14, 1.0)
    assert status == 0
    # turning point inside the window
    _, _, status, x_fail = _pure.shoot_path(-0.99, 1.0, 1.0, 2.0, x_nodes, 1e-12, 1e-14, 0.1)
    assert status == 1
    assert 0.0 <= x_fail <= math.log(1.5)
