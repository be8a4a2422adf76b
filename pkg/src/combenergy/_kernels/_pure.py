"""Reference (NumPy / pure-Python) implementations of the hot kernels.

The compiled twin lives in _core.pyx; both expose the same five functions
with identical algorithms and constants so results agree to rounding:

  midpoint_energy(t, h, a, b, lam)            -> float
  midpoint_energy_gradient(t, h, a, b, lam)   -> ndarray (n,)
  midpoint_energy_hessian(t, h, a, b, lam)    -> (diag (n,), off (n-1,))
  pav_nondecreasing(y, w)                     -> ndarray (n,)
  shoot_path(alpha, a, b, lam, x_nodes, rtol, atol, zeta0)
                                              -> (y, zeta, status, x_fail)

The energy kernels discretize 2*pi-less radial energy
    integral over [1, r] of (a^2 t^2 H'^2 + b^2 H^2) / (t H^(2 lam)) dt
by the composite midpoint rule on a piecewise-linear H: per interval the
integrand is evaluated at the arithmetic midpoint (t_m, H_m) with the
chord slope D.  Gradient and Hessian are the exact derivatives of that
discrete sum, so the Hessian is tridiagonal.

shoot_path integrates the extremal ODE system in x = ln t,
    y' = zeta,   zeta' = lam zeta^2 / y - (lam - 1) (b/a)^2 y,
with a Dormand-Prince 5(4) embedded pair; step control keys on the y
component.  Status codes: 0 ok, 1 trajectory left the admissible region
(zeta turned negative: alpha below its lower bound), 2 step underflow.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "midpoint_energy",
    "midpoint_energy_gradient",
    "midpoint_energy_hessian",
    "pav_nondecreasing",
    "shoot_path",
]


def _pieces(t, h):
    t = np.asarray(t, dtype=float)
    h = np.asarray(h, dtype=float)
    dt = t[1:] - t[:-1]
    tm = 0.5 * (t[1:] + t[:-1])
    hm = 0.5 * (h[1:] + h[:-1])
    d = (h[1:] - h[:-1]) / dt
    return dt, tm, hm, d


def midpoint_energy(t, h, a, b, lam):
    dt, tm, hm, d = _pieces(t, h)
    F = (a * a * tm * tm * d * d + b * b * hm * hm) / (tm * np.power(hm, 2.0 * lam))
    # compensated sum; the compiled kernel uses Kahan accumulation
    return float(math.fsum(F * dt))


def midpoint_energy_gradient(t, h, a, b, lam):
    dt, tm, hm, d = _pieces(t, h)
    hp = np.power(hm, -2.0 * lam)
    # F(t, H, D) = a^2 t D^2 H^(-2 lam) + b^2 H^(2 - 2 lam) / t
    F_H = -2.0 * lam * a * a * tm * d * d * hp / hm + (2.0 - 2.0 * lam) * b * b * hm * hp / tm
    F_D = 2.0 * a * a * tm * d * hp
    g = np.zeros_like(np.asarray(h, dtype=float))
    left = 0.5 * dt * F_H - F_D
    right = 0.5 * dt * F_H + F_D
    np.add.at(g, np.arange(g.size - 1), left)
    np.add.at(g, np.arange(1, g.size), right)
    return g


def midpoint_energy_hessian(t, h, a, b, lam):
    dt, tm, hm, d = _pieces(t, h)
    hp = np.power(hm, -2.0 * lam)
    F_HH = (
        2.0 * lam * (2.0 * lam + 1.0) * a * a * tm * d * d * hp / (hm * hm)
        + (2.0 - 2.0 * lam) * (1.0 - 2.0 * lam) * b * b * hp / tm
    )
    F_HD = -4.0 * lam * a * a * tm * d * hp / hm
    F_DD = 2.0 * a * a * tm * hp
    n = np.asarray(h).size
    diag = np.zeros(n)
    off = np.zeros(n - 1)
    quarter = 0.25 * dt * F_HH
    diag_left = quarter - F_HD + F_DD / dt
    diag_right = quarter + F_HD + F_DD / dt
    np.add.at(diag, np.arange(n - 1), diag_left)
    np.add.at(diag, np.arange(1, n), diag_right)
    off[:] = quarter - F_DD / dt
    return diag, off


def pav_nondecreasing(y, w):
    """Weighted L2 projection onto nondecreasing sequences (pool adjacent violators)."""
    y = np.asarray(y, dtype=float)
    w = np.asarray(w, dtype=float)
    n = y.size
    mean = np.empty(n)
    weight = np.empty(n)
    length = np.empty(n, dtype=np.intp)
    top = 0
    for i in range(n):
        cm = y[i]
        cw = w[i]
        cl = 1
        while top > 0 and mean[top - 1] > cm:
            pm = mean[top - 1]
            pw = weight[top - 1]
            cm = (cm * cw + pm * pw) / (cw + pw)
            cw += pw
            cl += length[top - 1]
            top -= 1
        mean[top] = cm
        weight[top] = cw
        length[top] = cl
        top += 1
    out = np.empty(n)
    pos = 0
    for blk in range(top):
        out[pos : pos + length[blk]] = mean[blk]
        pos += length[blk]
    return out


# Dormand-Prince 5(4) tableau
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = (
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
)
_B1, _B3, _B4, _B5, _B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
_E1, _E3, _E4, _E5, _E6, _E7 = (
    71.0 / 57600.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
)


def shoot_path(alpha, a, b, lam, x_nodes, rtol, atol, zeta0):
    """Integrate the extremal system node-to-node; see module docstring."""
    x_nodes = np.asarray(x_nodes, dtype=float)
    n = x_nodes.size
    boa2 = (b / a) * (b / a)
    lam = float(lam)

    def acc(y, z):
        return lam * z * z / y - (lam - 1.0) * boa2 * y

    y_out = np.empty(n)
    z_out = np.empty(n)
    y = 1.0
    z = float(zeta0)
    y_out[0] = y
    z_out[0] = z
    neg_tol = -1e-9 * max(1.0, (b / a))
    h = (x_nodes[-1] - x_nodes[0]) / max(100.0, 10.0 * n)
    for seg in range(n - 1):
        x = x_nodes[seg]
        x_end = x_nodes[seg + 1]
        if h <= 0.0 or not math.isfinite(h):
            h = (x_end - x) * 0.1
        while x < x_end:
            if h > x_end - x:
                h = x_end - x
            ky1 = z
            kz1 = acc(y, z)
            y2 = y + h * _A21 * ky1
            z2 = z + h * _A21 * kz1
            ky2 = z2
            kz2 = acc(y2, z2)
            y3 = y + h * (_A31 * ky1 + _A32 * ky2)
            z3 = z + h * (_A31 * kz1 + _A32 * kz2)
            ky3 = z3
            kz3 = acc(y3, z3)
            y4 = y + h * (_A41 * ky1 + _A42 * ky2 + _A43 * ky3)
            z4 = z + h * (_A41 * kz1 + _A42 * kz2 + _A43 * kz3)
            ky4 = z4
            kz4 = acc(y4, z4)
            y5 = y + h * (_A51 * ky1 + _A52 * ky2 + _A53 * ky3 + _A54 * ky4)
            z5 = z + h * (_A51 * kz1 + _A52 * kz2 + _A53 * kz3 + _A54 * kz4)
            ky5 = z5
            kz5 = acc(y5, z5)
            y6 = y + h * (_A61 * ky1 + _A62 * ky2 + _A63 * ky3 + _A64 * ky4 + _A65 * ky5)
            z6 = z + h * (_A61 * kz1 + _A62 * kz2 + _A63 * kz3 + _A64 * kz4 + _A65 * kz5)
            ky6 = z6
            kz6 = acc(y6, z6)
            y_new = y + h * (_B1 * ky1 + _B3 * ky3 + _B4 * ky4 + _B5 * ky5 + _B6 * ky6)
            z_new = z + h * (_B1 * kz1 + _B3 * kz3 + _B4 * kz4 + _B5 * kz5 + _B6 * kz6)
            ky7 = z_new
            kz7 = acc(y_new, z_new)
            err_y = h * (
                _E1 * ky1 + _E3 * ky3 + _E4 * ky4 + _E5 * ky5 + _E6 * ky6 + _E7 * ky7
            )
            scale = atol + rtol * max(abs(y), abs(y_new))
            ratio = abs(err_y) / scale
            if ratio <= 1.0:
                x += h
                y = y_new
                z = z_new
                if z < neg_tol:
                    y_out[seg + 1 :] = y
                    z_out[seg + 1 :] = z
                    return y_out, z_out, 1, x
                if y <= 0.0:
                    return y_out, z_out, 1, x
            grow = 0.9 * ratio ** -0.2 if ratio > 0.0 else 5.0
            h *= min(5.0, max(0.2, grow))
            if h < 1e-15 * max(1.0, abs(x_end)):
                return y_out, z_out, 2, x
        y_out[seg + 1] = y
        z_out[seg + 1] = z
    return y_out, z_out, 0, x_nodes[-1]
