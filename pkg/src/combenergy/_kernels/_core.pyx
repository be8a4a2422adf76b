# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in combenergy._kernels._pure.

Same algorithms, same constants; see _pure.py for the full contract.
"""

import numpy as np

from libc.math cimport fabs, pow, sqrt


def midpoint_energy(double[::1] t, double[::1] h, double a, double b, double lam):
    cdef Py_ssize_t n = t.shape[0]
    cdef Py_ssize_t k
    cdef double acc = 0.0, comp = 0.0, term, yk, tt
    cdef double dt, tm, hm, d, F
    for k in range(n - 1):
        dt = t[k + 1] - t[k]
        tm = 0.5 * (t[k + 1] + t[k])
        hm = 0.5 * (h[k + 1] + h[k])
        d = (h[k + 1] - h[k]) / dt
        F = (a * a * tm * tm * d * d + b * b * hm * hm) / (tm * pow(hm, 2.0 * lam))
        # Kahan compensated accumulation
        term = F * dt
        yk = term - comp
        tt = acc + yk
        comp = (tt - acc) - yk
        acc = tt
    return acc


def midpoint_energy_gradient(double[::1] t, double[::1] h, double a, double b, double lam):
    cdef Py_ssize_t n = t.shape[0]
    cdef Py_ssize_t k
    g_arr = np.zeros(n)
    cdef double[::1] g = g_arr
    cdef double dt, tm, hm, d, hp, F_H, F_D
    for k in range(n - 1):
        dt = t[k + 1] - t[k]
        tm = 0.5 * (t[k + 1] + t[k])
        hm = 0.5 * (h[k + 1] + h[k])
        d = (h[k + 1] - h[k]) / dt
        hp = pow(hm, -2.0 * lam)
        F_H = -2.0 * lam * a * a * tm * d * d * hp / hm + (2.0 - 2.0 * lam) * b * b * hm * hp / tm
        F_D = 2.0 * a * a * tm * d * hp
        g[k] += 0.5 * dt * F_H - F_D
        g[k + 1] += 0.5 * dt * F_H + F_D
    return g_arr


def midpoint_energy_hessian(double[::1] t, double[::1] h, double a, double b, double lam):
    cdef Py_ssize_t n = t.shape[0]
    cdef Py_ssize_t k
    diag_arr = np.zeros(n)
    off_arr = np.zeros(n - 1)
    cdef double[::1] diag = diag_arr
    cdef double[::1] off = off_arr
    cdef double dt, tm, hm, d, hp, F_HH, F_HD, F_DD, quarter
    for k in range(n - 1):
        dt = t[k + 1] - t[k]
        tm = 0.5 * (t[k + 1] + t[k])
        hm = 0.5 * (h[k + 1] + h[k])
        d = (h[k + 1] - h[k]) / dt
        hp = pow(hm, -2.0 * lam)
        F_HH = (
            2.0 * lam * (2.0 * lam + 1.0) * a * a * tm * d * d * hp / (hm * hm)
            + (2.0 - 2.0 * lam) * (1.0 - 2.0 * lam) * b * b * hp / tm
        )
        F_HD = -4.0 * lam * a * a * tm * d * hp / hm
        F_DD = 2.0 * a * a * tm * hp
        quarter = 0.25 * dt * F_HH
        diag[k] += quarter - F_HD + F_DD / dt
        diag[k + 1] += quarter + F_HD + F_DD / dt
        off[k] += quarter - F_DD / dt
    return diag_arr, off_arr


def pav_nondecreasing(double[::1] y, double[::1] w):
    cdef Py_ssize_t n = y.shape[0]
    cdef Py_ssize_t i, blk, pos, top = 0
    mean_arr = np.empty(n)
    weight_arr = np.empty(n)
    length_arr = np.empty(n, dtype=np.intp)
    out_arr = np.empty(n)
    cdef double[::1] mean = mean_arr
    cdef double[::1] weight = weight_arr
    cdef Py_ssize_t[::1] length = length_arr
    cdef double[::1] out = out_arr
    cdef double cm, cw, pm, pw
    cdef Py_ssize_t cl
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
    pos = 0
    for blk in range(top):
        for i in range(length[blk]):
            out[pos + i] = mean[blk]
        pos += length[blk]
    return out_arr


cdef inline double _acc(double y, double z, double lam, double boa2):
    return lam * z * z / y - (lam - 1.0) * boa2 * y


def shoot_path(double alpha, double a, double b, double lam, double[::1] x_nodes,
               double rtol, double atol, double zeta0):
    cdef Py_ssize_t n = x_nodes.shape[0]
    cdef Py_ssize_t seg
    y_arr = np.empty(n)
    z_arr = np.empty(n)
    cdef double[::1] y_out = y_arr
    cdef double[::1] z_out = z_arr
    cdef double boa2 = (b / a) * (b / a)
    cdef double y = 1.0, z = zeta0
    cdef double neg_tol = -1e-9 * max(1.0, b / a)
    cdef double x, x_end, h, scale, ratio, grow, err_y
    cdef double ky1, ky2, ky3, ky4, ky5, ky6, ky7
    cdef double kz1, kz2, kz3, kz4, kz5, kz6, kz7
    cdef double y2, y3, y4, y5, y6, z2, z3, z4, z5, z6, y_new, z_new
    cdef Py_ssize_t j

    cdef double A21 = 1.0 / 5.0
    cdef double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0
    cdef double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0
    cdef double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0
    cdef double A53 = 64448.0 / 6561.0, A54 = -212.0 / 729.0
    cdef double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0, A63 = 46732.0 / 5247.0
    cdef double A64 = 49.0 / 176.0, A65 = -5103.0 / 18656.0
    cdef double B1 = 35.0 / 384.0, B3 = 500.0 / 1113.0, B4 = 125.0 / 192.0
    cdef double B5 = -2187.0 / 6784.0, B6 = 11.0 / 84.0
    cdef double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0, E4 = 71.0 / 1920.0
    cdef double E5 = -17253.0 / 339200.0, E6 = 22.0 / 525.0, E7 = -1.0 / 40.0

    y_out[0] = y
    z_out[0] = z
    h = (x_nodes[n - 1] - x_nodes[0]) / max(100.0, 10.0 * n)
    for seg in range(n - 1):
        x = x_nodes[seg]
        x_end = x_nodes[seg + 1]
        if h <= 0.0:
            h = (x_end - x) * 0.1
        while x < x_end:
            if h > x_end - x:
                h = x_end - x
            ky1 = z
            kz1 = _acc(y, z, lam, boa2)
            y2 = y + h * A21 * ky1
            z2 = z + h * A21 * kz1
            ky2 = z2
            kz2 = _acc(y2, z2, lam, boa2)
            y3 = y + h * (A31 * ky1 + A32 * ky2)
            z3 = z + h * (A31 * kz1 + A32 * kz2)
            ky3 = z3
            kz3 = _acc(y3, z3, lam, boa2)
            y4 = y + h * (A41 * ky1 + A42 * ky2 + A43 * ky3)
            z4 = z + h * (A41 * kz1 + A42 * kz2 + A43 * kz3)
            ky4 = z4
            kz4 = _acc(y4, z4, lam, boa2)
            y5 = y + h * (A51 * ky1 + A52 * ky2 + A53 * ky3 + A54 * ky4)
            z5 = z + h * (A51 * kz1 + A52 * kz2 + A53 * kz3 + A54 * kz4)
            ky5 = z5
            kz5 = _acc(y5, z5, lam, boa2)
            y6 = y + h * (A61 * ky1 + A62 * ky2 + A63 * ky3 + A64 * ky4 + A65 * ky5)
            z6 = z + h * (A61 * kz1 + A62 * kz2 + A63 * kz3 + A64 * kz4 + A65 * kz5)
            ky6 = z6
            kz6 = _acc(y6, z6, lam, boa2)
            y_new = y + h * (B1 * ky1 + B3 * ky3 + B4 * ky4 + B5 * ky5 + B6 * ky6)
            z_new = z + h * (B1 * kz1 + B3 * kz3 + B4 * kz4 + B5 * kz5 + B6 * kz6)
            ky7 = z_new
            kz7 = _acc(y_new, z_new, lam, boa2)
            err_y = h * (E1 * ky1 + E3 * ky3 + E4 * ky4 + E5 * ky5 + E6 * ky6 + E7 * ky7)
            scale = atol + rtol * max(fabs(y), fabs(y_new))
            ratio = fabs(err_y) / scale
            if ratio <= 1.0:
                x += h
                y = y_new
                z = z_new
                if z < neg_tol:
                    for j in range(seg + 1, n):
                        y_out[j] = y
                        z_out[j] = z
                    return y_arr, z_arr, 1, x
                if y <= 0.0:
                    return y_arr, z_arr, 1, x
            if ratio > 0.0:
                grow = 0.9 * pow(ratio, -0.2)
            else:
                grow = 5.0
            h *= min(5.0, max(0.2, grow))
            if h < 1e-15 * max(1.0, fabs(x_end)):
                return y_arr, z_arr, 2, x
        y_out[seg + 1] = y
        z_out[seg + 1] = z
    return y_arr, z_arr, 0, x_nodes[n - 1]
