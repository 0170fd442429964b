# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled RK4 kernel for the 2-state lateral dynamics.

Mirrors _kernel_py.py operation-for-operation: both backends must produce
bit-identical trajectories, so no fast-math, no reassociation, plain IEEE
doubles throughout.  Edits must be applied to both files.
"""

from libc.math cimport exp, sin

import numpy as np

STEER_ZERO = 0
STEER_DELAYED_SINE = 1
STEER_TABLE = 2


cdef double _steer(int kind, double t, double t_on, double omega, double amp,
                   double[::1] ts, double[::1] vals):
    cdef Py_ssize_t n, lo, hi, mid
    cdef double w
    if kind == 1:
        if t <= t_on:
            return 0.0
        return amp * sin(omega * t)
    if kind == 2:
        n = ts.shape[0]
        if t <= ts[0]:
            return vals[0]
        if t >= ts[n - 1]:
            return vals[n - 1]
        lo = 0
        hi = n - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if ts[mid] <= t:
                lo = mid
            else:
                hi = mid
        w = (t - ts[lo]) / (ts[lo + 1] - ts[lo])
        return vals[lo] + (vals[lo + 1] - vals[lo]) * w
    return 0.0


cdef double _moment(int active, double t, double m0, double s0, double t0):
    if active == 0 or t < t0:
        return 0.0
    return m0 * exp(s0 * (t - t0))


def rk4_lateral(
    double a11, double a12, double a21, double a22, double b2, double e1, double e2,
    double vy0, double r0, n_steps, double dt,
    steer_kind, double steer_t_on, double steer_omega, double steer_amp,
    steer_ts, steer_vals,
    atk_active, double atk_m0, double atk_s0, double atk_t0,
    double norm_ceiling,
):
    """Fixed-step RK4 over the 2-state lateral dynamics (compiled backend).

    Same contract as the pure-Python twin: returns
    (t, vy, r, delta, mz, n_valid, diverged).
    """
    cdef Py_ssize_t n = int(n_steps)
    cdef int kind = int(steer_kind)
    cdef int active = int(atk_active)

    t_np = np.empty(n + 1)
    vy_np = np.empty(n + 1)
    r_np = np.empty(n + 1)
    d_np = np.empty(n + 1)
    mz_np = np.empty(n + 1)
    ts_np = np.ascontiguousarray(steer_ts, dtype=np.float64)
    vals_np = np.ascontiguousarray(steer_vals, dtype=np.float64)

    cdef double[::1] t_arr = t_np
    cdef double[::1] vy_arr = vy_np
    cdef double[::1] r_arr = r_np
    cdef double[::1] d_arr = d_np
    cdef double[::1] mz_arr = mz_np
    cdef double[::1] ts = ts_np
    cdef double[::1] vals = vals_np

    cdef double half = 0.5 * dt
    cdef double ceil_sq = norm_ceiling * norm_ceiling
    cdef double vy = vy0
    cdef double r = r0
    cdef double t, tm, t1, d, m
    cdef double k1v, k1r, k2v, k2r, k3v, k3r, k4v, k4r, v2, r2, v3, r3, v4, r4
    cdef Py_ssize_t i
    cdef Py_ssize_t n_valid = n + 1
    cdef bint diverged = False

    t_arr[0] = 0.0
    vy_arr[0] = vy
    r_arr[0] = r
    d_arr[0] = _steer(kind, 0.0, steer_t_on, steer_omega, steer_amp, ts, vals)
    mz_arr[0] = _moment(active, 0.0, atk_m0, atk_s0, atk_t0)

    for i in range(n):
        t = i * dt
        tm = t + half
        t1 = (i + 1) * dt

        d = _steer(kind, t, steer_t_on, steer_omega, steer_amp, ts, vals)
        m = _moment(active, t, atk_m0, atk_s0, atk_t0)
        k1v = a11 * vy + a12 * r + e1 * d
        k1r = a21 * vy + a22 * r + b2 * m + e2 * d

        d = _steer(kind, tm, steer_t_on, steer_omega, steer_amp, ts, vals)
        m = _moment(active, tm, atk_m0, atk_s0, atk_t0)
        v2 = vy + half * k1v
        r2 = r + half * k1r
        k2v = a11 * v2 + a12 * r2 + e1 * d
        k2r = a21 * v2 + a22 * r2 + b2 * m + e2 * d

        v3 = vy + half * k2v
        r3 = r + half * k2r
        k3v = a11 * v3 + a12 * r3 + e1 * d
        k3r = a21 * v3 + a22 * r3 + b2 * m + e2 * d

        d = _steer(kind, t1, steer_t_on, steer_omega, steer_amp, ts, vals)
        m = _moment(active, t1, atk_m0, atk_s0, atk_t0)
        v4 = vy + dt * k3v
        r4 = r + dt * k3r
        k4v = a11 * v4 + a12 * r4 + e1 * d
        k4r = a21 * v4 + a22 * r4 + b2 * m + e2 * d

        vy = vy + dt * (k1v + 2.0 * k2v + 2.0 * k3v + k4v) / 6.0
        r = r + dt * (k1r + 2.0 * k2r + 2.0 * k3r + k4r) / 6.0

        t_arr[i + 1] = t1
        vy_arr[i + 1] = vy
        r_arr[i + 1] = r
        d_arr[i + 1] = d
        mz_arr[i + 1] = m

        if vy * vy + r * r > ceil_sq:
            n_valid = i + 2
            diverged = True
            break

    return t_np, vy_np, r_np, d_np, mz_np, int(n_valid), bool(diverged)
