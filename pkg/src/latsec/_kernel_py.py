"""Pure-Python twin of the compiled RK4 kernel (fallback backend).

Every arithmetic expression here mirrors _kernel.pyx operation-for-operation
so both backends produce bit-identical trajectories; edits must be applied
to both files.
"""

from __future__ import annotations

from math import exp, sin

import numpy as np

STEER_ZERO = 0
STEER_DELAYED_SINE = 1
STEER_TABLE = 2


def _steer(kind, t, t_on, omega, amp, ts, vals):
    if kind == STEER_DELAYED_SINE:
        if t <= t_on:
            return 0.0
        return amp * sin(omega * t)
    if kind == STEER_TABLE:
        n = len(ts)
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


def _moment(active, t, m0, s0, t0):
    if active == 0 or t < t0:
        return 0.0
    return m0 * exp(s0 * (t - t0))


def rk4_lateral(
    a11, a12, a21, a22, b2, e1, e2,
    vy0, r0, n_steps, dt,
    steer_kind, steer_t_on, steer_omega, steer_amp, steer_ts, steer_vals,
    atk_active, atk_m0, atk_s0, atk_t0,
    norm_ceiling,
):
    """Fixed-step RK4 over the 2-state lateral dynamics.

    Inputs (steering, injected moment) are evaluated at the substage times
    from their closed forms.  Integration stops early when the state norm
    exceeds norm_ceiling.  Returns (t, vy, r, delta, mz, n_valid, diverged)
    with arrays of length n_steps + 1, valid up to n_valid.
    """
    n = int(n_steps)
    t_arr = np.empty(n + 1)
    vy_arr = np.empty(n + 1)
    r_arr = np.empty(n + 1)
    d_arr = np.empty(n + 1)
    mz_arr = np.empty(n + 1)

    half = 0.5 * dt
    ceil_sq = norm_ceiling * norm_ceiling
    vy = vy0
    r = r0

    t_arr[0] = 0.0
    vy_arr[0] = vy
    r_arr[0] = r
    d_arr[0] = _steer(steer_kind, 0.0, steer_t_on, steer_omega, steer_amp, steer_ts, steer_vals)
    mz_arr[0] = _moment(atk_active, 0.0, atk_m0, atk_s0, atk_t0)

    n_valid = n + 1
    diverged = False
    for i in range(n):
        t = i * dt
        tm = t + half
        t1 = (i + 1) * dt

        d = _steer(steer_kind, t, steer_t_on, steer_omega, steer_amp, steer_ts, steer_vals)
        m = _moment(atk_active, t, atk_m0, atk_s0, atk_t0)
        k1v = a11 * vy + a12 * r + e1 * d
        k1r = a21 * vy + a22 * r + b2 * m + e2 * d

        d = _steer(steer_kind, tm, steer_t_on, steer_omega, steer_amp, steer_ts, steer_vals)
        m = _moment(atk_active, tm, atk_m0, atk_s0, atk_t0)
        v2 = vy + half * k1v
        r2 = r + half * k1r
        k2v = a11 * v2 + a12 * r2 + e1 * d
        k2r = a21 * v2 + a22 * r2 + b2 * m + e2 * d

        v3 = vy + half * k2v
        r3 = r + half * k2r
        k3v = a11 * v3 + a12 * r3 + e1 * d
        k3r = a21 * v3 + a22 * r3 + b2 * m + e2 * d

        d = _steer(steer_kind, t1, steer_t_on, steer_omega, steer_amp, steer_ts, steer_vals)
        m = _moment(atk_active, t1, atk_m0, atk_s0, atk_t0)
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

    return t_arr, vy_arr, r_arr, d_arr, mz_arr, n_valid, diverged
