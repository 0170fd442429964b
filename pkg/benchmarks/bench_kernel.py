#!/usr/bin/env python3
"""Benchmark the compiled RK4 kernel against the pure-Python twin.

Runs the stealthy yaw-rate scenario at several step counts through both
backends, checks the results agree bit-for-bit, and prints the speedup.

    python benchmarks/bench_kernel.py
"""

import time

import numpy as np

from latsec import _kernel_py
from latsec.model import SUV_PARAMS, build_model

try:
    from latsec import _kernel
except ImportError:
    _kernel = None


def run(kernel, model, n_steps, dt):
    # case-1 injection against the yaw-rate output, onset at t = 0
    m0 = -(model.a21 / model.b2) * 5.0
    return kernel.rk4_lateral(
        model.a11, model.a12, model.a21, model.a22, model.b2, model.e1, model.e2,
        5.0, 0.0, n_steps, dt,
        kernel.STEER_DELAYED_SINE, 0.1, 10.0, 1.0, np.zeros(0), np.zeros(0),
        1, m0, model.a11, 0.0,
        1e6,
    )


def best_of(fn, repeats=3):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    model = build_model(SUV_PARAMS, 25.0)
    if _kernel is None:
        print("compiled kernel not available; nothing to compare")
        return

    print(f"{'steps':>10} {'python [s]':>12} {'compiled [s]':>13} {'speedup':>9}  identical")
    for n_steps in (10_000, 100_000, 1_000_000):
        dt = 1.0 / n_steps
        t_py = best_of(lambda: run(_kernel_py, model, n_steps, dt))
        t_c = best_of(lambda: run(_kernel, model, n_steps, dt))
        ref = run(_kernel_py, model, n_steps, dt)
        out = run(_kernel, model, n_steps, dt)
        same = all(np.array_equal(a, b) for a, b in zip(ref[:5], out[:5]))
        print(f"{n_steps:>10} {t_py:>12.4f} {t_c:>13.4f} {t_py / t_c:>8.1f}x  {same}")


if __name__ == "__main__":
    main()
