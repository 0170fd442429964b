"""Fixed-step simulation of the full lateral dynamics, with optional injection.

Integrates x_dot = A x + B M_z + E delta with classical 4th-order
Runge-Kutta on a fixed grid.  Fixed step (not adaptive) keeps runs
deterministic and CSV output byte-reproducible; horizons are short and the
dynamics linear, so adaptivity buys nothing.  The steering profile and the
injected moment are known functions of time and are sampled at the RK4
substage times directly, avoiding zero-order-hold error.

The stepping loop is the hot path and lives in a compiled extension
(latsec._kernel) with a bit-identical pure-Python twin (latsec._kernel_py)
selected at import time; set LATSEC_PURE_PYTHON=1 to force the fallback.

Alongside the state, every trajectory carries the physically measured
channels recomputed from the state at each sample:

    a_y = a11 v_y + (a12 + vx) r + e1 delta      (accelerometer channel)
    a_x = -v_y r                                 (constant-vx relation)

Diverging runs (unstable injection) stop at a state-norm ceiling and are
marked, since the linear model stops being meaningful out there.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from .attack import AttackGenerator
from .errors import ConfigError
from .model import LateralModel, OutputCase

if os.environ.get("LATSEC_PURE_PYTHON"):
    from . import _kernel_py as _kernel

    KERNEL_BACKEND = "python"
else:
    try:
        from . import _kernel  # type: ignore[attr-defined]

        KERNEL_BACKEND = "compiled"
    except ImportError:
        from . import _kernel_py as _kernel

        KERNEL_BACKEND = "python"

__all__ = [
    "KERNEL_BACKEND",
    "SteeringProfile",
    "ZeroSteering",
    "DelayedSine",
    "TabulatedSteering",
    "Scenario",
    "Trajectory",
    "derivative",
    "measure",
    "integrate",
    "run_pair",
]

# Attacked lateral-accel runs get stiff: the zero-dynamics rate can exceed
# the plant poles by an order of magnitude, so cap |s0| * dt.
STIFFNESS_LIMIT = 0.05


class SteeringProfile:
    """Steering angle as a known function of time."""

    def delta(self, t: float) -> float:
        raise NotImplementedError

    def _kernel_args(self):
        """(kind, t_on, omega, amplitude, knot_times, knot_values)."""
        raise NotImplementedError


_EMPTY = np.zeros(0)


@dataclass(frozen=True)
class ZeroSteering(SteeringProfile):
    def delta(self, t: float) -> float:
        return 0.0

    def _kernel_args(self):
        return (_kernel.STEER_ZERO, 0.0, 0.0, 0.0, _EMPTY, _EMPTY)


@dataclass(frozen=True)
class DelayedSine(SteeringProfile):
    """0 until t_on, then amplitude * sin(omega * t)."""

    t_on: float = 0.1
    omega: float = 10.0
    amplitude: float = 1.0

    def delta(self, t: float) -> float:
        if t <= self.t_on:
            return 0.0
        return self.amplitude * math.sin(self.omega * t)

    def _kernel_args(self):
        return (_kernel.STEER_DELAYED_SINE, self.t_on, self.omega, self.amplitude, _EMPTY, _EMPTY)


@dataclass(frozen=True)
class TabulatedSteering(SteeringProfile):
    """Linear interpolation through (time, angle) samples, clamped at the ends."""

    times: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        t = np.ascontiguousarray(self.times, dtype=np.float64)
        v = np.ascontiguousarray(self.values, dtype=np.float64)
        if t.ndim != 1 or t.shape != v.shape or t.size < 2:
            raise ConfigError("steering table needs matching 1-D times/values with at least 2 samples")
        if not np.all(np.diff(t) > 0):
            raise ConfigError("steering table times must be strictly increasing")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    def delta(self, t: float) -> float:
        return self._interp(t)

    def _interp(self, t: float) -> float:
        ts, vals = self.times, self.values
        if t <= ts[0]:
            return float(vals[0])
        if t >= ts[-1]:
            return float(vals[-1])
        j = int(np.searchsorted(ts, t, side="right")) - 1
        w = (t - ts[j]) / (ts[j + 1] - ts[j])
        return float(vals[j] + (vals[j + 1] - vals[j]) * w)

    def _kernel_args(self):
        return (_kernel.STEER_TABLE, 0.0, 0.0, 0.0, self.times, self.values)


@dataclass(frozen=True)
class Scenario:
    """One simulation setup: model, measurement case, inputs, grid."""

    model: LateralModel
    case: OutputCase
    steering: SteeringProfile
    attack: AttackGenerator | None
    x0: tuple[float, float]
    duration: float
    dt: float
    norm_ceiling: float = 1e6

    def __post_init__(self):
        if not (self.dt > 0.0):
            raise ConfigError(f"dt must be positive, got {self.dt!r}")
        if self.duration < self.dt:
            raise ConfigError(f"duration {self.duration!r} must be at least one step dt={self.dt!r}")
        if self.norm_ceiling <= 0.0:
            raise ConfigError(f"norm_ceiling must be positive, got {self.norm_ceiling!r}")
        if self.attack is not None and self.case is OutputCase.LATERAL_ACCEL:
            s0 = self.attack.s0
            if abs(s0) * self.dt > STIFFNESS_LIMIT:
                raise ConfigError(
                    f"dt={self.dt:g} too coarse for the zero-dynamics rate s0={s0:.6g} 1/s: "
                    f"need |s0|*dt <= {STIFFNESS_LIMIT:g}, i.e. dt <= {STIFFNESS_LIMIT / abs(s0):.3g} s"
                )

    @property
    def n_steps(self) -> int:
        # +1e-9 absorbs representation error when duration is a decimal
        # multiple of dt (e.g. 1.0 / 1e-4).
        return int(math.floor(self.duration / self.dt + 1e-9))


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled run: state, inputs, measured channels, outputs."""

    t: np.ndarray = field(repr=False)
    vy: np.ndarray = field(repr=False)
    r: np.ndarray = field(repr=False)
    ay: np.ndarray = field(repr=False)
    ax: np.ndarray = field(repr=False)
    delta: np.ndarray = field(repr=False)
    mz_attack: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)
    diverged: bool = False

    def __post_init__(self):
        for arr in (self.t, self.vy, self.r, self.ay, self.ax, self.delta, self.mz_attack, self.y):
            arr.flags.writeable = False

    def __len__(self) -> int:
        return self.t.shape[0]


def derivative(model: LateralModel, state, Mz: float, delta: float) -> tuple[float, float]:
    """Right-hand side of the lateral dynamics at one state and input."""
    vy, r = state
    return (
        model.a11 * vy + model.a12 * r + model.e1 * delta,
        model.a21 * vy + model.a22 * r + model.b2 * Mz + model.e2 * delta,
    )


def measure(model: LateralModel, case: OutputCase, state, delta: float):
    """Output vector y for the case, plus the a_y and a_x channels.

    a_y includes the steering feedthrough; a_x uses the constant-vx relation
    a_x = -v_y r, which is what makes stealthy lateral-accel attacks visible
    to a longitudinal accelerometer.
    """
    vy, r = state
    ay = model.a11 * vy + (model.a12 + model.vx) * r + model.e1 * delta
    ax = -vy * r
    if case is OutputCase.YAW_RATE:
        y = np.array([r])
    elif case is OutputCase.LATERAL_ACCEL:
        y = np.array([ay])
    else:
        y = np.array([r, ay])
    return y, ay, ax


def _attack_kernel_args(attack: AttackGenerator | None):
    if attack is None:
        return (0, 0.0, 0.0, 0.0)
    k_vy, k_r = attack.moment_coefficients()
    # Both zero-dynamics components share one exponential, so the whole
    # signal collapses to m0 * exp(s0 (t - t0)).
    m0 = k_vy * attack.xi_vy + k_r * attack.xi_r
    return (1, m0, attack.s0, attack.t0)


def integrate(scenario: Scenario) -> Trajectory:
    """Run the scenario on the selected kernel backend."""
    m = scenario.model
    kind, t_on, omega, amp, ts, vals = scenario.steering._kernel_args()
    active, m0, s0, t0 = _attack_kernel_args(scenario.attack)

    t, vy, r, delta, mz, n_valid, diverged = _kernel.rk4_lateral(
        m.a11, m.a12, m.a21, m.a22, m.b2, m.e1, m.e2,
        scenario.x0[0], scenario.x0[1], scenario.n_steps, scenario.dt,
        kind, t_on, omega, amp, ts, vals,
        active, m0, s0, t0,
        scenario.norm_ceiling,
    )
    t = t[:n_valid]
    vy = vy[:n_valid]
    r = r[:n_valid]
    delta = delta[:n_valid]
    mz = mz[:n_valid]

    ay = m.a11 * vy + (m.a12 + m.vx) * r + m.e1 * delta
    ax = -vy * r
    if scenario.case is OutputCase.YAW_RATE:
        y = r[:, None].copy()
    elif scenario.case is OutputCase.LATERAL_ACCEL:
        y = ay[:, None].copy()
    else:
        y = np.column_stack([r, ay])
    return Trajectory(t=t, vy=vy, r=r, ay=ay, ax=ax, delta=delta, mz_attack=mz, y=y, diverged=diverged)


def run_pair(scenario: Scenario) -> tuple[Trajectory, Trajectory, float]:
    """Attacked run plus its matched attack-free twin under the same steering.

    The free run starts offset by the generator's onset state, so a stealthy
    injection leaves both outputs identical: max_output_gap measures how
    identical.  Pair scenarios are meant to use onset t0 = 0 (the comparison
    is defined from the onset).
    """
    if scenario.attack is None:
        raise ConfigError("run_pair needs a scenario with an attack generator enabled")
    gen = scenario.attack
    attacked = integrate(scenario)
    free_scenario = Scenario(
        model=scenario.model,
        case=scenario.case,
        steering=scenario.steering,
        attack=None,
        x0=(scenario.x0[0] - gen.xi_vy, scenario.x0[1] - gen.xi_r),
        duration=scenario.duration,
        dt=scenario.dt,
        norm_ceiling=scenario.norm_ceiling,
    )
    free = integrate(free_scenario)
    n = min(len(attacked), len(free))
    gap = float(np.max(np.linalg.norm(attacked.y[:n] - free.y[:n], axis=1))) if n else 0.0
    return attacked, free, gap
