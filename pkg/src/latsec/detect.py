"""Longitudinal-acceleration consistency detector for stealthy lateral-accel attacks.

A stealthy injection against the lateral-acceleration output pins a_y to
zero while v_y and r ride the zero-output manifold, both nonzero.  Under
constant longitudinal speed the longitudinal accelerometer sees
a_x = -v_y r, which cannot sit at zero over a time window while both states
are nonzero.  So the contradiction "a_y quiet AND a_x active, sustained" is
the attack signature.  Both conditions are required: ordinary driving
produces large a_x-like terms, but never with the lateral channel pinned
at zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .sim import Trajectory

__all__ = ["DetectorConfig", "DetectorVerdict", "detect"]


@dataclass(frozen=True)
class DetectorConfig:
    """Thresholds are defaults tuned to the bundled low-speed scenarios; override per deployment."""

    ay_quiet_threshold: float = 1e-3  # |a_y| below this counts as pinned [m/s^2]
    ax_alarm_threshold: float = 1e-3  # |a_x| above this counts as active [m/s^2]
    window: float = 1e-3  # minimum dwell of both conditions [s]

    def __post_init__(self):
        for name in ("ay_quiet_threshold", "ax_alarm_threshold", "window"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0.0:
                raise ConfigError(f"detector setting {name} must be positive, got {value!r}")


@dataclass(frozen=True)
class DetectorVerdict:
    attacked: bool
    first_alarm_time: float | None
    peak_ax: float


def detect(traj: Trajectory, cfg: DetectorConfig = DetectorConfig()) -> DetectorVerdict:
    """Scan a trajectory for a sustained quiet-a_y / active-a_x window.

    Fires when both conditions co-hold on a contiguous stretch spanning at
    least cfg.window seconds; first_alarm_time is the end of the first such
    stretch.  Raises ConfigError when the window exceeds the trajectory.
    """
    t = traj.t
    if len(t) < 2:
        raise ConfigError("trajectory too short for detection (need at least 2 samples)")
    dt = float(t[1] - t[0])
    span = float(t[-1] - t[0])
    if cfg.window > span:
        raise ConfigError(f"detector window {cfg.window:g} s exceeds trajectory span {span:g} s")
    # samples per window: k consecutive samples cover (k-1)*dt seconds
    k = int(math.floor(cfg.window / dt + 1e-9)) + 1

    mask = (np.abs(traj.ay) < cfg.ay_quiet_threshold) & (np.abs(traj.ax) > cfg.ax_alarm_threshold)
    peak_ax = float(np.max(np.abs(traj.ax)))

    run = 0
    for i, flag in enumerate(mask):
        run = run + 1 if flag else 0
        if run >= k:
            return DetectorVerdict(attacked=True, first_alarm_time=float(t[i]), peak_ax=peak_ax)
    return DetectorVerdict(attacked=False, first_alarm_time=None, peak_ax=peak_ax)
