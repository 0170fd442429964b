"""Open-loop synthesis of stealthy yaw-moment injection signals.

The generator owns a copy of the zero dynamics: the difference between the
attacked and the attack-free state, evolving on the zero-output manifold at
the rate of the excited invariant zero.  Because that difference obeys a
scalar-rate linear ODE, the generator propagates it in closed form
(xi(t) = xi(t0) * exp(s0 (t - t0))) and never needs plant feedback -- the
injected moment is a known function of time:

  yaw-rate output (case 1):   M_z_a(t) = -(a21 / b2) * xi_vy(t),
                              manifold r = 0, rate s0 = a11;

  lateral-accel output (case 2):
      M_z_a(t) = -((a11^2 + a21 (a12+vx)) xi_vy(t)
                   + (a11 a12 + (a12+vx) a22) xi_r(t)) / (b2 (a12+vx)),
      manifold a11 xi_vy + (a12+vx) xi_r = 0, rate s0 per the closed form.

Before the onset time t0 the signal is identically zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .analysis import lateral_accel_zero, yaw_rate_zero
from .model import LateralModel, OutputCase

__all__ = ["AttackGenerator", "init_case1", "init_case2", "attack_signal", "zero_dynamics_solution"]


@dataclass(frozen=True)
class AttackGenerator:
    """Autonomous zero-dynamics state (at onset) plus the zero it excites."""

    case: OutputCase
    model: LateralModel
    xi_vy: float  # difference lateral velocity at t0 [m/s]
    xi_r: float  # difference yaw rate at t0 [rad/s]
    t0: float  # onset time [s]
    s0: float  # excited invariant zero [1/s]

    def moment_coefficients(self) -> tuple[float, float]:
        """(K_vy, K_r) with M_z_a = K_vy * xi_vy(t) + K_r * xi_r(t)."""
        m = self.model
        if self.case is OutputCase.YAW_RATE:
            return (-(m.a21 / m.b2), 0.0)
        apv = m.a12 + m.vx
        k_vy = -(m.a11 * m.a11 + m.a21 * apv) / (m.b2 * apv)
        k_r = -(m.a11 * m.a12 + apv * m.a22) / (m.b2 * apv)
        return (k_vy, k_r)


def init_case1(model: LateralModel, delta_vy0: float, t0: float = 0.0) -> AttackGenerator:
    """Stealthy attack against the yaw-rate output.

    delta_vy0 is the lateral-velocity gap between the attacked and the
    attack-free trajectory at onset; the yaw-rate gap is pinned to zero.
    """
    return AttackGenerator(
        case=OutputCase.YAW_RATE,
        model=model,
        xi_vy=delta_vy0,
        xi_r=0.0,
        t0=t0,
        s0=yaw_rate_zero(model),
    )


def init_case2(model: LateralModel, r0: float, t0: float = 0.0) -> AttackGenerator:
    """Stealthy attack against the lateral-acceleration output.

    The onset state must sit on the zero-output manifold, so the
    lateral-velocity component is derived from the chosen yaw-rate gap:
    xi_vy = -(a12 + vx) r0 / a11.  Raises DegenerateGeometryError when
    a*Cf == b*Cr.
    """
    s0 = lateral_accel_zero(model)  # raises on degenerate geometry
    return AttackGenerator(
        case=OutputCase.LATERAL_ACCEL,
        model=model,
        xi_vy=-(model.a12 + model.vx) * r0 / model.a11,
        xi_r=r0,
        t0=t0,
        s0=s0,
    )


def zero_dynamics_solution(gen: AttackGenerator, t: float) -> tuple[float, float]:
    """Exact attacked-minus-free difference state at time t.

    (0, 0) before onset; afterwards the onset state scaled by exp(s0 (t-t0)).
    """
    if t < gen.t0:
        return (0.0, 0.0)
    growth = math.exp(gen.s0 * (t - gen.t0))
    return (gen.xi_vy * growth, gen.xi_r * growth)


def attack_signal(gen: AttackGenerator, t: float) -> float:
    """Injected yaw moment [N m] at time t; zero before onset."""
    if t < gen.t0:
        return 0.0
    vy, r = zero_dynamics_solution(gen, t)
    k_vy, k_r = gen.moment_coefficients()
    return k_vy * vy + k_r * r
