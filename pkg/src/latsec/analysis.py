"""Invariant zeros and strong observability/detectability of the lateral model.

An attacker who injects a signal into the yaw-moment channel (steering is a
mechanical command and stays untouched) can stay invisible at the output
exactly when the reduced system

    x_dot = A x + B M_z_a,    y = C x

has an invariant zero: a complex s0 where the system matrix

    P(s) = [ s I - A   -B ]
           [   C        0 ]

drops rank below 3.  For this fixed two-state model the zeros have exact
closed forms, which are the production path here:

    yaw-rate output        s0 = a11                       (always stable)
    lateral-accel output   s0 = (Cf + Cr) vx / (a Cf - b Cr)
    both outputs           no invariant zeros

The numerical rank sweep is kept as an independent oracle, not as the
production computation.

Classification: no zeros -> strongly observable (state reconstructible
despite the unknown injection, no stealthy attack possible); all zeros
stable -> strongly detectable only (stealthy attacks exist but their state
deviation decays); any unstable zero -> not strongly detectable (a stealthy
attack can diverge: disruptive).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateGeometryError
from .model import LateralModel, OutputCase, VehicleParams, output_model

__all__ = [
    "InvariantZero",
    "ObservabilityClass",
    "InvariantZeroReport",
    "yaw_rate_zero",
    "lateral_accel_zero",
    "rosenbrock",
    "invariant_zeros",
    "classify",
    "disruptive_condition",
    "numerical_rank",
    "rank_sweep_check",
]

# Singular values below RANK_RTOL * sigma_max count as zero in the rank
# oracle; the coefficients span ~1e-4 .. 1e2, so the tolerance is relative.
RANK_RTOL = 1e-9


@dataclass(frozen=True)
class InvariantZero:
    """One invariant zero; purely real for this model, complex kept for generality."""

    value: complex

    @property
    def stable(self) -> bool:
        return self.value.real < 0.0


class ObservabilityClass(Enum):
    STRONGLY_OBSERVABLE = "strongly observable"
    STRONGLY_DETECTABLE_ONLY = "strongly detectable (not strongly observable)"
    NOT_STRONGLY_DETECTABLE = "NOT strongly detectable"


@dataclass(frozen=True)
class InvariantZeroReport:
    case: OutputCase
    zeros: tuple[InvariantZero, ...]
    classification: ObservabilityClass
    attack_exists: bool
    disruptive: bool


def yaw_rate_zero(model: LateralModel) -> float:
    """Closed-form invariant zero for the yaw-rate-only output: s0 = a11."""
    return model.a11


def lateral_accel_zero(model: LateralModel) -> float:
    """Closed-form invariant zero for the lateral-acceleration-only output.

    s0 = (Cf + Cr) vx / (a Cf - b Cr); sign(s0) = sign(a Cf - b Cr).
    """
    p = model.params
    den = p.a * p.Cf - p.b * p.Cr
    if den == 0.0:
        raise DegenerateGeometryError(
            "a*Cf == b*Cr: the lateral-acceleration output row degenerates to "
            "[a11, 0] and the invariant zero is undefined"
        )
    return (p.Cf + p.Cr) * model.vx / den


def rosenbrock(model: LateralModel, case: OutputCase, s: complex) -> np.ndarray:
    """System matrix [sI - A, -B; C, 0] at frequency s.

    3x3 for the single-output cases, 4x3 when both channels are measured.
    """
    out = output_model(model, case)
    p = out.C.shape[0]
    P = np.zeros((2 + p, 3), dtype=complex)
    P[0, 0] = s - model.a11
    P[0, 1] = -model.a12
    P[1, 0] = -model.a21
    P[1, 1] = s - model.a22
    P[1, 2] = -model.b2
    P[2:, :2] = out.C
    return P


def invariant_zeros(model: LateralModel, case: OutputCase) -> list[InvariantZero]:
    """All invariant zeros of the reduced attack model for the given output case."""
    if case is OutputCase.YAW_RATE:
        return [InvariantZero(complex(yaw_rate_zero(model)))]
    if case is OutputCase.LATERAL_ACCEL:
        return [InvariantZero(complex(lateral_accel_zero(model)))]
    return []


def classify(model: LateralModel, case: OutputCase) -> InvariantZeroReport:
    """Observability classification and attack/disruptiveness verdict."""
    zeros = invariant_zeros(model, case)
    if not zeros:
        cls = ObservabilityClass.STRONGLY_OBSERVABLE
    elif all(z.stable for z in zeros):
        cls = ObservabilityClass.STRONGLY_DETECTABLE_ONLY
    else:
        cls = ObservabilityClass.NOT_STRONGLY_DETECTABLE
    return InvariantZeroReport(
        case=case,
        zeros=tuple(zeros),
        classification=cls,
        attack_exists=bool(zeros),
        disruptive=any(not z.stable for z in zeros),
    )


def disruptive_condition(params: VehicleParams) -> float:
    """a Cf - b Cr [N m/rad]; negative means stealthy attacks cannot diverge."""
    return params.a * params.Cf - params.b * params.Cr


def numerical_rank(matrix: np.ndarray, rtol: float = RANK_RTOL) -> int:
    sigma = np.linalg.svd(matrix, compute_uv=False)
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    return int(np.count_nonzero(sigma > rtol * sigma[0]))


def rank_sweep_check(
    model: LateralModel,
    case: OutputCase,
    samples: int,
    rng: np.random.Generator | None = None,
) -> bool:
    """Numerical confirmation of the closed-form zeros by random rank probing.

    Draws `samples` pseudo-random complex frequencies and requires the
    Rosenbrock matrix to have full column rank at each of them (skipping
    draws that land within tolerance of a closed-form zero), and to be
    rank-deficient at every closed-form zero itself.  This is the
    independent oracle for `invariant_zeros`, not the production path.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    if rng is None:
        rng = np.random.default_rng(0)
    zeros = [z.value for z in invariant_zeros(model, case)]

    for z in zeros:
        if numerical_rank(rosenbrock(model, case, z)) >= 3:
            return False

    scale = 2.0 * max([1.0, abs(model.a11), abs(model.a22)] + [abs(z) for z in zeros])
    guard = 1e-6 * scale
    for _ in range(samples):
        s = complex(rng.normal(0.0, scale), rng.normal(0.0, scale))
        if any(abs(s - z) < guard for z in zeros):
            continue
        if numerical_rank(rosenbrock(model, case, s)) != 3:
            return False
    return True
