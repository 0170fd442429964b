"""Linear single-track (bicycle) model of vehicle lateral dynamics.

State is x = [v_y, r] (lateral velocity, yaw rate).  Two inputs act on it:
the driver's steering angle delta and a corrective yaw moment M_z (e.g.
from in-wheel motors), giving

    x_dot = A x + B M_z + E delta,
    A = [[a11, a12], [a21, a22]],  B = [0, b2]^T,  E = [e1, e2]^T,

with coefficients assembled from mass, yaw inertia, axle distances and
cornering stiffnesses at a fixed longitudinal speed v_x:

    a11 = -2 (Cf + Cr) / (vx m)          a12 = 2 (b Cr - a Cf) / (vx m) - vx
    a21 = 2 (b Cr - a Cf) / (vx Iz)      a22 = -2 (a^2 Cf + b^2 Cr) / (vx Iz)
    b2  = 1 / Iz     e1 = 2 Cf / m       e2 = 2 a Cf / Iz

Three measurement configurations are supported: yaw rate only (C = [0 1]),
lateral acceleration only (a_y = v_y_dot + vx r, i.e. C = [a11, a12+vx]
with feedthrough e1 from delta), or both stacked.

All coefficients are frozen at construction; v_x is treated as a scenario
constant throughout.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError

__all__ = [
    "VehicleParams",
    "LateralModel",
    "OutputCase",
    "OutputModel",
    "SUV_PARAMS",
    "build_model",
    "output_model",
    "a_stability_margin",
    "eigenvalues_A",
]


@dataclass(frozen=True)
class VehicleParams:
    """Physical vehicle constants.

    m   -- total mass [kg]
    Iz  -- yaw moment of inertia [kg m^2]
    a   -- CG to front axle distance [m]
    b   -- CG to rear axle distance [m]
    Cf  -- front cornering stiffness [N/rad]
    Cr  -- rear cornering stiffness [N/rad]
    """

    m: float
    Iz: float
    a: float
    b: float
    Cf: float
    Cr: float

    def __post_init__(self):
        for name in ("m", "Iz", "a", "b", "Cf", "Cr"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0.0:
                raise ConfigError(f"vehicle parameter {name} must be a positive finite number, got {value!r}")


# Production sports-utility-vehicle parameter set used by the bundled
# scenario presets and as the scenario-file default.
SUV_PARAMS = VehicleParams(m=2270.0, Iz=4600.0, a=1.421, b=1.438, Cf=69800.0, Cr=69600.0)


class OutputCase(enum.Enum):
    """Which IMU channels the output model exposes."""

    YAW_RATE = "yaw_rate"
    LATERAL_ACCEL = "lateral_accel"
    BOTH = "both"

    @classmethod
    def from_key(cls, key: str) -> "OutputCase":
        try:
            return cls(key)
        except ValueError:
            valid = ", ".join(c.value for c in cls)
            raise ConfigError(f"unknown output case {key!r}; expected one of: {valid}") from None


@dataclass(frozen=True)
class LateralModel:
    """State-space coefficients of the lateral dynamics at a fixed v_x."""

    vx: float
    a11: float
    a12: float
    a21: float
    a22: float
    b2: float
    e1: float
    e2: float
    params: VehicleParams

    @property
    def A(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a21, self.a22]])

    @property
    def B(self) -> np.ndarray:
        return np.array([0.0, self.b2])

    @property
    def E(self) -> np.ndarray:
        return np.array([self.e1, self.e2])


@dataclass(frozen=True)
class OutputModel:
    """Output matrix C and steering feedthrough for one measurement case."""

    C: np.ndarray = field(repr=False)
    D_delta: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.C.flags.writeable = False
        self.D_delta.flags.writeable = False


def build_model(params: VehicleParams, vx: float) -> LateralModel:
    """Assemble the state-space coefficients at longitudinal speed vx.

    Every coefficient divides by vx, so vx must be strictly positive.
    """
    if not math.isfinite(vx) or vx <= 0.0:
        raise ConfigError(f"vx must be a positive finite number, got {vx!r} (model undefined at vx = 0)")
    m, Iz, a, b, Cf, Cr = params.m, params.Iz, params.a, params.b, params.Cf, params.Cr
    rear_front_imbalance = b * Cr - a * Cf
    return LateralModel(
        vx=vx,
        a11=-2.0 * (Cf + Cr) / (vx * m),
        a12=2.0 * rear_front_imbalance / (vx * m) - vx,
        a21=2.0 * rear_front_imbalance / (vx * Iz),
        a22=-2.0 * (a * a * Cf + b * b * Cr) / (vx * Iz),
        b2=1.0 / Iz,
        e1=2.0 * Cf / m,
        e2=2.0 * a * Cf / Iz,
        params=params,
    )


def output_model(model: LateralModel, case: OutputCase) -> OutputModel:
    """C and D_delta for the chosen measurement configuration."""
    ay_row = [model.a11, model.a12 + model.vx]
    if case is OutputCase.YAW_RATE:
        return OutputModel(C=np.array([[0.0, 1.0]]), D_delta=np.array([0.0]))
    if case is OutputCase.LATERAL_ACCEL:
        return OutputModel(C=np.array([ay_row]), D_delta=np.array([model.e1]))
    return OutputModel(
        C=np.array([[0.0, 1.0], ay_row]),
        D_delta=np.array([0.0, model.e1]),
    )


def a_stability_margin(model: LateralModel) -> float:
    """Understeer-type stability margin of the A matrix [m^2].

    Returns (a+b)^2 - m (a Cf - b Cr) vx^2 / (Cr Cf).  A positive value
    guarantees both eigenvalues of A have negative real parts.
    """
    p = model.params
    wheelbase = p.a + p.b
    return wheelbase * wheelbase - p.m * (p.a * p.Cf - p.b * p.Cr) / (p.Cr * p.Cf) * model.vx * model.vx


def eigenvalues_A(model: LateralModel) -> tuple[complex, complex]:
    """Both eigenvalues of A by the explicit 2x2 quadratic formula.

    Sorted by real part ascending (then imaginary part).  The general
    eigensolver is deliberately avoided: at this fixed dimension the
    closed form is exact.
    """
    tr = model.a11 + model.a22
    det = model.a11 * model.a22 - model.a12 * model.a21
    disc = tr * tr - 4.0 * det
    if disc >= 0.0:
        root = math.sqrt(disc)
        lo = complex((tr - root) / 2.0, 0.0)
        hi = complex((tr + root) / 2.0, 0.0)
        return (lo, hi)
    imag = math.sqrt(-disc) / 2.0
    return (complex(tr / 2.0, -imag), complex(tr / 2.0, imag))
