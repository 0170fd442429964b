"""latsec: security analysis of linear vehicle lateral dynamics.

Builds the two-state single-track model, finds the invariant zeros of its
three IMU output configurations, synthesizes the stealthy yaw-moment
injections those zeros admit, simulates attacked and attack-free runs with
a fixed-step RK4 core, and runs the longitudinal-acceleration consistency
detector.
"""

from .analysis import (
    InvariantZero,
    InvariantZeroReport,
    ObservabilityClass,
    classify,
    disruptive_condition,
    invariant_zeros,
    rank_sweep_check,
    rosenbrock,
)
from .attack import AttackGenerator, attack_signal, init_case1, init_case2, zero_dynamics_solution
from .detect import DetectorConfig, DetectorVerdict, detect
from .errors import ConfigError, DegenerateGeometryError
from .model import (
    SUV_PARAMS,
    LateralModel,
    OutputCase,
    OutputModel,
    VehicleParams,
    a_stability_margin,
    build_model,
    eigenvalues_A,
    output_model,
)
from .scenario import ScenarioConfig, build_scenario, dump_scenario, load_scenario, parse_scenario, preset
from .sim import (
    KERNEL_BACKEND,
    DelayedSine,
    Scenario,
    SteeringProfile,
    TabulatedSteering,
    Trajectory,
    ZeroSteering,
    derivative,
    integrate,
    measure,
    run_pair,
)

__version__ = "0.1.0"
