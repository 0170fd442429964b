"""Scenario files: INI-style configuration, defaults, and named presets.

A scenario file has four sections, all optional; missing keys fall back to
the defaults below (the bundled SUV vehicle and the standard highway run).

    [vehicle]  m, Iz, a, b, Cf, Cr
    [run]      vx, case (yaw_rate|lateral_accel|both), duration, dt,
               vy0, r0, steering (zero|delayed_sine), t_on, omega, amplitude
    [attack]   enabled, kind (case1|case2), delta_vy0, r0, t0
    [detector] ay_quiet, ax_alarm, window

Unknown sections or keys are rejected, naming the offender: scenario files
are hand-written and silent typos would change the experiment.

The presets fig3..fig6 are the four canonical experiments, exposed on the
CLI via --preset:

    fig3  stealthy yaw-rate attack, zero-output run at vx = 25
    fig4  the same attack against a paired attack-free run with sine steering
    fig5  stealthy lateral-accel attack, stable zero dynamics at vx = 5
    fig6  the same with shifted front axle (a = 1.521 m): unstable, diverges

The lateral-accel presets start exactly on the zero-output manifold, with
vy0 derived from the attack's yaw-rate offset rather than hand-entered.
"""

from __future__ import annotations

import configparser
import dataclasses
from dataclasses import dataclass

from .attack import AttackGenerator, init_case1, init_case2
from .detect import DetectorConfig
from .errors import ConfigError
from .model import SUV_PARAMS, LateralModel, OutputCase, VehicleParams, build_model
from .sim import DelayedSine, Scenario, SteeringProfile, ZeroSteering

__all__ = [
    "ScenarioConfig",
    "PRESET_NAMES",
    "preset",
    "parse_scenario",
    "load_scenario",
    "dump_scenario",
    "build_scenario",
    "build_detector",
]

PRESET_NAMES = ("fig3", "fig4", "fig5", "fig6")

_BOOL_STATES = configparser.ConfigParser.BOOLEAN_STATES


@dataclass(frozen=True)
class ScenarioConfig:
    """Raw scenario-file values; build_scenario turns them into runnable objects."""

    vehicle: VehicleParams = SUV_PARAMS
    vx: float = 25.0
    case: OutputCase = OutputCase.YAW_RATE
    duration: float = 1.0
    dt: float = 1e-4
    vy0: float = 0.0
    r0: float = 0.0
    steering: str = "zero"
    t_on: float = 0.1
    omega: float = 10.0
    amplitude: float = 1.0
    attack_enabled: bool = False
    attack_kind: str = "case1"
    attack_delta_vy0: float = 5.0
    attack_r0: float = 1.0
    attack_t0: float = 0.0
    ay_quiet: float = 1e-3
    ax_alarm: float = 1e-3
    window: float = 1e-3


def _get_float(section, section_name, key, default):
    if key not in section:
        return default
    raw = section[key]
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"[{section_name}] {key}: not a number: {raw!r}") from None


def _get_bool(section, section_name, key, default):
    if key not in section:
        return default
    raw = section[key].strip().lower()
    if raw not in _BOOL_STATES:
        raise ConfigError(f"[{section_name}] {key}: not a boolean: {section[key]!r}")
    return _BOOL_STATES[raw]


def _get_choice(section, section_name, key, default, choices):
    raw = section.get(key, default)
    if raw not in choices:
        raise ConfigError(f"[{section_name}] {key}: expected one of {', '.join(choices)}; got {raw!r}")
    return raw


_SCHEMA = {
    "vehicle": {"m", "Iz", "a", "b", "Cf", "Cr"},
    "run": {"vx", "case", "duration", "dt", "vy0", "r0", "steering", "t_on", "omega", "amplitude"},
    "attack": {"enabled", "kind", "delta_vy0", "r0", "t0"},
    "detector": {"ay_quiet", "ax_alarm", "window"},
}


def parse_scenario(text: str) -> ScenarioConfig:
    """Parse scenario text, rejecting unknown sections and keys by name."""
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # keep Iz/Cf/Cr case-sensitive
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"scenario file not parseable: {exc}") from None

    for section_name in parser.sections():
        if section_name not in _SCHEMA:
            raise ConfigError(f"unknown scenario section [{section_name}]")
        for key in parser[section_name]:
            if key not in _SCHEMA[section_name]:
                raise ConfigError(f"unknown key {key!r} in section [{section_name}]")

    defaults = ScenarioConfig()
    veh = parser["vehicle"] if parser.has_section("vehicle") else {}
    run = parser["run"] if parser.has_section("run") else {}
    atk = parser["attack"] if parser.has_section("attack") else {}
    det = parser["detector"] if parser.has_section("detector") else {}

    vehicle = VehicleParams(
        m=_get_float(veh, "vehicle", "m", defaults.vehicle.m),
        Iz=_get_float(veh, "vehicle", "Iz", defaults.vehicle.Iz),
        a=_get_float(veh, "vehicle", "a", defaults.vehicle.a),
        b=_get_float(veh, "vehicle", "b", defaults.vehicle.b),
        Cf=_get_float(veh, "vehicle", "Cf", defaults.vehicle.Cf),
        Cr=_get_float(veh, "vehicle", "Cr", defaults.vehicle.Cr),
    )
    return ScenarioConfig(
        vehicle=vehicle,
        vx=_get_float(run, "run", "vx", defaults.vx),
        case=OutputCase.from_key(_get_choice(run, "run", "case", defaults.case.value,
                                             tuple(c.value for c in OutputCase))),
        duration=_get_float(run, "run", "duration", defaults.duration),
        dt=_get_float(run, "run", "dt", defaults.dt),
        vy0=_get_float(run, "run", "vy0", defaults.vy0),
        r0=_get_float(run, "run", "r0", defaults.r0),
        steering=_get_choice(run, "run", "steering", defaults.steering, ("zero", "delayed_sine")),
        t_on=_get_float(run, "run", "t_on", defaults.t_on),
        omega=_get_float(run, "run", "omega", defaults.omega),
        amplitude=_get_float(run, "run", "amplitude", defaults.amplitude),
        attack_enabled=_get_bool(atk, "attack", "enabled", defaults.attack_enabled),
        attack_kind=_get_choice(atk, "attack", "kind", defaults.attack_kind, ("case1", "case2")),
        attack_delta_vy0=_get_float(atk, "attack", "delta_vy0", defaults.attack_delta_vy0),
        attack_r0=_get_float(atk, "attack", "r0", defaults.attack_r0),
        attack_t0=_get_float(atk, "attack", "t0", defaults.attack_t0),
        ay_quiet=_get_float(det, "detector", "ay_quiet", defaults.ay_quiet),
        ax_alarm=_get_float(det, "detector", "ax_alarm", defaults.ax_alarm),
        window=_get_float(det, "detector", "window", defaults.window),
    )


def load_scenario(path) -> ScenarioConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read scenario file {path}: {exc}") from None
    return parse_scenario(text)


def dump_scenario(cfg: ScenarioConfig) -> str:
    """Serialize to scenario-file text; floats round-trip exactly via repr."""
    v = cfg.vehicle
    lines = [
        "[vehicle]",
        f"m = {v.m!r}",
        f"Iz = {v.Iz!r}",
        f"a = {v.a!r}",
        f"b = {v.b!r}",
        f"Cf = {v.Cf!r}",
        f"Cr = {v.Cr!r}",
        "",
        "[run]",
        f"vx = {cfg.vx!r}",
        f"case = {cfg.case.value}",
        f"duration = {cfg.duration!r}",
        f"dt = {cfg.dt!r}",
        f"vy0 = {cfg.vy0!r}",
        f"r0 = {cfg.r0!r}",
        f"steering = {cfg.steering}",
        f"t_on = {cfg.t_on!r}",
        f"omega = {cfg.omega!r}",
        f"amplitude = {cfg.amplitude!r}",
        "",
        "[attack]",
        f"enabled = {'true' if cfg.attack_enabled else 'false'}",
        f"kind = {cfg.attack_kind}",
        f"delta_vy0 = {cfg.attack_delta_vy0!r}",
        f"r0 = {cfg.attack_r0!r}",
        f"t0 = {cfg.attack_t0!r}",
        "",
        "[detector]",
        f"ay_quiet = {cfg.ay_quiet!r}",
        f"ax_alarm = {cfg.ax_alarm!r}",
        f"window = {cfg.window!r}",
        "",
    ]
    return "\n".join(lines)


def _steering_profile(cfg: ScenarioConfig) -> SteeringProfile:
    if cfg.steering == "delayed_sine":
        return DelayedSine(t_on=cfg.t_on, omega=cfg.omega, amplitude=cfg.amplitude)
    return ZeroSteering()


def _attack_generator(cfg: ScenarioConfig, model: LateralModel) -> AttackGenerator | None:
    if not cfg.attack_enabled:
        return None
    if cfg.attack_kind == "case1":
        return init_case1(model, cfg.attack_delta_vy0, cfg.attack_t0)
    return init_case2(model, cfg.attack_r0, cfg.attack_t0)


def build_scenario(cfg: ScenarioConfig) -> Scenario:
    model = build_model(cfg.vehicle, cfg.vx)
    return Scenario(
        model=model,
        case=cfg.case,
        steering=_steering_profile(cfg),
        attack=_attack_generator(cfg, model),
        x0=(cfg.vy0, cfg.r0),
        duration=cfg.duration,
        dt=cfg.dt,
    )


def build_detector(cfg: ScenarioConfig) -> DetectorConfig:
    return DetectorConfig(
        ay_quiet_threshold=cfg.ay_quiet,
        ax_alarm_threshold=cfg.ax_alarm,
        window=cfg.window,
    )


def preset(name: str) -> ScenarioConfig:
    """Named canonical experiments; see the module docstring."""
    if name == "fig3":
        return ScenarioConfig(
            vx=25.0, case=OutputCase.YAW_RATE, duration=1.0, dt=1e-4,
            vy0=5.0, r0=0.0, steering="zero",
            attack_enabled=True, attack_kind="case1", attack_delta_vy0=5.0, attack_t0=0.0,
        )
    if name == "fig4":
        return ScenarioConfig(
            vx=25.0, case=OutputCase.YAW_RATE, duration=1.0, dt=1e-4,
            vy0=5.0, r0=0.0,
            steering="delayed_sine", t_on=0.1, omega=10.0, amplitude=1.0,
            attack_enabled=True, attack_kind="case1", attack_delta_vy0=10.0, attack_t0=0.0,
        )
    if name == "fig5":
        return _manifold_start(ScenarioConfig(
            vx=5.0, case=OutputCase.LATERAL_ACCEL, duration=0.02, dt=1e-6,
            steering="zero",
            attack_enabled=True, attack_kind="case2", attack_r0=1.0, attack_t0=0.0,
        ))
    if name == "fig6":
        return _manifold_start(ScenarioConfig(
            vehicle=dataclasses.replace(SUV_PARAMS, a=1.521),
            vx=5.0, case=OutputCase.LATERAL_ACCEL, duration=0.15, dt=1e-6,
            steering="zero",
            attack_enabled=True, attack_kind="case2", attack_r0=1.0, attack_t0=0.0,
        ))
    raise ConfigError(f"unknown preset {name!r}; expected one of: {', '.join(PRESET_NAMES)}")


def _manifold_start(cfg: ScenarioConfig) -> ScenarioConfig:
    gen = init_case2(build_model(cfg.vehicle, cfg.vx), cfg.attack_r0, cfg.attack_t0)
    return dataclasses.replace(cfg, vy0=gen.xi_vy, r0=gen.xi_r)
