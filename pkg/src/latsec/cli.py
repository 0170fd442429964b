"""Command-line front end.

    latsec analyze  (--scenario F | --preset NAME)
    latsec simulate (--scenario F | --preset NAME) --out runs/out.csv
    latsec pair     (--scenario F | --preset NAME) --out-prefix runs/pair
    latsec detect   runs/out.csv [--ay-quiet X] [--ax-alarm X] [--window X]
    latsec sweep    (--scenario F | --preset NAME) --param a --start 1.421
                    --stop 1.521 --points 101 --out sweep.csv

Exit codes: 0 clean, 1 configuration/validation error, 2 attack detected
(detect only, pipeline-friendly).
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

import numpy as np

from . import analysis, scenario as scenario_mod, sim
from .detect import DetectorConfig, detect as run_detector
from .errors import ConfigError, DegenerateGeometryError
from .model import a_stability_margin, build_model, eigenvalues_A
from .sim import Trajectory

CSV_HEADER = "t,vy,r,ay,ax,delta,mz_attack"
SWEEP_PARAMS = ("m", "Iz", "a", "b", "Cf", "Cr", "vx")


def write_trajectory_csv(traj: Trajectory, path) -> None:
    """One row per sample, 9 significant digits, LF-terminated."""
    data = np.column_stack([traj.t, traj.vy, traj.r, traj.ay, traj.ax, traj.delta, traj.mz_attack])
    try:
        np.savetxt(path, data, fmt="%.9g", delimiter=",", header=CSV_HEADER, comments="", newline="\n")
    except OSError as exc:
        raise ConfigError(f"cannot write {path}: {exc}") from None


def read_trajectory_csv(path) -> Trajectory:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            header = fh.readline().strip()
            if header != CSV_HEADER:
                raise ConfigError(f"{path}: expected header {CSV_HEADER!r}, found {header!r}")
            data = np.loadtxt(fh, delimiter=",", ndmin=2)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    except ValueError as exc:
        raise ConfigError(f"{path}: malformed trajectory CSV: {exc}") from None
    if data.size == 0 or data.shape[1] != 7:
        raise ConfigError(f"{path}: empty or malformed trajectory CSV")
    t, vy, r, ay, ax, delta, mz = data.T
    # outputs are not reconstructible without the case; detector needs ay/ax only
    return Trajectory(t=t, vy=vy, r=r, ay=ay, ax=ax, delta=delta, mz_attack=mz,
                      y=np.empty((t.shape[0], 0)))


def _load_config(args) -> scenario_mod.ScenarioConfig:
    if args.preset:
        return scenario_mod.preset(args.preset)
    return scenario_mod.load_scenario(args.scenario)


_FINDINGS_TABLE = [
    ("r", "-", "yes", "no"),
    ("ay", "a*Cf - b*Cr > 0", "yes", "yes"),
    ("ay", "a*Cf - b*Cr < 0", "yes", "no"),
    ("ay+ax", "-", "no (detector fires)", "no"),
    ("r+ay", "-", "no", "no"),
]


def cmd_analyze(args) -> int:
    cfg = _load_config(args)
    model = build_model(cfg.vehicle, cfg.vx)
    report = analysis.classify(model, cfg.case)
    margin = a_stability_margin(model)
    balance = analysis.disruptive_condition(cfg.vehicle)
    eigs = eigenvalues_A(model)

    v = cfg.vehicle
    print(f"vehicle: m={v.m:g} kg  Iz={v.Iz:g} kg*m^2  a={v.a:g} m  b={v.b:g} m  "
          f"Cf={v.Cf:g} N/rad  Cr={v.Cr:g} N/rad")
    print(f"model at vx={model.vx:g} m/s: a11={model.a11:.6g}  a12={model.a12:.6g}  "
          f"a21={model.a21:.6g}  a22={model.a22:.6g}  b2={model.b2:.6g}  "
          f"e1={model.e1:.6g}  e2={model.e2:.6g}")
    print(f"output case: {cfg.case.value}")
    if report.zeros:
        for z in report.zeros:
            val = z.value.real if z.value.imag == 0.0 else z.value
            print(f"invariant zero: s0 = {val:.6g} 1/s ({'stable' if z.stable else 'UNSTABLE'})")
    else:
        print("invariant zeros: none (strongly observable)")
    print(f"classification: {report.classification.value}")
    print(f"stealthy attack exists: {'yes' if report.attack_exists else 'no'}")
    if report.disruptive:
        print("verdict: DISRUPTIVE (a stealthy attack can diverge)")
    else:
        print("verdict: non-disruptive")
    print(f"eigenvalues of A: {eigs[0]:.6g}, {eigs[1]:.6g} 1/s")
    print(f"A-matrix stability margin: {margin:.6g} m^2 (Hurwitz: {'yes' if margin > 0 else 'not guaranteed'})")
    print(f"stiffness balance a*Cf - b*Cr: {balance:.6g} N*m/rad "
          f"({'safe: < 0 keeps stealthy attacks non-disruptive' if balance < 0 else 'UNSAFE: > 0 admits disruptive stealthy attacks'})")
    print()
    print("output-configuration summary (any vehicle):")
    print(f"  {'output':<8} {'condition':<18} {'stealthy attack?':<20} disruptive?")
    for row in _FINDINGS_TABLE:
        print(f"  {row[0]:<8} {row[1]:<18} {row[2]:<20} {row[3]}")
    return 0


def cmd_simulate(args) -> int:
    cfg = _load_config(args)
    scen = scenario_mod.build_scenario(cfg)
    traj = sim.integrate(scen)
    write_trajectory_csv(traj, args.out)
    print(f"wrote {args.out} ({len(traj)} samples, dt={scen.dt:g} s, backend={sim.KERNEL_BACKEND})")
    if traj.diverged:
        print(f"diverged: state norm exceeded {scen.norm_ceiling:g} at t = {traj.t[-1]:.6g} s; run truncated")
    return 0


def cmd_pair(args) -> int:
    cfg = _load_config(args)
    scen = scenario_mod.build_scenario(cfg)
    if scen.attack is None:
        raise ConfigError("pair needs a scenario with [attack] enabled = true")
    attacked, free, gap = sim.run_pair(scen)
    attacked_path = f"{args.out_prefix}_attacked.csv"
    free_path = f"{args.out_prefix}_free.csv"
    write_trajectory_csv(attacked, attacked_path)
    write_trajectory_csv(free, free_path)
    print(f"wrote {attacked_path} and {free_path}")
    print(f"max output gap: {gap:.6g}")
    return 0


def cmd_detect(args) -> int:
    traj = read_trajectory_csv(args.csv)
    cfg = DetectorConfig(
        ay_quiet_threshold=args.ay_quiet,
        ax_alarm_threshold=args.ax_alarm,
        window=args.window,
    )
    verdict = run_detector(traj, cfg)
    print(f"attacked: {'yes' if verdict.attacked else 'no'}")
    if verdict.first_alarm_time is not None:
        print(f"first alarm: {verdict.first_alarm_time:.6g} s")
    print(f"peak |ax|: {verdict.peak_ax:.6g} m/s^2")
    return 2 if verdict.attacked else 0


def cmd_sweep(args) -> int:
    cfg = _load_config(args)
    if args.param not in SWEEP_PARAMS:
        raise ConfigError(f"--param must be one of {', '.join(SWEEP_PARAMS)}; got {args.param!r}")
    if args.points < 2:
        raise ConfigError(f"--points must be at least 2 for a range, got {args.points}")
    if not (args.start < args.stop):
        raise ConfigError(f"empty sweep range: start {args.start!r} must be below stop {args.stop!r}")

    values = [args.start + i * (args.stop - args.start) / (args.points - 1) for i in range(args.points)]
    rows = []
    balances = []
    for value in values:
        if args.param == "vx":
            vehicle, vx = cfg.vehicle, value
        else:
            vehicle = dataclasses.replace(cfg.vehicle, **{args.param: value})
            vx = cfg.vx
        model = build_model(vehicle, vx)
        margin = a_stability_margin(model)
        balance = analysis.disruptive_condition(vehicle)
        try:
            report = analysis.classify(model, cfg.case)
            zero = report.zeros[0].value.real if report.zeros else float("nan")
            disruptive = float(report.disruptive)
        except DegenerateGeometryError:
            zero = float("nan")
            disruptive = float("nan")
        rows.append((value, zero, margin, balance, disruptive))
        balances.append(balance)

    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"{args.param},invariant_zero,stability_margin,stiffness_balance,disruptive\n")
            for row in rows:
                fh.write(",".join("%.9g" % x for x in row) + "\n")
    except OSError as exc:
        raise ConfigError(f"cannot write {args.out}: {exc}") from None
    print(f"wrote {args.out} ({len(rows)} points, case={cfg.case.value})")

    for i in range(1, len(balances)):
        if balances[i - 1] < 0.0 <= balances[i] or balances[i - 1] >= 0.0 > balances[i]:
            print(f"stiffness balance a*Cf - b*Cr crosses zero between "
                  f"{args.param}={values[i - 1]:.9g} and {args.param}={values[i]:.9g}")
    return 0


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; 2 is reserved for
    # "attack detected", so route usage errors through ConfigError -> 1.
    def error(self, message):
        raise ConfigError(message)


def _add_scenario_source(parser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--scenario", help="scenario file path")
    group.add_argument("--preset", choices=scenario_mod.PRESET_NAMES, help="built-in scenario")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="latsec",
                     description="Stealthy yaw-moment attack analysis for linear vehicle lateral dynamics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="invariant zeros, classification, stability margins")
    _add_scenario_source(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", help="run one scenario and write a trajectory CSV")
    _add_scenario_source(p)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("pair", help="attacked vs attack-free run under the same steering")
    _add_scenario_source(p)
    p.add_argument("--out-prefix", required=True, help="writes <prefix>_attacked.csv and <prefix>_free.csv")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("detect", help="run the acceleration-consistency detector on a trajectory CSV")
    p.add_argument("csv", help="trajectory CSV path")
    defaults = DetectorConfig()
    p.add_argument("--ay-quiet", type=float, default=defaults.ay_quiet_threshold,
                   help="quiet threshold on |ay| [m/s^2]")
    p.add_argument("--ax-alarm", type=float, default=defaults.ax_alarm_threshold,
                   help="alarm threshold on |ax| [m/s^2]")
    p.add_argument("--window", type=float, default=defaults.window,
                   help="dwell window [s]")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("sweep", help="invariant zero / margin / disruptiveness across a parameter range")
    _add_scenario_source(p)
    p.add_argument("--param", required=True, help=f"one of {', '.join(SWEEP_PARAMS)}")
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (ConfigError, DegenerateGeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())
