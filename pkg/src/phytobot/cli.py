"""Command-line front end.

Subcommands wrap the library one-to-one: ``fit`` estimates growth
parameters from a displacement CSV, ``growth`` tabulates the growth law,
``density`` computes power/energy densities, ``rover`` and ``gripper`` run
the simulators, and ``synth`` generates seeded test series.

Exit codes are a stable contract: 0 success, 2 input error, 3 soft failure
(non-converged fit, stalled rover).  Every run is deterministic given its
inputs; ``--seed`` is the only entropy source, and ``--manifest PATH``
records a JSON run manifest (resolved configuration, input digests, output
paths) from which the run can be replayed byte-for-byte.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .actuation import SeedSpec, energy_density, power_density
from .audit import format_notes
from .errors import PhytobotError
from .fitting import (
    FitOptions,
    fit_logistic,
    read_samples_csv,
    synth_series,
    write_samples_csv,
)
from .gripper import (
    default_gripper_config,
    default_led_schedule,
    load_gripper_config,
    read_schedule_csv,
    simulate_gripper,
    write_events_csv,
    write_gripper_trajectory_csv,
)
from .growth import DARK_GROWTH, GrowthParams, length_at, peak_rate, rate_at, time_grid
from .rover import (
    STALLED,
    default_rover_config,
    load_rover_config,
    simulate_rover,
    summarize_trajectory,
    write_trajectory_csv,
)

__all__ = ["RunManifest", "main", "entry", "run_from_manifest"]

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_SOFT_FAILURE = 3


@dataclass(frozen=True)
class RunManifest:
    """Everything that determines a run: replaying it reproduces the outputs."""

    subcommand: str
    config: dict
    inputs: dict[str, str] = field(default_factory=dict)  # path -> sha256
    outputs: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


def _sha256(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _emit_manifest(args: argparse.Namespace, config: dict, inputs: list[str], outputs: list[str]) -> None:
    if not getattr(args, "manifest", None):
        return
    manifest = RunManifest(
        subcommand=args.subcommand,
        config=config,
        inputs={p: _sha256(p) for p in inputs},
        outputs=sorted(o for o in outputs if o != "-"),
    )
    Path(args.manifest).write_text(manifest.to_json(), encoding="utf-8")


def _write_json(dest: str, doc: dict) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if dest == "-":
        sys.stdout.write(text)
    else:
        Path(dest).write_text(text, encoding="utf-8")


def _dest(writer, dest: str, *payload) -> None:
    writer(sys.stdout if dest == "-" else dest, *payload)


# --- subcommand handlers ---------------------------------------------------


def cmd_fit(args: argparse.Namespace) -> int:
    samples = read_samples_csv(args.input)
    options = FitOptions(
        max_iterations=args.max_iterations,
        step_tolerance=args.step_tolerance,
        damping_init=args.damping_init,
    )
    report = fit_logistic(samples, options)
    doc = {
        "r_per_h": report.params.r,
        "k_mm": report.params.K,
        "l0_mm": report.params.L0,
        "rmse_mm": report.rmse,
        "iterations": report.iterations,
        "converged": report.converged,
    }
    _write_json(args.out_json, doc)
    if args.out_residuals:
        with Path(args.out_residuals).open("w", newline="\n", encoding="utf-8") as fh:
            fh.write("t_h,residual_mm\n")
            for s, r in zip(samples, report.residuals):
                fh.write(f"{s.t:.6g},{r:.6g}\n")
    _emit_manifest(
        args,
        {
            "input": args.input,
            "max_iterations": args.max_iterations,
            "step_tolerance": args.step_tolerance,
            "damping_init": args.damping_init,
            "out_json": args.out_json,
            "out_residuals": args.out_residuals,
        },
        [args.input],
        [args.out_json] + ([args.out_residuals] if args.out_residuals else []),
    )
    if not report.converged:
        print("fit did not converge within the iteration limit", file=sys.stderr)
        return EXIT_SOFT_FAILURE
    return EXIT_OK


def _render_growth_csv(params: GrowthParams, dt: float, t_end: float) -> str:
    grid = time_grid(dt, t_end)
    lengths = np.asarray(length_at(params, grid))
    rates = np.asarray(rate_at(params, grid))
    peak = peak_rate(params)
    lines = ["t_h,length_mm,rate_mm_per_h"]
    for t, L, v in zip(grid, lengths, rates):
        lines.append(f"{t:.6g},{L:.6g},{v:.6g}")
    lines.append(
        f"# peak_rate_mm_per_h={peak.rate:.6g},length_at_peak_mm={peak.length_at_peak:.6g},"
        f"time_at_peak_h={peak.time_at_peak:.6g}"
    )
    return "\n".join(lines) + "\n"


def cmd_growth(args: argparse.Namespace) -> int:
    params = GrowthParams(r=args.r, K=args.k, L0=args.l0)
    text = _render_growth_csv(params, args.dt, args.t_end)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
    _emit_manifest(
        args,
        {"r": args.r, "k": args.k, "l0": args.l0, "dt": args.dt, "t_end": args.t_end, "out": args.out},
        [],
        [args.out],
    )
    return EXIT_OK


def cmd_density(args: argparse.Namespace) -> int:
    seed = SeedSpec(mass=args.mass_g)
    doc: dict = {}
    power_flags = (args.force_mn, args.velocity_mm_h)
    energy_flags = (args.f_start_mn, args.f_end_mn, args.stroke_mm)
    if any(v is not None for v in power_flags):
        if any(v is None for v in power_flags):
            raise PhytobotError("--force-mn and --velocity-mm-h must be given together")
        doc["power_w_per_kg"] = power_density(args.force_mn, args.velocity_mm_h, seed)
        print(
            "note: published power-density figures are not reproducible from this "
            "formula; run with --ledger for the audit note",
            file=sys.stderr,
        )
    if any(v is not None for v in energy_flags):
        if any(v is None for v in energy_flags):
            raise PhytobotError("--f-start-mn, --f-end-mn and --stroke-mm must be given together")
        doc["energy_j_per_kg"] = energy_density(args.f_start_mn, args.f_end_mn, args.stroke_mm, seed)
    if not doc:
        raise PhytobotError(
            "nothing to compute: give --force-mn/--velocity-mm-h and/or "
            "--f-start-mn/--f-end-mn/--stroke-mm"
        )
    if args.ledger:
        sys.stderr.write(format_notes(["power-density", "seed-velocity-provenance"]))
    _write_json(args.out, doc)
    _emit_manifest(
        args,
        {
            "force_mn": args.force_mn,
            "velocity_mm_h": args.velocity_mm_h,
            "f_start_mn": args.f_start_mn,
            "f_end_mn": args.f_end_mn,
            "stroke_mm": args.stroke_mm,
            "mass_g": args.mass_g,
            "ledger": args.ledger,
            "out": args.out,
        },
        [],
        [args.out],
    )
    return EXIT_OK


def cmd_rover(args: argparse.Namespace) -> int:
    config = load_rover_config(args.config) if args.config else default_rover_config()
    states = simulate_rover(config, t_end=args.t_end, dt=args.dt)
    if args.out_traj:
        _dest(write_trajectory_csv, args.out_traj, states)
    summary = summarize_trajectory(states)
    if args.ledger:
        sys.stderr.write(format_notes(["rolling-resistance"]))
    _write_json(args.out_summary, summary)
    _emit_manifest(
        args,
        {
            "config": args.config,
            "t_end": args.t_end,
            "dt": args.dt,
            "out_traj": args.out_traj,
            "out_summary": args.out_summary,
            "ledger": args.ledger,
        },
        [args.config] if args.config else [],
        [o for o in (args.out_traj, args.out_summary) if o],
    )
    return EXIT_SOFT_FAILURE if summary["status"] == STALLED else EXIT_OK


def cmd_gripper(args: argparse.Namespace) -> int:
    config = load_gripper_config(args.config) if args.config else default_gripper_config()
    schedule = read_schedule_csv(args.schedule) if args.schedule else default_led_schedule()
    trajectory, events = simulate_gripper(config, schedule, t_end=args.t_end, dt=args.dt)
    if args.out_traj:
        _dest(write_gripper_trajectory_csv, args.out_traj, trajectory)
    _dest(write_events_csv, args.out_events, events)
    _emit_manifest(
        args,
        {
            "config": args.config,
            "schedule": args.schedule,
            "t_end": args.t_end,
            "dt": args.dt,
            "out_traj": args.out_traj,
            "out_events": args.out_events,
        },
        [p for p in (args.config, args.schedule) if p],
        [o for o in (args.out_traj, args.out_events) if o],
    )
    return EXIT_OK


def cmd_synth(args: argparse.Namespace) -> int:
    params = GrowthParams(r=args.r, K=args.k, L0=args.l0)
    samples = synth_series(params, dt=args.dt, t_end=args.t_end, noise_amp=args.noise, seed=args.seed)
    _dest(write_samples_csv, args.out, samples)
    _emit_manifest(
        args,
        {
            "r": args.r,
            "k": args.k,
            "l0": args.l0,
            "dt": args.dt,
            "t_end": args.t_end,
            "noise": args.noise,
            "seed": args.seed,
            "out": args.out,
        },
        [],
        [args.out],
    )
    return EXIT_OK


# --- parser ----------------------------------------------------------------


def _add_growth_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--r", type=float, default=DARK_GROWTH.r, help="intrinsic rate, 1/h")
    p.add_argument("--k", type=float, default=DARK_GROWTH.K, help="length ceiling, mm")
    p.add_argument("--l0", type=float, default=DARK_GROWTH.L0, help="initial length, mm")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phytobot",
        description="Plant-growth actuation toolkit: growth fits, actuation metrics, robot simulators.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("fit", help="fit the growth law to a t_h,length_mm CSV")
    p.add_argument("input", help="displacement series CSV (header t_h,length_mm)")
    p.add_argument("--max-iterations", type=int, default=200)
    p.add_argument("--step-tolerance", type=float, default=1e-8)
    p.add_argument("--damping-init", type=float, default=1e-3)
    p.add_argument("--out-json", default="-", help="fit report JSON path, - for stdout")
    p.add_argument("--out-residuals", default=None, help="residuals CSV path (optional)")
    p.add_argument("--manifest", default=None, help="write a run manifest JSON here")
    p.set_defaults(handler=cmd_fit)

    p = sub.add_parser("growth", help="tabulate length and rate of the growth law")
    _add_growth_flags(p)
    p.add_argument("--t-end", type=float, default=55.0, help="horizon, hours")
    p.add_argument("--dt", type=float, default=0.5, help="sampling step, hours")
    p.add_argument("--out", default="-", help="CSV path, - for stdout")
    p.add_argument("--manifest", default=None)
    p.set_defaults(handler=cmd_growth)

    p = sub.add_parser("density", help="power and energy densities from force/velocity/stroke")
    p.add_argument("--force-mn", type=float, default=None, help="force, mN (power)")
    p.add_argument("--velocity-mm-h", type=float, default=None, help="velocity, mm/h (power)")
    p.add_argument("--f-start-mn", type=float, default=None, help="start force, mN (energy)")
    p.add_argument("--f-end-mn", type=float, default=None, help="end force, mN (energy)")
    p.add_argument("--stroke-mm", type=float, default=None, help="stroke, mm (energy)")
    p.add_argument("--mass-g", type=float, default=0.033, help="seed mass, grams")
    p.add_argument("--ledger", action="store_true", help="print the audit notes to stderr")
    p.add_argument("--out", default="-", help="JSON path, - for stdout")
    p.add_argument("--manifest", default=None)
    p.set_defaults(handler=cmd_density)

    p = sub.add_parser("rover", help="simulate the growth-powered rolling robot")
    p.add_argument("--config", default=None, help="rover config JSON (defaults when omitted)")
    p.add_argument("--t-end", type=float, default=40.0, help="horizon, hours")
    p.add_argument("--dt", type=float, default=0.1, help="fixed step, hours")
    p.add_argument("--out-traj", default=None, help="trajectory CSV path, - for stdout")
    p.add_argument("--out-summary", default="-", help="summary JSON path, - for stdout")
    p.add_argument("--ledger", action="store_true", help="print the audit notes to stderr")
    p.add_argument("--manifest", default=None)
    p.set_defaults(handler=cmd_rover)

    p = sub.add_parser("gripper", help="simulate the phototropic gripper")
    p.add_argument("--config", default=None, help="gripper config JSON (defaults when omitted)")
    p.add_argument("--schedule", default=None, help="LED schedule CSV (default: inner 0-11 h, outer 11-21 h)")
    p.add_argument("--t-end", type=float, default=21.0, help="horizon, hours")
    p.add_argument("--dt", type=float, default=0.1, help="fixed step, hours")
    p.add_argument("--out-traj", default=None, help="fingertip trajectory CSV path, - for stdout")
    p.add_argument("--out-events", default="-", help="events CSV path, - for stdout")
    p.add_argument("--manifest", default=None)
    p.set_defaults(handler=cmd_gripper)

    p = sub.add_parser("synth", help="generate a seeded synthetic displacement series")
    _add_growth_flags(p)
    p.add_argument("--t-end", type=float, default=40.0, help="horizon, hours")
    p.add_argument("--dt", type=float, default=1 / 6, help="sampling step, hours (default 10 min)")
    p.add_argument("--noise", type=float, default=0.0, help="uniform noise amplitude, mm")
    p.add_argument("--seed", type=int, default=0, help="noise generator seed")
    p.add_argument("--out", default="-", help="CSV path, - for stdout")
    p.add_argument("--manifest", default=None)
    p.set_defaults(handler=cmd_synth)

    return parser


def main(argv: list[str] | None = None) -> int:
    """Parse argv, run the subcommand, and return the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except PhytobotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def run_from_manifest(path: str | Path) -> int:
    """Replay a run recorded by ``--manifest`` (reproduces outputs byte-for-byte)."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    argv = [doc["subcommand"]]
    config = dict(doc["config"])
    if "input" in config:  # positional argument of `fit`
        argv.append(config.pop("input"))
    for key, value in config.items():
        if value is None:
            continue
        flag = "--" + key.replace("_", "-")
        if isinstance(value, bool):
            if value:
                argv.append(flag)
        else:
            argv.extend([flag, str(value)])
    return main(argv)


def entry() -> None:
    """Console-script entry point."""
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entry()
