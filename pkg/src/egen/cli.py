"""``egen`` command-line entry point.

Exit codes: 0 ok, 1 invalid model or arguments, 2 I/O failure,
3 generated output already exists, 4 battery exhausted during simulation.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional

from . import __version__
from .codegen import CodegenError, GenOptions, generate, policy_table
from .engine import (DEFAULT_CAP_MS, DEFAULT_FALLBACK_MS, interval_table,
                     table_to_csv, table_to_json)
from .parser import parse
from .simulator import (ComparisonReport, DeviceProfile, FixedInterval, SimConfig,
                        SimResult, compare, mean, mean_results, run_trials, synth_track)
from .trackio import load_profile, load_track
from .validator import has_errors, validate

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_EXISTS, EXIT_EXHAUSTED = 0, 1, 2, 3, 4


class _Fail(Exception):
    def __init__(self, code: int, message: str = ""):
        super().__init__(message)
        self.code = code


def _err(msg: str):
    print(msg, file=sys.stderr)


def load_model(path: str):
    """Parse + validate one file; diagnostics go to stderr."""
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise _Fail(EXIT_IO, f"{path}: {exc.strerror or exc}")
    model, diags = parse(data, source_name=path)
    if not has_errors(diags):
        diags = validate(model)
    for d in diags:
        _err(d.render(path))
    if has_errors(diags):
        raise _Fail(EXIT_INVALID)
    return model


def cmd_check(args) -> int:
    status = EXIT_OK
    for path in args.paths:
        try:
            load_model(path)
        except _Fail as f:
            if str(f):
                _err(str(f))
            status = max(status, f.code)
    return status


def cmd_table(args) -> int:
    model = load_model(args.path)
    rows = interval_table(model, args.charging, not args.background, args.fallback, args.cap)
    sys.stdout.write(table_to_json(rows) + "\n" if args.format == "json" else table_to_csv(rows))
    return EXIT_OK


def cmd_generate(args) -> int:
    model = load_model(args.path)
    opts = GenOptions(args.package, args.fallback, args.cap)
    try:
        files = generate(model, opts)
    except CodegenError as exc:
        raise _Fail(EXIT_INVALID, f"error[{exc.code}]: {exc.message}")
    if args.policy_table:
        files.append(policy_table(model, opts))
    out = Path(args.out)
    targets = [(out / f.relative_path, f) for f in files]
    existing = [str(p) for p, _ in targets if p.exists()]
    if existing and not args.force:
        raise _Fail(EXIT_EXISTS, "refusing to overwrite (use --force): " + ", ".join(existing))
    try:
        for path, f in targets:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(f.contents, encoding="utf-8")
            print(path)
    except OSError as exc:
        raise _Fail(EXIT_IO, f"{exc.filename}: {exc.strerror}")
    return EXIT_OK


def _parse_synth(spec: str):
    parts = spec.split(":")
    if len(parts) not in (3, 4):
        raise _Fail(EXIT_INVALID, f"--synth expects kind:length_m:speed_mps[:hz], got {spec!r}")
    try:
        nums = [float(p) for p in parts[1:]]
        return synth_track(parts[0], *nums)
    except ValueError as exc:
        raise _Fail(EXIT_INVALID, f"--synth: {exc}")


def _sim_inputs(args):
    if args.track:
        try:
            traj = load_track(args.track)
        except OSError as exc:
            raise _Fail(EXIT_IO, f"{args.track}: {exc.strerror or exc}")
        except ValueError as exc:
            raise _Fail(EXIT_INVALID, f"{args.track}: {exc}")
    else:
        traj = _parse_synth(args.synth)
    if args.profile:
        try:
            profile = load_profile(args.profile)
        except OSError as exc:
            raise _Fail(EXIT_IO, f"{args.profile}: {exc.strerror or exc}")
        except (ValueError, TypeError) as exc:
            raise _Fail(EXIT_INVALID, f"{args.profile}: {exc}")
    else:
        profile = DeviceProfile()
    return traj, profile


def _base_config(args, source) -> SimConfig:
    try:
        return SimConfig(source, initial_battery_percent=args.start, charging=args.charging,
                         foreground=not args.background, fallback_ms=args.fallback,
                         cap_ms=args.cap, rng_seed=args.seed, fix_noise_m=args.noise)
    except ValueError as exc:
        raise _Fail(EXIT_INVALID, str(exc))


def _hms(seconds: float) -> str:
    sign = "-" if seconds < 0 else ""
    m, s = divmod(abs(seconds), 60)
    return f"{sign}{int(m)}m{s:04.1f}s"


def format_result(r: SimResult) -> str:
    rows = [
        ("GPS active time per hour", _hms(r.gps_active_s_per_hour)),
        ("Battery consumption (mA)", f"{r.battery_consumed_ma:.2f}"),
        ("Battery consumed (mAh)", f"{r.battery_consumed_mah:.4f}"),
        ("Distance covered (km)", f"{r.measured_distance_m / 1000:.3f}"),
        ("Reference distance (km)", f"{r.true_distance_m / 1000:.3f}"),
        ("Error in location accuracy (m)", f"{r.accuracy_error_m:.1f}"),
        ("Fixes taken", str(r.fixes_taken)),
        ("Final battery (%)", f"{r.final_battery_percent:.3f}"),
    ]
    if r.battery_exhausted:
        rows.append(("Battery exhausted", "yes (EGEN-S01)"))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows) + "\n"


def format_report(rep: ComparisonReport) -> str:
    a, f = rep.adaptive, rep.fixed
    lines = [
        f"{'GPS active time per hour':<34}{'Non-eGEN':>12}{'eGEN':>12}{'Reduction':>12}",
        f"{'':<34}{_hms(f.gps_active_s_per_hour):>12}{_hms(a.gps_active_s_per_hour):>12}"
        f"{_hms(rep.reduction_gps_s_per_hour):>12}",
        "",
        f"{'Battery consumption in mA':<34}{'eGEN':>12}{'Non-eGEN':>12}{'Savings':>12}",
        f"{'':<34}{a.battery_consumed_ma:>12.2f}{f.battery_consumed_ma:>12.2f}"
        f"{rep.energy_savings_ma:>12.2f}",
        "",
        f"{'Distance covered in km':<34}{'Non-eGEN':>12}{'eGEN':>12}",
        f"{'':<34}{f.measured_distance_m / 1000:>12.3f}{a.measured_distance_m / 1000:>12.3f}",
        f"{'Error in location accuracy (m)':<34}{'Non-eGEN':>12}{'eGEN':>12}{'Degrade':>12}",
        f"{'':<34}{f.accuracy_error_m:>12.1f}{a.accuracy_error_m:>12.1f}"
        f"{rep.degrade_accuracy_m:>12.1f}",
        f"{'Reference distance (km)':<34}{a.true_distance_m / 1000:>12.3f}",
    ]
    if rep.battery_exhausted:
        lines.append("Battery exhausted before route end (EGEN-S01)")
    return "\n".join(lines) + "\n"


def _mean_report(reports: list[ComparisonReport]) -> ComparisonReport:
    return ComparisonReport(
        adaptive=mean_results([r.adaptive for r in reports]),
        fixed=mean_results([r.fixed for r in reports]),
        fixed_ms=reports[0].fixed_ms,
        reduction_gps_s_per_hour=mean([r.reduction_gps_s_per_hour for r in reports]),
        energy_savings_ma=mean([r.energy_savings_ma for r in reports]),
        degrade_accuracy_m=mean([r.degrade_accuracy_m for r in reports]),
    )


def cmd_simulate(args) -> int:
    if (args.policy is None) == (args.fixed is None):
        raise _Fail(EXIT_INVALID, "give exactly one of a policy file or --fixed MS")
    source = load_model(args.policy) if args.policy else _fixed(args.fixed)
    traj, profile = _sim_inputs(args)
    results = run_trials(traj, profile, _base_config(args, source), args.trials)
    result = mean_results(results)
    if args.json:
        payload = result.to_dict()
        payload["trials"] = [r.to_dict() for r in results]
        print(json.dumps(payload, indent=2))
    else:
        sys.stdout.write(format_result(result))
    if result.battery_exhausted:
        _err("error[EGEN-S01]: battery exhausted before route end")
        return EXIT_EXHAUSTED
    return EXIT_OK


def cmd_compare(args) -> int:
    model = load_model(args.policy)
    fixed = _fixed(args.fixed)
    traj, profile = _sim_inputs(args)
    cfg = _base_config(args, model)
    reports = [compare(traj, profile, model, fixed.ms, replace(cfg, rng_seed=args.seed + i))
               for i in range(args.trials)]
    rep = _mean_report(reports)
    if args.json:
        payload = rep.to_dict()
        payload["trials"] = [r.to_dict() for r in reports]
        print(json.dumps(payload, indent=2))
    else:
        sys.stdout.write(format_report(rep))
    if rep.battery_exhausted:
        _err("error[EGEN-S01]: battery exhausted before route end")
        return EXIT_EXHAUSTED
    return EXIT_OK


def _fixed(ms: int) -> FixedInterval:
    try:
        return FixedInterval(ms)
    except ValueError as exc:
        raise _Fail(EXIT_INVALID, str(exc))


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    version = f"egen {__version__}"
    p = argparse.ArgumentParser(prog="egen", description="eGEN adaptation-policy toolchain")
    p.add_argument("--version", action="version", version=version)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, func):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.add_argument("--version", action="version", version=version)
        sp.set_defaults(func=func)
        return sp

    def interval_opts(sp):
        sp.add_argument("--fallback", type=_positive_int, default=DEFAULT_FALLBACK_MS,
                        help="interval (ms) when no policy matches")
        sp.add_argument("--cap", type=_positive_int, default=DEFAULT_CAP_MS,
                        help="upper bound on any interval (ms)")

    def context_opts(sp):
        sp.add_argument("--charging", action="store_true", help="device is charging")
        sp.add_argument("--background", action="store_true", help="app is in the background")

    sp = add("check", "parse and validate .egen files", cmd_check)
    sp.add_argument("paths", nargs="+")

    sp = add("table", "print the sensing interval for every battery percent", cmd_table)
    sp.add_argument("path")
    context_opts(sp)
    interval_opts(sp)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = add("generate", "generate the battery-aware Java sources", cmd_generate)
    sp.add_argument("path")
    sp.add_argument("--out", required=True, help="output directory")
    sp.add_argument("--package", default="com.example.app")
    sp.add_argument("--force", action="store_true", help="overwrite existing files")
    sp.add_argument("--policy-table", action="store_true",
                    help="also write policy_table.csv with every interval")
    interval_opts(sp)

    def sim_opts(sp):
        track = sp.add_mutually_exclusive_group(required=True)
        track.add_argument("--track", help="CSV (lat,lon,t_s) or GPX file")
        track.add_argument("--synth", metavar="KIND:LEN:SPEED[:HZ]",
                           help="synthetic track, e.g. arc:3060:5")
        sp.add_argument("--profile", help="device profile file (key = value)")
        sp.add_argument("--start", type=float, default=100.0, help="initial battery percent")
        context_opts(sp)
        interval_opts(sp)
        sp.add_argument("--trials", type=_positive_int, default=1,
                        help="repeat with seeds seed..seed+N-1 and average")
        sp.add_argument("--noise", type=float, default=0.0,
                        help="Gaussian fix error std-dev in meters (default off)")
        sp.add_argument("--seed", type=int, default=0, help="base RNG seed for fix noise")
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = add("simulate", "replay a track under one sensing arm", cmd_simulate)
    sp.add_argument("policy", nargs="?", help=".egen policy file")
    sp.add_argument("--fixed", type=int, metavar="MS", help="fixed sensing interval instead")
    sim_opts(sp)

    sp = add("compare", "adaptive policy vs fixed interval on the same track", cmd_compare)
    sp.add_argument("policy", help=".egen policy file")
    sp.add_argument("--fixed", type=int, metavar="MS", required=True)
    sim_opts(sp)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Fail as f:
        if str(f):
            _err(str(f))
        return f.code


if __name__ == "__main__":
    sys.exit(main())
