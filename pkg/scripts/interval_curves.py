#!/usr/bin/env python3
"""Sensing-interval curves (percent 100..0) for the three-policy corpus set.

Writes one CSV with a column per growth function so the piecewise shape can be
plotted with any tool. The exponential column reuses the same bases/factors.
"""
import argparse
import csv
import sys
from pathlib import Path

from egen import parse
from egen.engine import interval_table
from egen.model import BatteryAwareFunction, PolicyModel, make_policy

ROOT = Path(__file__).resolve().parents[1]
DEFAULT_POLICY = ROOT / "tests" / "corpus" / "valid" / "three_band.egen"


def with_function(model: PolicyModel, fn: BatteryAwareFunction) -> PolicyModel:
    return PolicyModel(tuple(
        make_policy(p.policy_id, battery_state=p.condition.battery_state,
                    battery_level=p.condition.battery_level,
                    threshold_high=p.condition.threshold_high,
                    threshold_medium=p.condition.threshold_medium,
                    app_state=p.condition.app_state,
                    sensing_interval_ms=p.adaptation.sensing_interval_ms,
                    decreasing_factor=p.adaptation.decreasing_factor, function=fn)
        for p in model.policies), model.source_name)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("policy", nargs="?", type=Path, default=DEFAULT_POLICY)
    ap.add_argument("--cap", type=int, default=600_000)
    ap.add_argument("--out", type=Path, help="CSV path (default: stdout)")
    args = ap.parse_args(argv)

    model, diags = parse(args.policy.read_bytes(), args.policy.name)
    if diags:
        sys.exit("\n".join(d.render(args.policy.name) for d in diags))

    columns = {fn.value.lower(): dict(interval_table(with_function(model, fn), cap_ms=args.cap))
               for fn in BatteryAwareFunction}
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["percent", *columns])
    for pct in range(100, -1, -1):
        w.writerow([pct, *(col[pct] for col in columns.values())])
    if args.out:
        out.close()


if __name__ == "__main__":
    main()
