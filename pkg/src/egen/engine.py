"""Dynamic sensing-interval computation from battery context.

Within a battery band the interval grows with every percentage point the
battery has dropped since entering that band:

    Linear:       base + factor * d
    Exponential:  round_half_up(base * (1 + factor/100) ** d)

where ``d`` counts drops from the band's entry level (100 for High,
Threshold_High - 1 for Medium, Threshold_Medium - 1 for Low). The result is
capped at ``cap_ms``.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Optional

from .model import (AdaptationPolicy, AppState, BatteryAwareFunction,
                    BatteryLevel, BatteryState, PolicyModel)

DEFAULT_FALLBACK_MS = 5000
DEFAULT_CAP_MS = 60000


@dataclass(frozen=True)
class DeviceContext:
    battery_percent: int
    charging: bool = False
    foreground: bool = True

    def __post_init__(self):
        if not 0 <= self.battery_percent <= 100:
            raise ValueError(f"battery_percent {self.battery_percent} not in 0..100")

    @property
    def battery_state(self) -> BatteryState:
        return BatteryState.CHARGING if self.charging else BatteryState.DISCHARGING

    @property
    def app_state(self) -> AppState:
        return AppState.FOREGROUND if self.foreground else AppState.BACKGROUND


@dataclass(frozen=True)
class IntervalDecision:
    interval_ms: int
    matched_policy_id: Optional[int]
    band: Optional[BatteryLevel]
    drops_in_band: int


def classify_band(battery_percent: int, threshold_high: int, threshold_medium: int) -> BatteryLevel:
    if not threshold_medium < threshold_high:
        raise ValueError(f"need threshold_medium < threshold_high, got "
                         f"{threshold_medium} >= {threshold_high}")
    if not 0 <= battery_percent <= 100:
        raise ValueError(f"battery_percent {battery_percent} not in 0..100")
    if battery_percent >= threshold_high:
        return BatteryLevel.HIGH
    if battery_percent >= threshold_medium:
        return BatteryLevel.MEDIUM
    return BatteryLevel.LOW


def band_entry_level(band: BatteryLevel, threshold_high: int, threshold_medium: int) -> int:
    if band is BatteryLevel.HIGH:
        return 100
    if band is BatteryLevel.MEDIUM:
        return threshold_high - 1
    return threshold_medium - 1


def grow_interval(base_ms: int, factor: int, drops: int,
                  function: BatteryAwareFunction) -> int:
    """Uncapped interval after ``drops`` percentage points inside a band."""
    if function is BatteryAwareFunction.LINEAR:
        return base_ms + factor * drops
    # exact rational evaluation, rounded half up
    num = base_ms * (100 + factor) ** drops
    den = 100 ** drops
    return (2 * num + den) // (2 * den)


def _matches(policy: AdaptationPolicy, ctx: DeviceContext) -> bool:
    c = policy.condition
    if c.battery_state is not ctx.battery_state or c.app_state is not ctx.app_state:
        return False
    band = classify_band(ctx.battery_percent, c.threshold_high, c.threshold_medium)
    return band is c.battery_level


def select_policy(model: PolicyModel, ctx: DeviceContext) -> Optional[AdaptationPolicy]:
    """First policy in source order whose context triple matches ``ctx``."""
    for policy in model.policies:
        if _matches(policy, ctx):
            return policy
    return None


def compute_interval(model: PolicyModel, ctx: DeviceContext,
                     fallback_ms: int = DEFAULT_FALLBACK_MS,
                     cap_ms: int = DEFAULT_CAP_MS) -> IntervalDecision:
    if fallback_ms < 1 or cap_ms < 1:
        raise ValueError("fallback_ms and cap_ms must be positive")
    policy = select_policy(model, ctx)
    if policy is None:
        band = None
        if model.policies:
            c = model.policies[0].condition
            band = classify_band(ctx.battery_percent, c.threshold_high, c.threshold_medium)
        return IntervalDecision(min(fallback_ms, cap_ms), None, band, 0)
    c, f = policy.condition, policy.adaptation
    band = c.battery_level
    drops = band_entry_level(band, c.threshold_high, c.threshold_medium) - ctx.battery_percent
    interval = grow_interval(f.sensing_interval_ms, f.decreasing_factor, drops,
                             f.battery_aware_function)
    return IntervalDecision(min(interval, cap_ms), policy.policy_id.value, band, drops)


def interval_table(model: PolicyModel, charging: bool = False, foreground: bool = True,
                   fallback_ms: int = DEFAULT_FALLBACK_MS,
                   cap_ms: int = DEFAULT_CAP_MS) -> list[tuple[int, int]]:
    """(percent, interval_ms) rows for 100 down to 0."""
    return [
        (p, compute_interval(model, DeviceContext(p, charging, foreground),
                             fallback_ms, cap_ms).interval_ms)
        for p in range(100, -1, -1)
    ]


def table_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["percent", "interval_ms"])
    w.writerows(rows)
    return buf.getvalue()


def table_to_json(rows) -> str:
    return json.dumps([{"percent": p, "interval_ms": ms} for p, ms in rows], indent=2)
