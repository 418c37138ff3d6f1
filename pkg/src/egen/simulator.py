"""Desk-scale replay of a route under adaptive or fixed location sensing.

The GPS radio is modelled as a duty cycle: each fix keeps it on for
``fix_acquisition_s`` (or until the next fix / end of route, whichever comes
first). Charge drawn is baseline current over wall time plus GPS current over
active time, and the battery level feeds back into the next interval choice.
"""
from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, replace
from typing import Optional, Sequence, Union

import numpy as np

from .engine import DEFAULT_CAP_MS, DEFAULT_FALLBACK_MS, DeviceContext, compute_interval
from .model import PolicyModel

EARTH_RADIUS_M = 6_371_000.0


def haversine_m(p1: Sequence[float], p2: Sequence[float]) -> float:
    """Great-circle distance in meters between two (lat, lon) pairs in degrees."""
    lat1, lon1 = math.radians(p1[0]), math.radians(p1[1])
    lat2, lon2 = math.radians(p2[0]), math.radians(p2[1])
    a = (math.sin((lat2 - lat1) / 2) ** 2
         + math.cos(lat1) * math.cos(lat2) * math.sin((lon2 - lon1) / 2) ** 2)
    return 2 * EARTH_RADIUS_M * math.asin(min(1.0, math.sqrt(a)))


@dataclass(frozen=True)
class TrackPoint:
    lat: float
    lon: float
    t: float


@dataclass(frozen=True)
class Trajectory:
    points: tuple[TrackPoint, ...]
    name: str = "track"

    def __post_init__(self):
        pts = tuple(p if isinstance(p, TrackPoint) else TrackPoint(*p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise ValueError("a trajectory needs at least 2 points")
        for p in pts:
            if not (-90 <= p.lat <= 90 and -180 <= p.lon <= 180):
                raise ValueError(f"coordinate out of range: {p}")
        for a, b in zip(pts, pts[1:]):
            if not b.t > a.t:
                raise ValueError(f"timestamps must strictly increase ({a.t} -> {b.t})")
        object.__setattr__(self, "_times", np.array([p.t for p in pts]))

    @property
    def start_time(self) -> float:
        return self.points[0].t

    @property
    def duration_s(self) -> float:
        return self.points[-1].t - self.points[0].t

    def position_at(self, t: float) -> tuple[float, float]:
        """Linear lat/lon interpolation at ``t`` seconds (clamped to the route)."""
        pts = self.points
        t = min(max(t, pts[0].t), pts[-1].t)
        i = int(np.searchsorted(self._times, t, side="right")) - 1
        if i >= len(pts) - 1:
            return pts[-1].lat, pts[-1].lon
        a, b = pts[i], pts[i + 1]
        w = (t - a.t) / (b.t - a.t)
        return a.lat + w * (b.lat - a.lat), a.lon + w * (b.lon - a.lon)

    def reversed(self) -> "Trajectory":
        end = self.points[-1].t
        return Trajectory(tuple(TrackPoint(p.lat, p.lon, end - p.t)
                                for p in reversed(self.points)), self.name + "-reversed")


def true_length_m(traj: Trajectory) -> float:
    return sum(haversine_m((a.lat, a.lon), (b.lat, b.lon))
               for a, b in zip(traj.points, traj.points[1:]))


TRACK_KINDS = ("line", "arc", "sinusoid")


def synth_track(kind: str, length_m: float, speed_mps: float, sample_hz: float = 1.0, *,
                origin: tuple[float, float] = (13.63, 79.42), sweep_rad: float = math.pi,
                amplitude_m: Optional[float] = None, wavelength_m: Optional[float] = None,
                name: Optional[str] = None) -> Trajectory:
    """Synthetic constant-speed route of ``length_m`` meters.

    ``arc`` bends through ``sweep_rad`` radians (0 gives a straight line);
    ``sinusoid`` wiggles with the given amplitude and wavelength
    (defaults: length/20 and length/4).
    """
    kind = kind.lower()
    if kind not in TRACK_KINDS:
        raise ValueError(f"unknown track kind {kind!r}; expected one of {TRACK_KINDS}")
    if length_m <= 0 or speed_mps <= 0 or sample_hz <= 0:
        raise ValueError("length_m, speed_mps and sample_hz must be positive")

    duration = length_m / speed_mps
    n = max(1, math.ceil(duration * sample_hz - 1e-9))
    t = np.minimum(np.arange(n + 1) / sample_hz, duration)
    s = speed_mps * t  # arc length travelled

    if kind == "line" or (kind == "arc" and sweep_rad == 0):
        x, y = s, np.zeros_like(s)
    elif kind == "arc":
        radius = length_m / sweep_rad
        theta = s / radius
        x, y = radius * np.sin(theta), radius * (1 - np.cos(theta))
    else:
        amp = length_m / 20 if amplitude_m is None else amplitude_m
        lam = length_m / 4 if wavelength_m is None else wavelength_m
        k = 2 * math.pi / lam
        # invert arc length of y = amp*sin(k x) numerically
        xs = np.linspace(0, length_m, 200_001)
        ds = np.sqrt(1 + (amp * k * np.cos(k * xs)) ** 2)
        arclen = np.concatenate([[0.0], np.cumsum((ds[1:] + ds[:-1]) / 2 * np.diff(xs))])
        x = np.interp(s, arclen, xs)
        y = amp * np.sin(k * x)

    lat0, lon0 = origin
    dlat = np.degrees(y / EARTH_RADIUS_M)
    dlon = np.degrees(x / (EARTH_RADIUS_M * math.cos(math.radians(lat0))))
    pts = tuple(TrackPoint(float(lat0 + a), float(lon0 + b), float(tt))
                for a, b, tt in zip(dlat, dlon, t))
    return Trajectory(pts, name or f"{kind}-{length_m:g}m")


@dataclass(frozen=True)
class DeviceProfile:
    battery_capacity_mah: float = 3040.0
    baseline_current_ma: float = 90.0
    gps_current_ma: float = 140.0
    fix_acquisition_s: float = 1.0

    def __post_init__(self):
        for name in ("battery_capacity_mah", "gps_current_ma", "fix_acquisition_s"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and positive, got {v}")
        if not (math.isfinite(self.baseline_current_ma) and self.baseline_current_ma >= 0):
            raise ValueError("baseline_current_ma must be finite and >= 0")


@dataclass(frozen=True)
class FixedInterval:
    ms: int

    def __post_init__(self):
        if self.ms < 1:
            raise ValueError("fixed interval must be at least 1 ms")


@dataclass(frozen=True)
class SimConfig:
    policy_source: Union[PolicyModel, FixedInterval]
    initial_battery_percent: float = 100.0
    charging: bool = False
    foreground: bool = True
    fallback_ms: int = DEFAULT_FALLBACK_MS
    cap_ms: int = DEFAULT_CAP_MS
    rng_seed: int = 0
    fix_noise_m: float = 0.0  # std-dev of Gaussian fix error; 0 disables noise

    def __post_init__(self):
        if not 0 <= self.initial_battery_percent <= 100:
            raise ValueError("initial_battery_percent must be in 0..100")
        if self.fix_noise_m < 0:
            raise ValueError("fix_noise_m must be >= 0")


@dataclass(frozen=True)
class SimResult:
    gps_active_s_per_hour: float
    battery_consumed_ma: float
    battery_consumed_mah: float
    measured_distance_m: float
    true_distance_m: float
    accuracy_error_m: float
    fixes_taken: int
    final_battery_percent: float
    wall_time_s: float
    gps_active_s: float
    battery_exhausted: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


def _interval_ms(cfg: SimConfig, battery_percent: float) -> int:
    src = cfg.policy_source
    if isinstance(src, FixedInterval):
        return src.ms
    level = min(100, max(0, math.floor(battery_percent)))
    ctx = DeviceContext(level, cfg.charging, cfg.foreground)
    return compute_interval(src, ctx, cfg.fallback_ms, cfg.cap_ms).interval_ms


def _jitter(rng: random.Random, lat: float, lon: float, sigma_m: float) -> tuple[float, float]:
    dn, de = rng.gauss(0, sigma_m), rng.gauss(0, sigma_m)
    lat2 = lat + math.degrees(dn / EARTH_RADIUS_M)
    lon2 = lon + math.degrees(de / (EARTH_RADIUS_M * math.cos(math.radians(lat))))
    return max(-90.0, min(90.0, lat2)), lon2


def simulate(traj: Trajectory, profile: DeviceProfile, cfg: SimConfig) -> SimResult:
    """Run one sensing arm over ``traj``.

    If the battery empties before the route ends the run stops there and the
    partial result carries ``battery_exhausted=True``.
    """
    duration_ms = traj.duration_s * 1000.0
    acq_ms = profile.fix_acquisition_s * 1000.0
    capacity = profile.battery_capacity_mah
    rng = random.Random(cfg.rng_seed)

    t_ms = 0  # integer milliseconds since route start
    consumed_mah = 0.0
    active_ms = 0.0
    battery = float(cfg.initial_battery_percent)
    fixes: list[tuple[float, float]] = []
    exhausted = False
    wall_ms = 0.0

    while True:
        lat, lon = traj.position_at(traj.start_time + t_ms / 1000.0)
        if cfg.fix_noise_m > 0:
            lat, lon = _jitter(rng, lat, lon, cfg.fix_noise_m)
        fixes.append((lat, lon))

        next_ms = t_ms + _interval_ms(cfg, battery)
        seg_end = min(next_ms, duration_ms)
        seg_active = min(acq_ms, seg_end - t_ms)
        seg_wall = seg_end - t_ms

        seg_mah = (profile.baseline_current_ma * seg_wall
                   + profile.gps_current_ma * seg_active) / 3_600_000.0
        if not cfg.charging and battery - seg_mah / capacity * 100.0 <= 0.0:
            # cut the segment where the battery reaches zero
            cut_wall, cut_active = _cut_segment(battery / 100.0 * capacity,
                                                seg_wall, seg_active, profile)
            wall_ms += cut_wall
            active_ms += cut_active
            consumed_mah += (profile.baseline_current_ma * cut_wall
                             + profile.gps_current_ma * cut_active) / 3_600_000.0
            battery = 0.0
            exhausted = True
            break

        wall_ms += seg_wall
        active_ms += seg_active
        consumed_mah += seg_mah
        if not cfg.charging:
            battery -= seg_mah / capacity * 100.0
        if next_ms >= duration_ms:
            break
        t_ms = next_ms

    measured = sum(haversine_m(a, b) for a, b in zip(fixes, fixes[1:]))
    true_len = true_length_m(traj)
    wall_s = wall_ms / 1000.0
    active_s = active_ms / 1000.0
    per_hour = 3600.0 / wall_s if wall_s > 0 else 0.0
    return SimResult(
        gps_active_s_per_hour=active_s * per_hour,
        battery_consumed_ma=consumed_mah * per_hour,
        battery_consumed_mah=consumed_mah,
        measured_distance_m=measured,
        true_distance_m=true_len,
        accuracy_error_m=true_len - measured,
        fixes_taken=len(fixes),
        final_battery_percent=battery,
        wall_time_s=wall_s,
        gps_active_s=active_s,
        battery_exhausted=exhausted,
    )


def _cut_segment(budget_mah: float, seg_wall: float, seg_active: float,
                 profile: DeviceProfile) -> tuple[float, float]:
    """Wall/active milliseconds of a segment that fit in ``budget_mah``.

    The GPS is on for the first ``seg_active`` ms, so drain is faster at the start.
    """
    hi_rate = (profile.baseline_current_ma + profile.gps_current_ma) / 3_600_000.0
    lo_rate = profile.baseline_current_ma / 3_600_000.0
    active_cost = hi_rate * seg_active
    if budget_mah <= active_cost:
        t = budget_mah / hi_rate
        return t, t
    rest = budget_mah - active_cost
    tail = rest / lo_rate if lo_rate > 0 else seg_wall - seg_active
    return min(seg_wall, seg_active + tail), seg_active


@dataclass(frozen=True)
class ComparisonReport:
    adaptive: SimResult
    fixed: SimResult
    fixed_ms: int
    reduction_gps_s_per_hour: float
    energy_savings_ma: float
    degrade_accuracy_m: float

    @property
    def battery_exhausted(self) -> bool:
        return self.adaptive.battery_exhausted or self.fixed.battery_exhausted

    def to_dict(self) -> dict:
        return {
            "reduction_gps_s_per_hour": self.reduction_gps_s_per_hour,
            "energy_savings_ma": self.energy_savings_ma,
            "degrade_accuracy_m": self.degrade_accuracy_m,
            "fixed_ms": self.fixed_ms,
            "battery_exhausted": self.battery_exhausted,
            "adaptive": self.adaptive.to_dict(),
            "fixed": self.fixed.to_dict(),
        }


def compare(traj: Trajectory, profile: DeviceProfile, adaptive: PolicyModel,
            fixed_ms: int, cfg: SimConfig) -> ComparisonReport:
    """Run the adaptive and fixed arms on identical inputs.

    Positive reduction/savings favour the adaptive arm; a positive accuracy
    degrade means the adaptive arm measured the route less accurately.
    """
    a = simulate(traj, profile, replace(cfg, policy_source=adaptive))
    f = simulate(traj, profile, replace(cfg, policy_source=FixedInterval(fixed_ms)))
    return ComparisonReport(
        adaptive=a,
        fixed=f,
        fixed_ms=fixed_ms,
        reduction_gps_s_per_hour=f.gps_active_s_per_hour - a.gps_active_s_per_hour,
        energy_savings_ma=f.battery_consumed_ma - a.battery_consumed_ma,
        degrade_accuracy_m=a.accuracy_error_m - f.accuracy_error_m,
    )




def mean(values: Sequence[float]) -> float:
    """Arithmetic mean that returns identical inputs unchanged."""
    if all(v == values[0] for v in values):
        return values[0]
    return math.fsum(values) / len(values)


def mean_results(results: Sequence[SimResult]) -> SimResult:
    """Field-wise mean over repeated trials."""
    if not results:
        raise ValueError("no results to average")
    n = len(results)
    d = {}
    for name in results[0].__dataclass_fields__:
        vals = [getattr(r, name) for r in results]
        if name == "battery_exhausted":
            d[name] = any(vals)
        elif name == "fixes_taken":
            d[name] = round(sum(vals) / n)
        else:
            d[name] = mean(vals)
    return SimResult(**d)


def run_trials(traj: Trajectory, profile: DeviceProfile, cfg: SimConfig, trials: int) -> list[SimResult]:
    """Repeat ``simulate``; trial i uses seed ``rng_seed + i``."""
    return [simulate(traj, profile, replace(cfg, rng_seed=cfg.rng_seed + i))
            for i in range(trials)]

