"""Readers for trajectories (CSV, GPX) and device profiles (key=value)."""
from __future__ import annotations

import csv
import io
import xml.etree.ElementTree as ET
from dataclasses import fields
from datetime import datetime
from pathlib import Path

from .simulator import DeviceProfile, TrackPoint, Trajectory


def read_csv_track(text: str, name: str = "track") -> Trajectory:
    """``lat,lon,t_s`` rows; a header line is optional."""
    points = []
    for row in csv.reader(io.StringIO(text)):
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        try:
            lat, lon, t = (float(v) for v in row[:3])
        except ValueError:
            if not points and row[0].strip().lower() == "lat":
                continue
            raise ValueError(f"bad track row: {row!r}") from None
        points.append(TrackPoint(lat, lon, t))
    return Trajectory(tuple(points), name)


def _parse_time(s: str) -> datetime:
    s = s.strip()
    if s.endswith("Z"):
        s = s[:-1] + "+00:00"
    return datetime.fromisoformat(s)


def read_gpx_track(text: str, name: str = "track") -> Trajectory:
    """Track points (``trkpt`` with ``time``) from a GPX document.

    Times become seconds since the first point.
    """
    root = ET.fromstring(text)
    raw = []
    for el in root.iter():
        if el.tag.rsplit("}", 1)[-1] != "trkpt":
            continue
        time_el = next((c for c in el if c.tag.rsplit("}", 1)[-1] == "time"), None)
        if time_el is None or not (time_el.text or "").strip():
            raise ValueError("GPX track point without <time>")
        raw.append((float(el.attrib["lat"]), float(el.attrib["lon"]), _parse_time(time_el.text)))
    if not raw:
        raise ValueError("GPX document has no track points")
    t0 = raw[0][2]
    points = tuple(TrackPoint(lat, lon, (t - t0).total_seconds()) for lat, lon, t in raw)
    return Trajectory(points, name)


def load_track(path) -> Trajectory:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".gpx" or text.lstrip().startswith("<"):
        return read_gpx_track(text, path.stem)
    return read_csv_track(text, path.stem)


def parse_profile(text: str) -> DeviceProfile:
    """``key = value`` lines naming DeviceProfile fields; ``#`` starts a comment."""
    known = {f.name for f in fields(DeviceProfile)}
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in known:
            raise ValueError(f"line {lineno}: expected one of {sorted(known)} = <number>")
        values[key] = float(value)
    return DeviceProfile(**values)


def load_profile(path) -> DeviceProfile:
    return parse_profile(Path(path).read_text(encoding="utf-8"))


def write_csv_track(traj: Trajectory) -> str:
    lines = ["lat,lon,t_s"] + [f"{p.lat!r},{p.lon!r},{p.t!r}" for p in traj.points]
    return "\n".join(lines) + "\n"
