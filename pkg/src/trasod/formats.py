"""CSV/WKT ingestion and CSV/GeoJSON output.

Trajectories: ``tid,x,y,t`` with ``t`` as epoch seconds or ISO-8601.
Regions: ``rid,name,wkt`` with a single-ring ``POLYGON ((x y, ...))``.
In ``wgs84-local`` mode ``x``/``y`` hold longitude/latitude and are projected
to local meters with an equirectangular projection about the data centroid.
"""

from __future__ import annotations

import csv
import json
import math
import re
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Literal, Sequence

from .classifier import GroupResult
from .model import CandidateGroup, OutlierReport, Region, Trajectory, TrajectoryPoint, ValidationError

EARTH_RADIUS_M = 6371000.0
CrsMode = Literal["planar", "wgs84-local"]
CRS_MODES = ("planar", "wgs84-local")

TRAJECTORY_HEADER = ("tid", "x", "y", "t")
REGION_HEADER = ("rid", "name", "wkt")
REPORT_HEADER = (
    "cid", "tid", "from", "to", "kind", "semantic", "day_of_week", "period", "month",
    "duration_s", "length_m", "sync_standard_count", "avg_std_duration_s", "avg_std_length_m",
    "stop_count", "stop_total_s",
)


class InputError(ValueError):
    """Malformed or inconsistent input file."""


@dataclass(frozen=True)
class LocalProjection:
    """Equirectangular projection about ``(lon0, lat0)``; output in meters."""

    lon0: float
    lat0: float

    def forward(self, lon: float, lat: float) -> tuple[float, float]:
        k = math.pi / 180.0 * EARTH_RADIUS_M
        return (lon - self.lon0) * k * math.cos(math.radians(self.lat0)), (lat - self.lat0) * k

    def inverse(self, x: float, y: float) -> tuple[float, float]:
        k = math.pi / 180.0 * EARTH_RADIUS_M
        return self.lon0 + x / (k * math.cos(math.radians(self.lat0))), self.lat0 + y / k


@dataclass(frozen=True)
class DatasetSummary:
    trajectory_count: int
    point_count: int
    region_count: int
    candidate_counts: dict[tuple[str, str], int]


def summarize(
    trajectories: Sequence[Trajectory], regions: Sequence[Region], groups: Sequence[CandidateGroup]
) -> DatasetSummary:
    return DatasetSummary(
        len(trajectories),
        sum(len(t) for t in trajectories),
        len(regions),
        {g.key: len(g) for g in groups},
    )


def parse_timestamp(text: str) -> int:
    text = text.strip()
    try:
        value = float(text)
    except ValueError:
        try:
            moment = datetime.fromisoformat(text.replace("Z", "+00:00"))
        except ValueError:
            raise InputError(f"unrecognised timestamp {text!r}") from None
        if moment.tzinfo is None:
            moment = moment.replace(tzinfo=timezone.utc)
        value = moment.timestamp()
    if not math.isfinite(value) or value < 0:
        raise InputError(f"timestamp out of range: {text!r}")
    return int(value)


def _check_header(fieldnames, expected: Sequence[str], path) -> None:
    if fieldnames is None:
        raise InputError(f"{path}: empty file")
    if [f.strip() for f in fieldnames] != list(expected):
        raise InputError(f"{path}: expected header {','.join(expected)!r}, got {','.join(fieldnames)!r}")


def _parse_float(text: str, what: str, line: int, path) -> float:
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise InputError(f"{path}:{line}: bad {what} {text!r}") from None
    if not math.isfinite(value):
        raise InputError(f"{path}:{line}: non-finite {what} {text!r}")
    return value


def load_trajectories(path, crs: CrsMode = "planar") -> tuple[list[Trajectory], LocalProjection | None]:
    """Read trajectories; also return the projection used in ``wgs84-local`` mode."""
    if crs not in CRS_MODES:
        raise ValueError(f"unknown crs mode {crs!r}")
    rows: dict[str, list[tuple[float, float, int]]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        _check_header(header, TRAJECTORY_HEADER, path)
        for row in reader:
            line = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 4:
                raise InputError(f"{path}:{line}: expected 4 fields, got {len(row)}")
            tid = row[0].strip()
            if not tid:
                raise InputError(f"{path}:{line}: empty tid")
            x = _parse_float(row[1], "x", line, path)
            y = _parse_float(row[2], "y", line, path)
            try:
                t = parse_timestamp(row[3])
            except InputError as exc:
                raise InputError(f"{path}:{line}: {exc}") from None
            rows.setdefault(tid, []).append((x, y, t))
    if not rows:
        raise InputError(f"{path}: no trajectory rows")

    projection = None
    if crs == "wgs84-local":
        coords = [(x, y) for pts in rows.values() for x, y, _ in pts]
        for lon, lat in coords:
            if not (-180.0 <= lon <= 180.0 and -90.0 <= lat <= 90.0):
                raise InputError(f"{path}: ({lon}, {lat}) is not a lon/lat pair")
        projection = LocalProjection(
            sum(c[0] for c in coords) / len(coords), sum(c[1] for c in coords) / len(coords)
        )

    trajectories = []
    for tid, pts in rows.items():
        for a, b in zip(pts, pts[1:]):
            if b[2] <= a[2]:
                raise InputError(f"{path}: trajectory {tid!r} has non-increasing timestamps ({a[2]} then {b[2]})")
        if projection is not None:
            pts = [(*projection.forward(x, y), t) for x, y, t in pts]
        trajectories.append(Trajectory(tid, tuple(TrajectoryPoint(x, y, t) for x, y, t in pts)))
    return trajectories, projection


def read_trajectories(path, crs: CrsMode = "planar") -> list[Trajectory]:
    return load_trajectories(path, crs)[0]


def write_trajectories(trajectories: Iterable[Trajectory], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRAJECTORY_HEADER)
        for t in trajectories:
            for p in t.points:
                w.writerow((t.tid, repr(p.x), repr(p.y), p.t))


_POLYGON_RE = re.compile(r"^\s*POLYGON\s*\(\s*\((?P<ring>[^()]*)\)\s*\)\s*$", re.IGNORECASE)


def parse_wkt_polygon(wkt: str) -> list[tuple[float, float]]:
    """Vertices of a single-ring WKT polygon, closing vertex removed."""
    m = _POLYGON_RE.match(wkt)
    if m is None:
        raise InputError(f"not a single-ring WKT POLYGON: {wkt!r}")
    ring = []
    for pair in m.group("ring").split(","):
        parts = pair.split()
        if len(parts) != 2:
            raise InputError(f"bad WKT coordinate {pair.strip()!r}")
        try:
            x, y = float(parts[0]), float(parts[1])
        except ValueError:
            raise InputError(f"bad WKT coordinate {pair.strip()!r}") from None
        ring.append((x, y))
    if len(ring) < 4:
        raise InputError("polygon ring needs at least 3 vertices plus the closing vertex")
    if ring[0] != ring[-1]:
        raise InputError("polygon ring is not closed")
    return ring[:-1]


def format_wkt_polygon(ring: Sequence[tuple[float, float]]) -> str:
    closed = [*ring, ring[0]]
    return "POLYGON ((" + ", ".join(f"{x!r} {y!r}" for x, y in closed) + "))"


def read_regions(path, projection: LocalProjection | None = None) -> list[Region]:
    regions: list[Region] = []
    seen: set[str] = set()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        _check_header(header, REGION_HEADER, path)
        for row in reader:
            line = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 3:
                raise InputError(f"{path}:{line}: expected 3 fields, got {len(row)}")
            rid, name, wkt = row[0].strip(), row[1].strip(), row[2]
            if rid in seen:
                raise InputError(f"{path}:{line}: duplicate region id {rid!r}")
            try:
                ring = parse_wkt_polygon(wkt)
                if projection is not None:
                    ring = [projection.forward(x, y) for x, y in ring]
                regions.append(Region(rid, name, tuple(ring)))
            except (InputError, ValidationError) as exc:
                raise InputError(f"{path}:{line}: {exc}") from None
            seen.add(rid)
    if not regions:
        raise InputError(f"{path}: no regions")
    return regions


def write_regions(regions: Iterable[Region], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(REGION_HEADER)
        for r in regions:
            w.writerow((r.rid, r.name, format_wkt_polygon(r.ring)))


def report_row(r: OutlierReport) -> list[str]:
    return [
        str(r.cid), r.tid, r.start_region, r.end_region, r.kind.value, r.semantic.value,
        r.day_of_week, r.period_of_day, r.month,
        f"{r.duration:.2f}", f"{r.length:.2f}", str(r.sync_standard_count),
        f"{r.avg_std_duration:.2f}", f"{r.avg_std_length:.2f}",
        str(len(r.stops)), f"{r.stop_total:.2f}",
    ]


def write_report_csv(reports: Iterable[OutlierReport], path) -> None:
    ordered = sorted(reports, key=lambda r: (r.start_region, r.end_region, r.cid))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(REPORT_HEADER)
        for r in ordered:
            w.writerow(report_row(r))


def geojson_features(
    results: Iterable[GroupResult],
    regions: Iterable[Region],
    projection: LocalProjection | None = None,
) -> dict:
    """FeatureCollection with one LineString per candidate and one Polygon per region.

    Candidates of groups without a standard get role ``potential_outlier``.
    """

    def xy(x: float, y: float) -> list[float]:
        return list(projection.inverse(x, y)) if projection is not None else [x, y]

    features = []
    for res in results:
        verdicts = {v.cid: v for v in res.outliers}
        for c in res.group.candidates:
            if c.cid in res.standards:
                role, kind, semantic = "standard", "Standard", None
            elif c.cid in verdicts:
                cls = verdicts[c.cid].classification
                role, kind, semantic = "outlier", cls.kind.value, cls.semantic.value
            else:
                role, kind, semantic = "potential_outlier", None, None
            features.append(
                {
                    "type": "Feature",
                    "geometry": {"type": "LineString", "coordinates": [xy(p.x, p.y) for p in c.points]},
                    "properties": {
                        "cid": c.cid, "tid": c.tid, "from": c.start_region, "to": c.end_region,
                        "role": role, "kind": kind, "semantic": semantic,
                    },
                }
            )
    for r in regions:
        features.append(
            {
                "type": "Feature",
                "geometry": {"type": "Polygon", "coordinates": [[xy(x, y) for x, y in r.closed_ring()]]},
                "properties": {"rid": r.rid, "name": r.name},
            }
        )
    return {"type": "FeatureCollection", "features": features}


def write_geojson(
    results: Iterable[GroupResult],
    regions: Iterable[Region],
    path,
    projection: LocalProjection | None = None,
) -> None:
    Path(path).write_text(json.dumps(geojson_features(results, regions, projection)), encoding="utf-8")
