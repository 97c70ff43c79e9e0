"""Deterministic synthetic datasets with ground-truth labels.

:func:`generate` builds the classic two-region corridor: standards travel a
straight corridor, outliers bulge sideways mid-route and may pause at the
apex of the bulge. Outlier ``i`` bulges to alternating sides by
``detour_offset * (1 + i // 2)``, keeping outliers out of each other's reach. :func:`generate_benchmark` builds a larger multi-region
dataset for timing runs.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import formats
from .model import Region, Trajectory, TrajectoryPoint

# 2012-11-06 09:00 UTC, a Tuesday morning
DEFAULT_EPOCH = 1352192400

STANDARD = "standard"
OUTLIER = "outlier"


@dataclass(frozen=True)
class SynthSpec:
    seed: int = 0
    region_gap: float = 1000.0
    corridor_width: float = 20.0
    n_standards: int = 10
    n_outliers: int = 2
    detour_offset: float = 200.0
    sampling_interval: int = 1
    departure_spread: float = 600.0
    planted_stops: tuple[tuple[int, float], ...] = field(default=())
    speed: float = 10.0
    outlier_speed: float | None = None
    region_size: float = 100.0
    max_dist: float = 50.0
    # per-fix lateral noise, meters (kept inside the corridor)
    jitter: float = 1.0
    epoch: int = DEFAULT_EPOCH

    def __post_init__(self) -> None:
        if self.detour_offset <= self.corridor_width + self.max_dist:
            raise ValueError(
                f"detour_offset ({self.detour_offset}) must exceed corridor_width + max_dist "
                f"({self.corridor_width + self.max_dist})"
            )
        if self.n_standards < 0 or self.n_outliers < 0:
            raise ValueError("counts must be non-negative")
        if self.region_gap <= 0 or self.region_size <= 0 or self.corridor_width < 0:
            raise ValueError("region_gap and region_size must be positive, corridor_width non-negative")
        if int(self.sampling_interval) != self.sampling_interval or self.sampling_interval < 1:
            raise ValueError("sampling_interval must be a positive whole number of seconds")
        if self.speed <= 0 or (self.outlier_speed is not None and self.outlier_speed <= 0):
            raise ValueError("speeds must be positive")
        if self.departure_spread < 0:
            raise ValueError("departure_spread must be non-negative")
        for idx, dur in self.planted_stops:
            if not 0 <= idx < self.n_outliers:
                raise ValueError(f"planted stop refers to outlier {idx}, only {self.n_outliers} exist")
            if dur <= 0:
                raise ValueError("planted stop duration must be positive")


def _square(rid: str, name: str, x0: float, y0: float, size: float) -> Region:
    return Region(rid, name, ((x0, y0), (x0 + size, y0), (x0 + size, y0 + size), (x0, y0 + size)))


def _sample_path(
    path_x: np.ndarray,
    path_y: np.ndarray,
    speed: float,
    dt: int,
    t0: int,
    stop_at: float | None = None,
    stop_duration: float = 0.0,
) -> list[tuple[float, float, int]]:
    """Sample a polyline at constant speed every ``dt`` seconds.

    With ``stop_at`` (fraction of arc length) the object holds still there
    for ``stop_duration`` seconds.
    """
    seg = np.hypot(np.diff(path_x), np.diff(path_y))
    s_cum = np.concatenate(([0.0], np.cumsum(seg)))
    total = s_cum[-1]
    t_stop = None if stop_at is None else stop_at * total / speed
    travel = total / speed + (stop_duration if t_stop is not None else 0.0)
    n = int(math.floor(travel / dt)) + 1
    times = np.arange(n, dtype=np.float64) * dt
    if times[-1] < travel:
        times = np.append(times, times[-1] + dt)
    moving = times.copy()
    if t_stop is not None:
        moving = np.where(times < t_stop, times, np.maximum(t_stop, times - stop_duration))
    s = np.minimum(moving * speed, total)
    xs = np.interp(s, s_cum, path_x)
    ys = np.interp(s, s_cum, path_y)
    return [(float(x), float(y), t0 + int(t)) for x, y, t in zip(xs, ys, times)]


def generate(spec: SynthSpec) -> tuple[list[Trajectory], list[Region], dict[str, str]]:
    """Return ``(trajectories, regions, labels)``; labels map tid to role."""
    rng = np.random.default_rng(spec.seed)
    size, gap, w = spec.region_size, spec.region_gap, spec.corridor_width
    regions = [
        _square("A", "Region A", -size, -size / 2, size),
        _square("B", "Region B", gap, -size / 2, size),
    ]
    x_path = np.linspace(-size / 2, gap + size / 2, 2001)
    bump = np.where((x_path > 0) & (x_path < gap), np.sin(np.pi * np.clip(x_path / gap, 0, 1)), 0.0)
    stops = dict(spec.planted_stops)
    dt = int(spec.sampling_interval)

    trajectories: list[Trajectory] = []
    labels: dict[str, str] = {}
    roles = [(STANDARD, i) for i in range(spec.n_standards)] + [(OUTLIER, i) for i in range(spec.n_outliers)]
    for role, i in roles:
        half = w / 2
        lateral = rng.uniform(-half, half) if half > 0 else 0.0
        t0 = spec.epoch + int(rng.uniform(0, spec.departure_spread))
        if role == STANDARD:
            tid = f"s{i:03d}"
            y_path = np.full_like(x_path, lateral)
            fixes = _sample_path(x_path, y_path, spec.speed, dt, t0)
        else:
            tid = f"o{i:03d}"
            # alternate sides and step outward so outliers never escort each other
            side = 1.0 if i % 2 == 0 else -1.0
            y_path = lateral + side * spec.detour_offset * (1 + i // 2) * bump
            speed = spec.outlier_speed or spec.speed
            if i in stops:
                fixes = _sample_path(x_path, y_path, speed, dt, t0, stop_at=0.5, stop_duration=stops[i])
            else:
                fixes = _sample_path(x_path, y_path, speed, dt, t0)
        noise = rng.uniform(-spec.jitter, spec.jitter, len(fixes)) if spec.jitter > 0 else np.zeros(len(fixes))
        points = []
        for k, (x, y, t) in enumerate(fixes):
            if k and (x, y) == fixes[k - 1][:2]:
                noise[k] = noise[k - 1]  # stationary span stays put
            y = y + noise[k]
            if role == STANDARD:
                y = min(max(y, -half), half)
            points.append(TrajectoryPoint(x, y, t))
        trajectories.append(Trajectory(tid, tuple(points)))
        labels[tid] = role
    return trajectories, regions, labels


def generate_benchmark(
    seed: int = 0,
    n_trajectories: int = 500,
    n_points: int = 400,
    n_regions: int = 4,
    side: float = 3000.0,
    region_size: float = 200.0,
    corridor_width: float = 20.0,
    detour_offset: float = 400.0,
    outlier_fraction: float = 0.1,
    sampling_interval: int = 1,
    epoch: int = DEFAULT_EPOCH,
) -> tuple[list[Trajectory], list[Region], dict[str, str]]:
    """Regions evenly spaced on a circle; each trajectory runs between one
    ordered pair, with exactly ``n_points`` fixes."""
    rng = np.random.default_rng(seed)
    radius = side / 2
    centers = [
        (radius * math.cos(2 * math.pi * k / n_regions), radius * math.sin(2 * math.pi * k / n_regions))
        for k in range(n_regions)
    ]
    regions = [
        _square(f"R{k}", f"Region {k}", cx - region_size / 2, cy - region_size / 2, region_size)
        for k, (cx, cy) in enumerate(centers)
    ]
    pairs = [(a, b) for a in range(n_regions) for b in range(n_regions) if a != b]
    trajectories: list[Trajectory] = []
    labels: dict[str, str] = {}
    u = np.linspace(0.0, 1.0, n_points)
    for i in range(n_trajectories):
        a, b = pairs[i % len(pairs)]
        (ax, ay), (bx, by) = centers[a], centers[b]
        length = math.hypot(bx - ax, by - ay)
        nx, ny = -(by - ay) / length, (bx - ax) / length
        outlier = rng.random() < outlier_fraction
        offset = rng.uniform(-corridor_width / 2, corridor_width / 2) + rng.uniform(-1, 1, n_points)
        if outlier:
            offset = offset + detour_offset * np.sin(np.pi * u) ** 2
        xs = ax + u * (bx - ax) + offset * nx
        ys = ay + u * (by - ay) + offset * ny
        t0 = epoch + int(rng.uniform(0, 3600))
        tid = f"b{i:04d}"
        trajectories.append(
            Trajectory(
                tid,
                tuple(TrajectoryPoint(float(x), float(y), t0 + k * sampling_interval) for k, (x, y) in enumerate(zip(xs, ys))),
            )
        )
        labels[tid] = OUTLIER if outlier else STANDARD
    return trajectories, regions, labels


def write_dataset(trajectories, regions, labels, directory) -> dict[str, Path]:
    """Write ``trajectories.csv``, ``regions.csv`` and ``labels.csv`` into
    ``directory`` in the formats the CLI reads."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = {name: out / f"{name}.csv" for name in ("trajectories", "regions", "labels")}
    formats.write_trajectories(trajectories, paths["trajectories"])
    formats.write_regions(regions, paths["regions"])
    with open(paths["labels"], "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("tid", "label"))
        w.writerows(sorted(labels.items()))
    return paths
