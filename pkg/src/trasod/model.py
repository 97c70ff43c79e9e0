"""Core domain types: points, trajectories, regions, candidates and results.

All types are frozen; they can be shared freely between worker threads.
Coordinates are planar meters, timestamps are integer seconds since the
Unix epoch (UTC).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import geometry


class ValidationError(ValueError):
    """Raised when a domain object violates one of its invariants."""


def _coerce_timestamp(t: float) -> int:
    if isinstance(t, bool) or not math.isfinite(t):
        raise ValidationError(f"timestamp must be finite, got {t!r}")
    if t < 0:
        raise ValidationError(f"timestamp must be non-negative, got {t!r}")
    # 1-second resolution; sub-second input is truncated
    return int(t)


@dataclass(frozen=True, slots=True)
class TrajectoryPoint:
    x: float
    y: float
    t: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValidationError(f"coordinates must be finite, got ({self.x!r}, {self.y!r})")
        object.__setattr__(self, "t", _coerce_timestamp(self.t))


@dataclass(frozen=True)
class Trajectory:
    """Time-ordered positions of one moving object."""

    tid: str
    points: tuple[TrajectoryPoint, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        if not self.points:
            raise ValidationError(f"trajectory {self.tid!r} has no points")
        for i in range(1, len(self.points)):
            if self.points[i].t <= self.points[i - 1].t:
                raise ValidationError(
                    f"trajectory {self.tid!r}: timestamps must strictly increase "
                    f"(point {i}: t={self.points[i].t} after t={self.points[i - 1].t})"
                )

    def __len__(self) -> int:
        return len(self.points)

    @cached_property
    def xs(self) -> np.ndarray:
        return np.fromiter((p.x for p in self.points), dtype=np.float64, count=len(self.points))

    @cached_property
    def ys(self) -> np.ndarray:
        return np.fromiter((p.y for p in self.points), dtype=np.float64, count=len(self.points))


@dataclass(frozen=True)
class Region:
    """A named simple polygon. ``ring`` is stored unclosed (first != last)."""

    rid: str
    name: str
    ring: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        ring = [(float(x), float(y)) for x, y in self.ring]
        if len(ring) > 1 and ring[0] == ring[-1]:
            ring = ring[:-1]
        if len(set(ring)) < 3:
            raise ValidationError(f"region {self.rid!r}: ring needs at least 3 distinct vertices")
        if not all(math.isfinite(v) for xy in ring for v in xy):
            raise ValidationError(f"region {self.rid!r}: non-finite vertex")
        if not geometry.is_simple_ring(ring):
            raise ValidationError(f"region {self.rid!r}: ring is self-intersecting")
        object.__setattr__(self, "ring", tuple(ring))

    def closed_ring(self) -> list[tuple[float, float]]:
        return [*self.ring, self.ring[0]]

    @cached_property
    def bbox(self) -> tuple[float, float, float, float]:
        xs = [v[0] for v in self.ring]
        ys = [v[1] for v in self.ring]
        return min(xs), min(ys), max(xs), max(ys)


@dataclass(frozen=True)
class Candidate:
    """Minimal subtrajectory from the last fix in ``start_region`` to the
    first subsequent fix in ``end_region``."""

    cid: int
    tid: str
    start_region: str
    end_region: str
    first_index: int
    last_index: int
    points: tuple[TrajectoryPoint, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        if len(self.points) < 2:
            raise ValidationError(f"candidate {self.cid}: needs at least 2 points")
        if self.last_index - self.first_index + 1 != len(self.points):
            raise ValidationError(f"candidate {self.cid}: index range does not match point count")
        if self.start_region == self.end_region:
            raise ValidationError(f"candidate {self.cid}: start and end region are the same")
        if self.duration <= 0:
            raise ValidationError(f"candidate {self.cid}: duration must be positive")

    @property
    def t_first(self) -> int:
        return self.points[0].t

    @property
    def t_last(self) -> int:
        return self.points[-1].t

    @property
    def duration(self) -> int:
        return self.points[-1].t - self.points[0].t

    @cached_property
    def length(self) -> float:
        return geometry.path_length(self.points)


def duration(c: Candidate) -> int:
    """Seconds between the first and last fix of ``c``."""
    return c.t_last - c.t_first


@dataclass(frozen=True)
class CandidateGroup:
    start_region: str
    end_region: str
    candidates: tuple[Candidate, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "candidates", tuple(self.candidates))
        if self.start_region == self.end_region:
            raise ValidationError("a group needs two different regions")
        for c in self.candidates:
            if (c.start_region, c.end_region) != (self.start_region, self.end_region):
                raise ValidationError(
                    f"candidate {c.cid} ({c.start_region}->{c.end_region}) does not belong to "
                    f"group {self.start_region}->{self.end_region}"
                )

    def __len__(self) -> int:
        return len(self.candidates)

    @property
    def key(self) -> tuple[str, str]:
        return self.start_region, self.end_region

    def by_cid(self) -> dict[int, Candidate]:
        return {c.cid: c for c in self.candidates}


@dataclass(frozen=True)
class Params:
    max_dist: float
    min_sup: int
    time_tolerance: float
    max_stop_speed: float = 1.0
    min_stop_duration: float = 300.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.max_dist) and self.max_dist > 0):
            raise ValidationError(f"max_dist must be > 0, got {self.max_dist!r}")
        if isinstance(self.min_sup, bool) or int(self.min_sup) != self.min_sup or self.min_sup < 0:
            raise ValidationError(f"min_sup must be a non-negative integer, got {self.min_sup!r}")
        if not self.time_tolerance >= 0:
            raise ValidationError(f"time_tolerance must be >= 0, got {self.time_tolerance!r}")
        if not (math.isfinite(self.max_stop_speed) and self.max_stop_speed > 0):
            raise ValidationError(f"max_stop_speed must be > 0, got {self.max_stop_speed!r}")
        if not (math.isfinite(self.min_stop_duration) and self.min_stop_duration > 0):
            raise ValidationError(f"min_stop_duration must be > 0, got {self.min_stop_duration!r}")
        object.__setattr__(self, "min_sup", int(self.min_sup))


class Kind(str, enum.Enum):
    STANDARD = "Standard"
    SPATIAL_OUTLIER = "SpatialOutlier"
    SPATIO_TEMPORAL_OUTLIER = "SpatioTemporalOutlier"


class Semantic(str, enum.Enum):
    AVOIDANCE = "Avoidance"
    STOP = "Stop"
    PLAIN = "Plain"


@dataclass(frozen=True)
class Classification:
    kind: Kind
    semantic: Semantic | None = None

    def __post_init__(self) -> None:
        if self.kind is Kind.STANDARD and self.semantic is not None:
            raise ValidationError("standards carry no semantic tag")


@dataclass(frozen=True)
class Stop:
    """Slow span inside a candidate; indices refer to the candidate's points."""

    start_index: int
    end_index: int
    duration: int
    centroid: tuple[float, float]


@dataclass(frozen=True)
class OutlierReport:
    cid: int
    tid: str
    start_region: str
    end_region: str
    kind: Kind
    semantic: Semantic
    day_of_week: str
    period_of_day: str
    month: str
    duration: float
    length: float
    sync_standard_count: int
    avg_std_duration: float
    avg_std_length: float
    stops: tuple[Stop, ...] = field(default=())

    @property
    def stop_total(self) -> int:
        return sum(s.duration for s in self.stops)


def make_trajectory(tid: str, xyt: Sequence[tuple[float, float, float]]) -> Trajectory:
    """Convenience constructor from ``(x, y, t)`` triples."""
    return Trajectory(tid, tuple(TrajectoryPoint(x, y, t) for x, y, t in xyt))
