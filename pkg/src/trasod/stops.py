"""Speed-threshold stop detection inside a candidate."""

from __future__ import annotations

from typing import Sequence

from .geometry import centroid, dist
from .model import Candidate, Stop, TrajectoryPoint


def slow_segments(points: Sequence[TrajectoryPoint], max_stop_speed: float) -> list[bool]:
    """``out[k]`` is True when the hop from point k to k+1 is at or below the speed limit."""
    return [dist(a, b) / (b.t - a.t) <= max_stop_speed for a, b in zip(points, points[1:])]


def detect_stops_in(
    points: Sequence[TrajectoryPoint], max_stop_speed: float, min_stop_duration: float
) -> list[Stop]:
    if max_stop_speed <= 0 or min_stop_duration <= 0:
        raise ValueError("stop parameters must be positive")
    slow = slow_segments(points, max_stop_speed)
    stops = []
    k = 0
    while k < len(slow):
        if not slow[k]:
            k += 1
            continue
        run_start = k
        while k < len(slow) and slow[k]:
            k += 1
        i, j = run_start, k  # segments run_start..k-1 cover points i..j
        span = points[j].t - points[i].t
        if span >= min_stop_duration:
            stops.append(Stop(i, j, span, centroid(points[i : j + 1])))
    return stops


def detect_stops(c: Candidate, max_stop_speed: float = 1.0, min_stop_duration: float = 300.0) -> list[Stop]:
    """Maximal runs of slow hops lasting at least ``min_stop_duration`` seconds."""
    return detect_stops_in(c.points, max_stop_speed, min_stop_duration)
