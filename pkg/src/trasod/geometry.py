"""Planar Euclidean primitives.

Point-in-polygon uses the even-odd rule; points within ``EDGE_TOLERANCE``
meters of an edge count as inside.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

if TYPE_CHECKING:
    from .model import Region

EDGE_TOLERANCE = 1e-9

Vertex = tuple[float, float]


def dist(p, q) -> float:
    return math.hypot(p.x - q.x, p.y - q.y)


def path_length(points: Sequence) -> float:
    total = 0.0
    for a, b in zip(points, points[1:]):
        total += math.hypot(b.x - a.x, b.y - a.y)
    return total


def _segment_distance(px: float, py: float, ax: float, ay: float, bx: float, by: float) -> float:
    dx, dy = bx - ax, by - ay
    seg2 = dx * dx + dy * dy
    if seg2 == 0.0:
        return math.hypot(px - ax, py - ay)
    u = ((px - ax) * dx + (py - ay) * dy) / seg2
    u = min(1.0, max(0.0, u))
    return math.hypot(px - (ax + u * dx), py - (ay + u * dy))


def point_in_ring(x: float, y: float, ring: Sequence[Vertex]) -> bool:
    inside = False
    n = len(ring)
    for i in range(n):
        ax, ay = ring[i]
        bx, by = ring[(i + 1) % n]
        if _segment_distance(x, y, ax, ay, bx, by) <= EDGE_TOLERANCE:
            return True
        if (ay > y) != (by > y):
            x_cross = ax + (y - ay) * (bx - ax) / (by - ay)
            if x < x_cross:
                inside = not inside
    return inside


def point_in_region(p, region: Region) -> bool:
    """True iff ``p`` lies inside ``region`` or on its boundary."""
    x0, y0, x1, y1 = region.bbox
    tol = EDGE_TOLERANCE
    if p.x < x0 - tol or p.x > x1 + tol or p.y < y0 - tol or p.y > y1 + tol:
        return False
    return point_in_ring(p.x, p.y, region.ring)


def points_in_region(xs: np.ndarray, ys: np.ndarray, region: Region) -> np.ndarray:
    """Vectorised :func:`point_in_region` over coordinate arrays."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    out = np.zeros(xs.shape, dtype=bool)
    x0, y0, x1, y1 = region.bbox
    tol = EDGE_TOLERANCE
    sel = np.flatnonzero((xs >= x0 - tol) & (xs <= x1 + tol) & (ys >= y0 - tol) & (ys <= y1 + tol))
    if sel.size == 0:
        return out
    px, py = xs[sel], ys[sel]
    inside = np.zeros(sel.shape, dtype=bool)
    on_edge = np.zeros(sel.shape, dtype=bool)
    ring = region.ring
    n = len(ring)
    with np.errstate(divide="ignore", invalid="ignore"):
        for i in range(n):
            ax, ay = ring[i]
            bx, by = ring[(i + 1) % n]
            dx, dy = bx - ax, by - ay
            seg2 = dx * dx + dy * dy
            if seg2 == 0.0:
                d = np.hypot(px - ax, py - ay)
            else:
                u = np.clip(((px - ax) * dx + (py - ay) * dy) / seg2, 0.0, 1.0)
                d = np.hypot(px - (ax + u * dx), py - (ay + u * dy))
            on_edge |= d <= tol
            straddle = (ay > py) != (by > py)
            x_cross = ax + (py - ay) * dx / dy
            inside ^= straddle & (px < x_cross)
    out[sel] = inside | on_edge
    return out


def _orient(a: Vertex, b: Vertex, c: Vertex) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment(a: Vertex, b: Vertex, c: Vertex) -> bool:
    """c is collinear with ab; check it lies within ab's bounding box."""
    return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])


def segments_intersect(p1: Vertex, p2: Vertex, q1: Vertex, q2: Vertex) -> bool:
    """Closed-segment intersection test (touching counts)."""
    d1 = _orient(q1, q2, p1)
    d2 = _orient(q1, q2, p2)
    d3 = _orient(p1, p2, q1)
    d4 = _orient(p1, p2, q2)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    if d1 == 0 and _on_segment(q1, q2, p1):
        return True
    if d2 == 0 and _on_segment(q1, q2, p2):
        return True
    if d3 == 0 and _on_segment(p1, p2, q1):
        return True
    if d4 == 0 and _on_segment(p1, p2, q2):
        return True
    return False


def _edges(ring: Sequence[Vertex]) -> list[tuple[Vertex, Vertex]]:
    n = len(ring)
    return [(ring[i], ring[(i + 1) % n]) for i in range(n)]


def is_simple_ring(ring: Sequence[Vertex]) -> bool:
    """False if any two non-adjacent edges of the (unclosed) ring touch,
    or adjacent edges fold back onto each other."""
    edges = _edges(ring)
    n = len(edges)
    for i in range(n):
        a1, a2 = edges[i]
        for j in range(i + 1, n):
            b1, b2 = edges[j]
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            if adjacent:
                # shared vertex is expected; overlap along a line is not
                shared = a2 if j == i + 1 else a1
                other_a = a1 if shared == a2 else a2
                other_b = b2 if shared == b1 else b1
                if _orient(other_a, shared, other_b) == 0 and (
                    _on_segment(shared, other_a, other_b) or _on_segment(shared, other_b, other_a)
                ):
                    return False
                continue
            if segments_intersect(a1, a2, b1, b2):
                return False
    return True


def rings_overlap(a: Sequence[Vertex], b: Sequence[Vertex]) -> bool:
    """True if two simple polygons share any point (interior or boundary)."""
    if any(point_in_ring(x, y, b) for x, y in a):
        return True
    if any(point_in_ring(x, y, a) for x, y in b):
        return True
    return any(segments_intersect(p1, p2, q1, q2) for p1, p2 in _edges(a) for q1, q2 in _edges(b))


def regions_overlap(a: Region, b: Region) -> bool:
    ax0, ay0, ax1, ay1 = a.bbox
    bx0, by0, bx1, by1 = b.bbox
    if ax1 < bx0 or bx1 < ax0 or ay1 < by0 or by1 < ay0:
        return False
    return rings_overlap(a.ring, b.ring)


def centroid(points: Iterable) -> tuple[float, float]:
    pts = list(points)
    return sum(p.x for p in pts) / len(pts), sum(p.y for p in pts) / len(pts)
