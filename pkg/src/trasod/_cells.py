"""Uniform-grid cell table shared by both kernel backends."""

from __future__ import annotations

from typing import NamedTuple

import math

import numpy as np

_OFFSETS = [(dx, dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1)]


# Squared distances decide "within max_dist" quickly, but they can underflow,
# overflow or round differently from math.hypot. Outside a narrow band around
# max_dist**2 the squared test provably agrees with hypot; inside it, and for
# radii far from unit scale, fall back to hypot itself.
EXACT_ZERO, BANDED, HYPOT_ONLY = 0, 1, 2
_BAND = 1e-9


class DistanceTest(NamedTuple):
    mode: int
    lo: float  # squared distance at or below this: within
    hi: float  # squared distance above this: not within


def distance_test(max_dist: float) -> DistanceTest:
    if max_dist == 0:
        return DistanceTest(EXACT_ZERO, 0.0, 0.0)
    if 1e-100 <= max_dist <= 1e100:
        r2 = max_dist * max_dist
        return DistanceTest(BANDED, r2 * (1 - _BAND), r2 * (1 + _BAND))
    return DistanceTest(HYPOT_ONLY, -1.0, math.inf)


def within_mask(dx: np.ndarray, dy: np.ndarray, max_dist: float) -> np.ndarray:
    """Elementwise ``math.hypot(dx, dy) <= max_dist``."""
    test = distance_test(max_dist)
    if test.mode == EXACT_ZERO:
        return (dx == 0) & (dy == 0)
    with np.errstate(over="ignore", under="ignore"):
        d2 = dx * dx + dy * dy
    hit = d2 <= test.lo
    unsure = np.flatnonzero(~hit & (d2 <= test.hi))
    if unsure.size:
        fx, fy = dx.ravel()[unsure], dy.ravel()[unsure]
        hit.ravel()[unsure] = [math.hypot(a, b) <= max_dist for a, b in zip(fx.tolist(), fy.tolist())]
    return hit


class CellTable(NamedTuple):
    order: np.ndarray  # point indices sorted by cell, then owner when given
    starts: np.ndarray  # per cell, range into ``order``
    ends: np.ndarray
    neighbors: np.ndarray  # (n_cells, 9) cell ids of the 3x3 block, -1 if empty


# cell coordinates stay below this in magnitude, keeping int64 keys exact
_MAX_CELL_INDEX = 2.0**30


def cell_size_for(max_dist: float, xs: np.ndarray, ys: np.ndarray) -> float:
    """Cells a little wider than the radius, so a 3x3 block covers the query
    disc even when a coordinate difference rounds down onto ``max_dist``.

    Wider cells are still correct; they are used when the radius is zero or
    so small relative to the coordinates that cell indices would overflow.
    """
    extent = max(float(np.abs(xs).max(initial=0.0)), float(np.abs(ys).max(initial=0.0)))
    if extent == 0 and max_dist == 0:
        return 1.0
    return max(max_dist * (1 + _BAND), extent / _MAX_CELL_INDEX, 1e-300)


def build_cell_table(
    xs: np.ndarray, ys: np.ndarray, cell_size: float, owner: np.ndarray | None = None
) -> CellTable:
    n = xs.shape[0]
    if n == 0:
        empty = np.zeros(0, dtype=np.int64)
        return CellTable(empty, empty, empty, np.zeros((0, 9), dtype=np.int64))
    cx = np.floor(xs / cell_size).astype(np.int64)
    cy = np.floor(ys / cell_size).astype(np.int64)
    order = np.lexsort((cy, cx)) if owner is None else np.lexsort((owner, cy, cx))
    cxs, cys = cx[order], cy[order]
    change = np.flatnonzero((np.diff(cxs) != 0) | (np.diff(cys) != 0)) + 1
    starts = np.concatenate(([0], change)).astype(np.int64)
    ends = np.concatenate((change, [n])).astype(np.int64)
    ucx, ucy = cxs[starts], cys[starts]

    span_x = int(ucx.max() - ucx.min()) + 3
    span_y = int(ucy.max() - ucy.min()) + 3
    neighbors = np.full((starts.shape[0], 9), -1, dtype=np.int64)
    if span_x * span_y < 2**62:
        kx = ucx - ucx.min() + 1
        ky = ucy - ucy.min() + 1
        keys = kx * span_y + ky  # ascending: cells were sorted by (cx, cy)
        for slot, (dx, dy) in enumerate(_OFFSETS):
            probe = (kx + dx) * span_y + (ky + dy)
            pos = np.searchsorted(keys, probe)
            pos_c = np.minimum(pos, keys.shape[0] - 1)
            hit = keys[pos_c] == probe
            neighbors[hit, slot] = pos_c[hit]
    else:
        lookup = {(int(a), int(b)): k for k, (a, b) in enumerate(zip(ucx, ucy))}
        for k, (a, b) in enumerate(zip(ucx.tolist(), ucy.tolist())):
            for slot, (dx, dy) in enumerate(_OFFSETS):
                neighbors[k, slot] = lookup.get((a + dx, b + dy), -1)
    return CellTable(order.astype(np.int64), starts, ends, neighbors)


def run_ends(order: np.ndarray, starts: np.ndarray, owner: np.ndarray) -> np.ndarray:
    """For each sorted position, one past the end of its (cell, owner) run."""
    n = order.shape[0]
    so = owner[order]
    brk = np.zeros(n + 1, dtype=bool)
    brk[starts] = True
    brk[n] = True
    brk[1:n] |= so[1:] != so[:-1]
    edges = np.flatnonzero(brk)
    # position k belongs to the run starting at the last edge <= k
    run_idx = np.searchsorted(edges, np.arange(n), side="right") - 1
    return edges[run_idx + 1].astype(np.int64)
