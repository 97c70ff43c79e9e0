"""NumPy implementations of the neighbor-count kernels.

Used when the compiled ``_kernels`` extension is unavailable. Both functions
return, for every point, the number of *other* owners (candidates) that have
at least one point within ``max_dist``.
"""

from __future__ import annotations

import numpy as np

from ._cells import build_cell_table, cell_size_for, within_mask

# upper bound on distance-matrix entries materialised at once
_MAX_BLOCK = 1 << 22


def _count_block(ax, ay, ao, bx, by, bo, bounds, max_dist, out) -> None:
    """Distinct-owner hit counts of rows (a*) against columns (b*).

    Columns must be sorted by owner; ``bounds`` are the column offsets where
    each owner run starts.
    """
    rows_per_chunk = max(1, _MAX_BLOCK // max(bx.shape[0], 1))
    for r0 in range(0, ax.shape[0], rows_per_chunk):
        r1 = min(ax.shape[0], r0 + rows_per_chunk)
        dx = ax[r0:r1, None] - bx[None, :]
        dy = ay[r0:r1, None] - by[None, :]
        hit = within_mask(dx, dy, max_dist) & (bo[None, :] != ao[r0:r1, None])
        out[r0:r1] = np.logical_or.reduceat(hit, bounds, axis=1).sum(axis=1)


def _owner_runs(owners: np.ndarray) -> np.ndarray:
    return np.concatenate(([0], np.flatnonzero(np.diff(owners)) + 1))


def neighbor_counts_grid(xs, ys, owner, offsets, max_dist: float) -> np.ndarray:
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    owner = np.ascontiguousarray(owner, dtype=np.int64)
    n = xs.shape[0]
    counts = np.zeros(n, dtype=np.int32)
    if n == 0:
        return counts
    table = build_cell_table(xs, ys, cell_size_for(max_dist, xs, ys))
    order = table.order
    sx, sy, so = xs[order], ys[order], owner[order]
    buf = np.zeros(n, dtype=np.int32)
    for cell in range(table.starts.shape[0]):
        a0, a1 = table.starts[cell], table.ends[cell]
        idx = np.concatenate([np.arange(table.starts[nb], table.ends[nb]) for nb in table.neighbors[cell] if nb >= 0])
        idx = idx[np.argsort(so[idx], kind="stable")]
        bo = so[idx]
        out = buf[: a1 - a0]
        _count_block(sx[a0:a1], sy[a0:a1], so[a0:a1], sx[idx], sy[idx], bo, _owner_runs(bo), max_dist, out)
        counts[order[a0:a1]] = out
    return counts


def neighbor_counts_brute(xs, ys, owner, offsets, max_dist: float) -> np.ndarray:
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    owner = np.ascontiguousarray(owner, dtype=np.int64)
    n = xs.shape[0]
    counts = np.zeros(n, dtype=np.int32)
    if n == 0:
        return counts
    srt = np.argsort(owner, kind="stable")
    bx, by, bo = xs[srt], ys[srt], owner[srt]
    _count_block(xs, ys, owner, bx, by, bo, _owner_runs(bo), max_dist, counts)
    return counts
