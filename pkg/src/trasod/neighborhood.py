"""Candidate neighborhoods of trajectory points.

The neighborhood of a point ``p`` of candidate ``c`` is the set of *other*
candidates in the same group with at least one point within ``max_dist`` of
``p``. Two routes compute it:

* a uniform grid with cell size ``max_dist`` (only the 3x3 block around a
  point can hold neighbors), used per point by :func:`neighborhood` and in
  bulk by :func:`neighbor_counts`;
* an exhaustive scan, :func:`neighborhood_brute_force`, kept as the oracle.

Bulk counting runs on the compiled ``_kernels`` extension when it is
importable, else on the NumPy fallback. ``TRASOD_PURE_PYTHON=1`` forces the
fallback.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from types import ModuleType
from typing import Literal

import numpy as np

from . import _kernels_py
from ._cells import cell_size_for
from .geometry import dist
from .model import Candidate, CandidateGroup, TrajectoryPoint

_native: ModuleType | None
try:
    if os.environ.get("TRASOD_PURE_PYTHON"):
        raise ImportError("compiled kernels disabled by TRASOD_PURE_PYTHON")
    from . import _kernels as _native
except ImportError:
    _native = None

BACKENDS: dict[str, ModuleType] = {"python": _kernels_py}
if _native is not None:
    BACKENDS["cython"] = _native
BACKEND = "cython" if _native is not None else "python"

Method = Literal["grid", "brute"]


def _cell(x: float, y: float, size: float) -> tuple[int, int]:
    return math.floor(x / size), math.floor(y / size)


@dataclass(frozen=True)
class GridIndex:
    max_dist: float
    cell_size: float  # >= max_dist; wider only when needed to keep cell ids finite
    cells: dict[tuple[int, int], tuple[tuple[int, int], ...]]  # cell -> ((cid, point index), ...)
    group: CandidateGroup

    def __post_init__(self) -> None:
        object.__setattr__(self, "_members", self.group.by_cid())

    def candidate(self, cid: int) -> Candidate:
        return self._members[cid]

    @property
    def n_entries(self) -> int:
        return sum(len(v) for v in self.cells.values())


def build_index(group: CandidateGroup, max_dist: float) -> GridIndex:
    if not max_dist > 0:
        raise ValueError(f"max_dist must be > 0, got {max_dist!r}")
    xs, ys, _, _ = pack_group(group)
    size = cell_size_for(max_dist, xs, ys)
    cells: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for c in group.candidates:
        for k, p in enumerate(c.points):
            cells.setdefault(_cell(p.x, p.y, size), []).append((c.cid, k))
    return GridIndex(max_dist, size, {key: tuple(v) for key, v in cells.items()}, group)


def neighborhood(p: TrajectoryPoint, self_cid: int, index: GridIndex, max_dist: float) -> set[int]:
    if max_dist != index.max_dist:
        raise ValueError("index was built for a different max_dist")
    try:
        cx, cy = _cell(p.x, p.y, index.cell_size)
    except OverflowError:  # query point far outside the indexed extent
        return neighborhood_brute_force(p, self_cid, index.group, max_dist)
    found: set[int] = set()
    for gx in (cx - 1, cx, cx + 1):
        for gy in (cy - 1, cy, cy + 1):
            for cid, k in index.cells.get((gx, gy), ()):
                if cid == self_cid or cid in found:
                    continue
                if dist(p, index.candidate(cid).points[k]) <= max_dist:
                    found.add(cid)
    return found


def neighborhood_brute_force(
    p: TrajectoryPoint, self_cid: int, group: CandidateGroup, max_dist: float
) -> set[int]:
    return {
        c.cid
        for c in group.candidates
        if c.cid != self_cid and any(dist(p, q) <= max_dist for q in c.points)
    }


def min_neighborhood_size(c: Candidate, index: GridIndex, max_dist: float) -> int:
    return min(len(neighborhood(p, c.cid, index, max_dist)) for p in c.points)


def pack_group(group: CandidateGroup) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Flatten a group into ``(xs, ys, owner, offsets)`` arrays.

    ``owner`` is the position of each point's candidate within the group;
    candidate ``k`` occupies ``offsets[k]:offsets[k + 1]``.
    """
    sizes = np.fromiter((len(c.points) for c in group.candidates), dtype=np.int64, count=len(group))
    offsets = np.concatenate(([0], np.cumsum(sizes))).astype(np.int64)
    n = int(offsets[-1])
    xs = np.empty(n, dtype=np.float64)
    ys = np.empty(n, dtype=np.float64)
    for k, c in enumerate(group.candidates):
        a, b = offsets[k], offsets[k + 1]
        xs[a:b] = [p.x for p in c.points]
        ys[a:b] = [p.y for p in c.points]
    owner = np.repeat(np.arange(len(group), dtype=np.int64), sizes)
    return xs, ys, owner, offsets


def neighbor_counts(
    group: CandidateGroup,
    max_dist: float,
    method: Method = "grid",
    backend: str | None = None,
) -> dict[int, np.ndarray]:
    """Per candidate, the neighborhood size at each of its points."""
    if max_dist < 0:
        raise ValueError(f"max_dist must be >= 0, got {max_dist!r}")
    kernels = BACKENDS[backend or BACKEND]
    fn = kernels.neighbor_counts_grid if method == "grid" else kernels.neighbor_counts_brute
    xs, ys, owner, offsets = pack_group(group)
    counts = fn(xs, ys, owner, offsets, float(max_dist))
    return {c.cid: counts[offsets[k] : offsets[k + 1]] for k, c in enumerate(group.candidates)}


def min_neighborhood_sizes(
    group: CandidateGroup,
    max_dist: float,
    method: Method = "grid",
    backend: str | None = None,
) -> dict[int, int]:
    counts = neighbor_counts(group, max_dist, method, backend)
    return {cid: int(v.min()) for cid, v in counts.items()}
