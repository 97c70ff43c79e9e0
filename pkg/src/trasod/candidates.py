"""Candidate extraction between ordered pairs of regions."""

from __future__ import annotations

import dataclasses
import itertools
import logging
from typing import Sequence

import numpy as np

from .geometry import points_in_region, regions_overlap
from .model import Candidate, CandidateGroup, Region, Trajectory

log = logging.getLogger(__name__)


def enumerate_region_pairs(
    regions: Sequence[Region], skipped: list[tuple[str, str]] | None = None
) -> list[tuple[str, str]]:
    """All ordered pairs of distinct, non-overlapping regions.

    Pairs whose polygons intersect are left out, logged, and appended to
    ``skipped`` when a list is passed in.
    """
    rids = [r.rid for r in regions]
    if len(set(rids)) != len(rids):
        raise ValueError("region ids must be distinct")
    overlapping = set()
    for a, b in itertools.combinations(regions, 2):
        if regions_overlap(a, b):
            log.warning("regions %r and %r overlap; pair skipped", a.rid, b.rid)
            overlapping.add((a.rid, b.rid))
            overlapping.add((b.rid, a.rid))
    pairs = []
    for a in regions:
        for b in regions:
            if a.rid == b.rid:
                continue
            if (a.rid, b.rid) in overlapping:
                if skipped is not None:
                    skipped.append((a.rid, b.rid))
                continue
            pairs.append((a.rid, b.rid))
    return pairs


def scan_traversals(in_start: Sequence[bool], in_end: Sequence[bool]) -> list[tuple[int, int]]:
    """Index ranges ``(first, last)`` of each start->end traversal.

    Keeps the most recent fix inside the start region; the first fix inside
    the end region afterwards closes the traversal.
    """
    spans = []
    last_start = None
    for i, (s, e) in enumerate(zip(in_start, in_end)):
        if s:
            last_start = i
        elif e and last_start is not None:
            spans.append((last_start, i))
            last_start = None
    return spans


def _membership(t: Trajectory, region: Region, cache: dict | None) -> np.ndarray:
    if cache is None:
        return points_in_region(t.xs, t.ys, region)
    key = (t.tid, region.rid)
    hit = cache.get(key)
    if hit is None:
        hit = cache[key] = points_in_region(t.xs, t.ys, region)
    return hit


def find_candidates(
    t: Trajectory,
    start: Region,
    end: Region,
    first_cid: int = 0,
    _cache: dict | None = None,
) -> list[Candidate]:
    """Candidates of ``t`` moving from ``start`` to ``end``; cids count up from ``first_cid``."""
    if start.rid == end.rid:
        raise ValueError("start and end region must differ")
    in_start = _membership(t, start, _cache)
    in_end = _membership(t, end, _cache)
    if not in_start.any() or not in_end.any():
        return []
    # regions are disjoint, so a fix can't be in both
    spans = scan_traversals(in_start.tolist(), (in_end & ~in_start).tolist())
    return [
        Candidate(
            cid=first_cid + k,
            tid=t.tid,
            start_region=start.rid,
            end_region=end.rid,
            first_index=i,
            last_index=m,
            points=t.points[i : m + 1],
        )
        for k, (i, m) in enumerate(spans)
    ]


def group_candidates(
    trajectories: Sequence[Trajectory],
    regions: Sequence[Region],
    pairs: Sequence[tuple[str, str]] | None = None,
) -> list[CandidateGroup]:
    """Extract and group candidates for every ordered region pair.

    Cids follow (trajectory input order, start index, pair order), so the
    numbering does not depend on how work is scheduled. Pairs without any
    candidate produce no group.
    """
    if pairs is None:
        pairs = enumerate_region_pairs(regions)
    by_rid = {r.rid: r for r in regions}
    pair_rank = {pair: k for k, pair in enumerate(pairs)}
    cache: dict = {}

    found: list[tuple[int, int, int, Candidate]] = []
    for ti, t in enumerate(trajectories):
        for pair in pairs:
            for c in find_candidates(t, by_rid[pair[0]], by_rid[pair[1]], _cache=cache):
                found.append((ti, c.first_index, pair_rank[pair], c))
        # membership arrays are per trajectory; drop them once it is done
        cache.clear()
    found.sort(key=lambda item: item[:3])

    members: dict[tuple[str, str], list[Candidate]] = {pair: [] for pair in pairs}
    for cid, (_, _, _, c) in enumerate(found):
        members[(c.start_region, c.end_region)].append(dataclasses.replace(c, cid=cid))
    return [CandidateGroup(a, b, tuple(cs)) for (a, b), cs in members.items() if cs]

