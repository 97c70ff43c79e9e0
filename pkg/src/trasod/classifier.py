"""Standard / outlier classification of candidate groups and report building."""

from __future__ import annotations

from dataclasses import dataclass, field
from statistics import fmean
from typing import Iterable, Sequence

from .model import (
    Candidate,
    CandidateGroup,
    Classification,
    Kind,
    OutlierReport,
    Params,
    Semantic,
    Stop,
)
from .neighborhood import Method, min_neighborhood_sizes
from .stops import detect_stops
from .temporal import enrich


@dataclass(frozen=True)
class OutlierVerdict:
    cid: int
    classification: Classification
    sync_standards: frozenset[int]
    stops: tuple[Stop, ...] = ()


@dataclass(frozen=True)
class GroupResult:
    group: CandidateGroup
    standards: frozenset[int]
    outliers: tuple[OutlierVerdict, ...] = field(default=())

    @property
    def potential_outliers(self) -> frozenset[int]:
        """Non-standard cids; reported as outliers only if a standard exists."""
        return frozenset(c.cid for c in self.group.candidates) - self.standards


def find_standards(
    group: CandidateGroup,
    max_dist: float,
    min_sup: int,
    method: Method = "grid",
    backend: str | None = None,
) -> frozenset[int]:
    """Candidates whose every point has at least ``min_sup`` neighbors."""
    if not group.candidates:
        return frozenset()
    if min_sup == 0:
        return frozenset(c.cid for c in group.candidates)
    sizes = min_neighborhood_sizes(group, max_dist, method, backend)
    return frozenset(cid for cid, size in sizes.items() if size >= min_sup)


def synchronized_standards(o: Candidate, standards: Iterable[Candidate], time_tolerance: float) -> frozenset[int]:
    return frozenset(s.cid for s in standards if abs(s.t_first - o.t_first) <= time_tolerance)


def semantic_classify(o: Candidate, reference: Sequence[Candidate], stops: Sequence[Stop]) -> Semantic:
    """Avoidance if faster than the reference standards' mean duration,
    Stop if slower and it stopped, Plain otherwise (including ties)."""
    if not reference:
        raise ValueError("reference standard set is empty")
    avg = fmean(s.duration for s in reference)
    if o.duration < avg:
        return Semantic.AVOIDANCE
    if o.duration > avg and stops:
        return Semantic.STOP
    return Semantic.PLAIN


def reference_standards(verdict: OutlierVerdict, group_standards: Sequence[Candidate]) -> list[Candidate]:
    if verdict.classification.kind is Kind.SPATIO_TEMPORAL_OUTLIER:
        return [s for s in group_standards if s.cid in verdict.sync_standards]
    return list(group_standards)


def classify_group(
    group: CandidateGroup,
    params: Params,
    method: Method = "grid",
    backend: str | None = None,
) -> GroupResult:
    standards = find_standards(group, params.max_dist, params.min_sup, method, backend)
    if not standards:
        return GroupResult(group, standards)
    std_cands = [c for c in group.candidates if c.cid in standards]
    verdicts = []
    for o in group.candidates:
        if o.cid in standards:
            continue
        sync = synchronized_standards(o, std_cands, params.time_tolerance)
        kind = Kind.SPATIO_TEMPORAL_OUTLIER if sync else Kind.SPATIAL_OUTLIER
        stops = tuple(detect_stops(o, params.max_stop_speed, params.min_stop_duration))
        reference = std_cands if kind is Kind.SPATIAL_OUTLIER else [s for s in std_cands if s.cid in sync]
        semantic = semantic_classify(o, reference, stops)
        verdicts.append(OutlierVerdict(o.cid, Classification(kind, semantic), sync, stops))
    return GroupResult(group, standards, tuple(verdicts))


def build_reports(results: Iterable[GroupResult]) -> list[OutlierReport]:
    reports = []
    for res in results:
        members = res.group.by_cid()
        std_cands = [c for c in res.group.candidates if c.cid in res.standards]
        for v in res.outliers:
            o = members[v.cid]
            ref = reference_standards(v, std_cands)
            facets = enrich(o.t_first)
            reports.append(
                OutlierReport(
                    cid=o.cid,
                    tid=o.tid,
                    start_region=o.start_region,
                    end_region=o.end_region,
                    kind=v.classification.kind,
                    semantic=v.classification.semantic,
                    day_of_week=facets.day_of_week,
                    period_of_day=facets.period_of_day,
                    month=facets.month,
                    duration=float(o.duration),
                    length=o.length,
                    sync_standard_count=len(v.sync_standards),
                    avg_std_duration=fmean(s.duration for s in ref),
                    avg_std_length=fmean(s.length for s in ref),
                    stops=v.stops,
                )
            )
    reports.sort(key=lambda r: (r.start_region, r.end_region, r.cid))
    return reports
