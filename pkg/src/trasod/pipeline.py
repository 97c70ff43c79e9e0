"""End-to-end outlier mining over a set of trajectories and regions."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .candidates import enumerate_region_pairs, group_candidates
from .classifier import GroupResult, build_reports, classify_group
from .model import CandidateGroup, OutlierReport, Params, Region, Trajectory
from .neighborhood import Method


@dataclass(frozen=True)
class PipelineResult:
    pairs: tuple[tuple[str, str], ...]
    skipped: tuple[tuple[str, str], ...]
    groups: tuple[CandidateGroup, ...]
    results: tuple[GroupResult, ...]
    reports: tuple[OutlierReport, ...]

    def summary_rows(self) -> list[tuple[str, str, int, int, int]]:
        """(from, to, candidates, standards, outliers) per group, in pair order."""
        return [
            (r.group.start_region, r.group.end_region, len(r.group), len(r.standards), len(r.outliers))
            for r in self.results
        ]


def classify_groups(
    groups: Sequence[CandidateGroup],
    params: Params,
    threads: int = 1,
    method: Method = "grid",
    backend: str | None = None,
) -> list[GroupResult]:
    if threads <= 1 or len(groups) <= 1:
        return [classify_group(g, params, method, backend) for g in groups]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        # map preserves input order regardless of completion order
        return list(pool.map(lambda g: classify_group(g, params, method, backend), groups))


def run(
    trajectories: Sequence[Trajectory],
    regions: Sequence[Region],
    params: Params,
    threads: int = 1,
    method: Method = "grid",
    backend: str | None = None,
) -> PipelineResult:
    skipped: list[tuple[str, str]] = []
    pairs = enumerate_region_pairs(regions, skipped)
    groups = group_candidates(trajectories, regions, pairs)
    results = classify_groups(groups, params, threads, method, backend)
    return PipelineResult(
        tuple(pairs), tuple(skipped), tuple(groups), tuple(results), tuple(build_reports(results))
    )
