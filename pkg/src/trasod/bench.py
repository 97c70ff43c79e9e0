"""Benchmark: grid vs brute-force standard computation, per kernel backend.

    python -m trasod.bench [--trajectories 500] [--points 400] [--regions 4]
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from .candidates import group_candidates
from .classifier import find_standards
from .model import CandidateGroup, Params
from .neighborhood import BACKEND, BACKENDS
from .pipeline import run
from .synth import generate_benchmark


@dataclass(frozen=True)
class Timing:
    backend: str
    method: str
    seconds: float
    standards: int


def time_standards(
    groups: list[CandidateGroup], max_dist: float, min_sup: int, backend: str, method: str, repeat: int = 1
) -> Timing:
    best = float("inf")
    n_std = 0
    for _ in range(repeat):
        t0 = time.perf_counter()
        n_std = sum(len(find_standards(g, max_dist, min_sup, method, backend)) for g in groups)
        best = min(best, time.perf_counter() - t0)
    return Timing(backend, method, best, n_std)


def run_benchmark(
    n_trajectories: int = 500,
    n_points: int = 400,
    n_regions: int = 4,
    max_dist: float = 50.0,
    min_sup: int = 4,
    seed: int = 0,
    backends: tuple[str, ...] | None = None,
    repeat: int = 1,
) -> dict:
    trajectories, regions, _ = generate_benchmark(seed, n_trajectories, n_points, n_regions)
    t0 = time.perf_counter()
    result = run(trajectories, regions, Params(max_dist, min_sup, 1800.0))
    pipeline_s = time.perf_counter() - t0
    groups = group_candidates(trajectories, regions)
    timings = [
        time_standards(groups, max_dist, min_sup, b, m, repeat)
        for b in (backends or tuple(BACKENDS))
        for m in ("grid", "brute")
    ]
    return {
        "pipeline_seconds": pipeline_s,
        "default_backend": BACKEND,
        "candidates": sum(len(g) for g in groups),
        "points": sum(len(c.points) for g in groups for c in g.candidates),
        "outliers": len(result.reports),
        "timings": timings,
    }


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trajectories", type=int, default=500)
    p.add_argument("--points", type=int, default=400)
    p.add_argument("--regions", type=int, default=4)
    p.add_argument("--max-dist", type=float, default=50.0)
    p.add_argument("--min-sup", type=int, default=4)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--backend", action="append", choices=sorted(BACKENDS), help="repeatable; default all")
    args = p.parse_args(argv)

    out = run_benchmark(
        args.trajectories, args.points, args.regions, args.max_dist, args.min_sup,
        backends=tuple(args.backend) if args.backend else None, repeat=args.repeat,
    )
    print(f"dataset: {args.trajectories} trajectories x {args.points} points, {args.regions} regions")
    print(f"candidates: {out['candidates']} ({out['points']} candidate points), outliers: {out['outliers']}")
    print(f"full pipeline ({out['default_backend']} kernels): {out['pipeline_seconds']:.2f} s")
    print(f"{'backend':<8} {'method':<6} {'seconds':>9} {'standards':>10}")
    for t in out["timings"]:
        print(f"{t.backend:<8} {t.method:<6} {t.seconds:>9.3f} {t.standards:>10}")
    by = {(t.backend, t.method): t.seconds for t in out["timings"]}
    for b in sorted({t.backend for t in out["timings"]}):
        print(f"{b}: grid is {by[(b, 'brute')] / by[(b, 'grid')]:.1f}x faster than brute force")
    if ("cython", "grid") in by and ("python", "grid") in by:
        print(f"compiled grid is {by[('python', 'grid')] / by[('cython', 'grid')]:.1f}x faster than the NumPy grid")


if __name__ == "__main__":
    main()
