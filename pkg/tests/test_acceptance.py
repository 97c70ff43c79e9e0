"""Acceptance criteria, one marked test group per criterion.

The terminal summary prints one PASS/FAIL line per criterion.
"""

import random
import time

import pytest

from conftest import FIG6_MAX_DIST, make_candidate
from test_stops import constant_speed, planted_trace
from test_temporal import civil_from_epoch, utc
from trasod.candidates import group_candidates
from trasod.classifier import classify_group, find_standards
from trasod.cli import run as cli_run
from trasod.model import CandidateGroup, Kind, Params, Semantic
from trasod.neighborhood import BACKEND, build_index, neighbor_counts, neighborhood, neighborhood_brute_force
from trasod.pipeline import run
from trasod.stops import detect_stops
from trasod.synth import SynthSpec, generate, generate_benchmark, write_dataset
from trasod.temporal import DAYS, MONTHS, enrich

criterion = pytest.mark.criterion


def random_group(rng):
    cands = []
    for k in range(rng.randint(1, 20)):
        x, y = rng.uniform(0, 150), rng.uniform(0, 150)
        xys = []
        for _ in range(rng.randint(2, 50)):
            x += rng.uniform(-12, 12)
            y += rng.uniform(-12, 12)
            xys.append((x, y))
        cands.append(make_candidate(k, xys))
    return CandidateGroup("R1", "R2", tuple(cands))


def corridor_group(rng, n=None):
    """Candidates along a corridor with assorted lateral displacements, so
    that different radii and supports separate different subsets."""
    cands = []
    for k in range(n or rng.randint(6, 18)):
        lateral = rng.choice([0, 0, 0, 0, 15, 35, 65, 120]) * rng.choice([-1, 1])
        bump_at = rng.uniform(0.2, 0.8)
        xys = []
        for x in range(0, 301, 10):
            bump = lateral if abs(x / 300 - bump_at) < 0.15 else 0.0
            xys.append((float(x), bump + rng.uniform(-8, 8)))
        cands.append(make_candidate(k, xys, t0=rng.randint(0, 5000), dt=rng.randint(5, 15)))
    return CandidateGroup("R1", "R2", tuple(cands))


def check_partition(res):
    cids = {c.cid for c in res.group.candidates}
    out = {v.cid for v in res.outliers}
    assert not (res.standards & out)
    if res.standards:
        assert res.standards | out == cids
    else:
        assert out == set()


@criterion("AC1 oracle equivalence (grid index == brute force, >=100 groups, <30 s)")
def test_ac1_oracle_equivalence():
    rng = random.Random(2024)
    t0 = time.perf_counter()
    groups = 0
    for _ in range(120):
        g = random_group(rng)
        r = rng.uniform(1, 40)
        idx = build_index(g, r)
        counts = neighbor_counts(g, r)
        for c in g.candidates:
            for k, p in enumerate(c.points):
                expected = neighborhood_brute_force(p, c.cid, g, r)
                assert neighborhood(p, c.cid, idx, r) == expected
                assert counts[c.cid][k] == len(expected)
        groups += 1
    assert groups >= 100
    assert time.perf_counter() - t0 < 30


@criterion("AC2 worked example (c2 sole standard, c1 and c3 spatial outliers)")
def test_ac2_fig6(fig6_group):
    res = classify_group(fig6_group, Params(FIG6_MAX_DIST, 1, 0))
    assert res.standards == {2}
    kinds = {v.cid: v.classification.kind for v in res.outliers}
    assert set(kinds) == {1, 3}
    # spatial in nature; departures coincide here, so both are also synchronized
    assert set(kinds.values()) <= {Kind.SPATIAL_OUTLIER, Kind.SPATIO_TEMPORAL_OUTLIER}
    apart = classify_group(
        CandidateGroup("R1", "R2", tuple(
            make_candidate(c.cid, [(p.x, p.y) for p in c.points], t0=10_000 * c.cid) for c in fig6_group.candidates
        )),
        Params(FIG6_MAX_DIST, 1, 0),
    )
    assert {v.cid: v.classification.kind for v in apart.outliers} == {1: Kind.SPATIAL_OUTLIER, 3: Kind.SPATIAL_OUTLIER}


@criterion("AC3 partition (standards and outliers split candidates; no standard => no outlier)")
def test_ac3_partition():
    rng = random.Random(3)
    for _ in range(80):
        g = random_group(rng) if rng.random() < 0.5 else corridor_group(rng)
        for min_sup in (0, 1, 2, 4):
            check_partition(classify_group(g, Params(rng.uniform(5, 40), min_sup, 600)))
    for seed in range(8):
        spec = SynthSpec(seed=seed, n_standards=seed % 5, n_outliers=(seed * 3) % 4)
        trajs, regions, _ = generate(spec)
        for res in run(trajs, regions, Params(50, 2, 600)).results:
            check_partition(res)


SWEEP = [(50, 2), (50, 4), (50, 6), (20, 4), (80, 4)]  # (maxDist, minSup)


def check_chains(standards):
    """``standards`` maps (maxDist, minSup) to a standard set; returns which
    chains moved at all."""
    sup = [standards[(50, s)] for s in (2, 4, 6)]
    dist = [standards[(d, 4)] for d in (20, 50, 80)]
    assert sup[0] >= sup[1] >= sup[2]
    assert dist[0] <= dist[1] <= dist[2]
    return sup[0] != sup[2], dist[0] != dist[2]


@criterion("AC4 monotonicity sweeps over minSup 2/4/6 and maxDist 20/50/80")
def test_ac4_monotonicity():
    rng = random.Random(4)
    moved = [False, False]
    for _ in range(25):
        g = corridor_group(rng, n=rng.randint(8, 18))
        results = {k: classify_group(g, Params(k[0], k[1], 600)) for k in SWEEP}
        assert {len(r.group) for r in results.values()} == {len(g)}
        for i, m in enumerate(check_chains({k: r.standards for k, r in results.items()})):
            moved[i] |= m

    # full pipeline on a multi-region dataset
    trajs, regions, _ = generate_benchmark(seed=4, n_trajectories=120, n_points=120, outlier_fraction=0.3)
    runs = {k: run(trajs, regions, Params(k[0], k[1], 600)) for k in SWEEP}
    sizes = {tuple((r.group.key, len(r.group)) for r in res.results) for res in runs.values()}
    assert len(sizes) == 1
    for key in [r.group.key for r in runs[SWEEP[0]].results]:
        per_key = {k: next(r.standards for r in res.results if r.group.key == key) for k, res in runs.items()}
        for i, m in enumerate(check_chains(per_key)):
            moved[i] |= m
    # the sweep must actually separate something
    assert moved == [True, True]


AC5 = dict(n_standards=10, n_outliers=2, corridor_width=20, detour_offset=200, max_dist=50)


@criterion("AC5 planted outliers (10 standards / 2 outliers, spatio-temporal, Stop tag, <5 s)")
def test_ac5_planted_outliers():
    t0 = time.perf_counter()
    spec = SynthSpec(seed=5, departure_spread=600, **AC5)
    trajs, regions, labels = generate(spec)
    (res,) = run(trajs, regions, Params(50, 4, 1800)).results
    assert len(res.standards) == 10 and len(res.outliers) == 2
    tid = {c.cid: c.tid for c in res.group.candidates}
    assert {tid[v.cid] for v in res.outliers} == {t for t, l in labels.items() if l == "outlier"}
    assert all(v.classification.kind is Kind.SPATIO_TEMPORAL_OUTLIER for v in res.outliers)

    trajs, regions, _ = generate(SynthSpec(seed=5, departure_spread=600, planted_stops=((0, 600),), **AC5))
    (res,) = run(trajs, regions, Params(50, 4, 1800, max_stop_speed=1.0)).results
    assert len(res.standards) == 10 and len(res.outliers) == 2
    tid = {c.cid: c.tid for c in res.group.candidates}
    sem = {tid[v.cid]: v.classification.semantic for v in res.outliers}
    assert sem["o000"] is Semantic.STOP
    assert sem["o001"] in (Semantic.AVOIDANCE, Semantic.PLAIN)
    assert time.perf_counter() - t0 < 5


@criterion("AC6 stop detector (690 s stop within one interval; no false stops)")
def test_ac6_stops():
    for seed in range(5):
        c, _ = planted_trace(seed=seed, dt=10)
        stops = detect_stops(c, 0.5, 600)
        assert len(stops) == 1 and abs(stops[0].duration - 690) <= 10
    for speed in (2.0, 5.0, 10.0, 30.0):
        assert detect_stops(constant_speed(speed, n=2000), 1.0, 300) == []


@criterion("AC7 temporal enrichment (1000-timestamp calendar oracle, eight period edges)")
def test_ac7_temporal():
    rng = random.Random(7)
    for _ in range(1000):
        t = rng.randint(0, 4_102_444_800)
        weekday, month, _, _ = civil_from_epoch(t)
        f = enrich(t)
        assert (f.day_of_week, f.month) == (DAYS[weekday], MONTHS[month - 1])
    edges = {
        (0, 0, 0): "Night", (5, 59, 59): "Night", (6, 0, 0): "Morning", (11, 59, 59): "Morning",
        (12, 0, 0): "Afternoon", (17, 59, 59): "Afternoon", (18, 0, 0): "Evening", (23, 59, 59): "Evening",
    }
    for hms, period in edges.items():
        assert enrich(utc(2012, 11, 6, *hms)).period_of_day == period


@criterion("AC8 determinism (--threads 1 vs --threads 8 byte-identical reports)")
def test_ac8_determinism(tmp_path):
    trajs, regions, labels = generate_benchmark(seed=8, n_trajectories=60, n_points=150, outlier_fraction=0.3)
    paths = write_dataset(trajs, regions, labels, tmp_path)
    outs = []
    for threads in (1, 8):
        out = tmp_path / f"report{threads}.csv"
        code = cli_run([
            "--trajectories", str(paths["trajectories"]), "--regions", str(paths["regions"]),
            "--max-dist", "50", "--min-sup", "2", "--time-tolerance", "1800",
            "--threads", str(threads), "--out", str(out),
        ])
        assert code == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    assert outs[0].count(b"\n") > 1  # some outliers were reported


@pytest.mark.slow
@criterion("AC9 performance (500x400, 4 regions: pipeline <60 s, grid >=5x faster than brute)")
def test_ac9_performance():
    trajs, regions, labels = generate_benchmark(seed=0, n_trajectories=500, n_points=400, n_regions=4)
    params = Params(50, 4, 1800)
    t0 = time.perf_counter()
    run(trajs, regions, params)
    pipeline_s = time.perf_counter() - t0
    assert pipeline_s < 60

    groups = group_candidates(trajs, regions)

    def best(method):
        times = []
        for _ in range(3):
            s = time.perf_counter()
            out = [find_standards(g, 50, 4, method) for g in groups]
            times.append(time.perf_counter() - s)
        return min(times), out

    grid_s, grid_std = best("grid")
    brute_s, brute_std = best("brute")
    assert grid_std == brute_std
    print(f"\n[{BACKEND}] pipeline {pipeline_s:.2f} s, grid {grid_s:.3f} s, brute {brute_s:.3f} s, "
          f"speedup {brute_s / grid_s:.1f}x")
    assert brute_s / grid_s >= 5
