import logging
import random

import pytest

from conftest import square
from trasod.candidates import enumerate_region_pairs, find_candidates, group_candidates
from trasod.geometry import point_in_region
from trasod.model import make_trajectory

R1 = square("R1", 0, 0, 10)
R2 = square("R2", 40, 0, 10)
R3 = square("R3", 80, 0, 10)


def line_trajectory(tid, xs, y=5.0, t0=0):
    return make_trajectory(tid, [(x, y, t0 + k) for k, x in enumerate(xs)])


def minimal_subtrajectories(t, start, end):
    """Every (i, m) with p_i in start, p_m in end and no fix in between in either."""
    inside_s = [point_in_region(p, start) for p in t.points]
    inside_e = [point_in_region(p, end) for p in t.points]
    out = set()
    for i in range(len(t.points)):
        for m in range(i + 1, len(t.points)):
            if inside_s[i] and inside_e[m] and not any(inside_s[i + 1 : m]) and not any(inside_e[i + 1 : m]):
                out.add((i, m))
    return out


def test_pairs_both_directions():
    assert enumerate_region_pairs([R1, R2]) == [("R1", "R2"), ("R2", "R1")]


def test_pairs_count_four_regions():
    regions = [square(f"Q{k}", 20 * k, 0, 10) for k in range(4)]
    assert len(enumerate_region_pairs(regions)) == 12


def test_overlapping_pair_skipped_with_warning(caplog):
    a, b = square("A", 0, 0, 10), square("B", 5, 5, 10)
    skipped = []
    with caplog.at_level(logging.WARNING):
        assert enumerate_region_pairs([a, b], skipped) == []
    assert skipped == [("A", "B"), ("B", "A")]
    assert sum("overlap" in r.message for r in caplog.records) == 1


def test_duplicate_rids_rejected():
    with pytest.raises(ValueError):
        enumerate_region_pairs([R1, square("R1", 50, 50, 1)])


def test_three_region_crossing_yields_three_candidates():
    t = line_trajectory("t", range(0, 92, 2))
    c12 = find_candidates(t, R1, R2)
    c23 = find_candidates(t, R2, R3)
    c13 = find_candidates(t, R1, R3)
    assert [(c.first_index, c.last_index) for c in c12] == [(5, 20)]
    assert [(c.first_index, c.last_index) for c in c23] == [(25, 40)]
    # the long candidate passes through R2 and contains the other two
    assert [(c.first_index, c.last_index) for c in c13] == [(5, 40)]


def test_trajectory_outside_regions_has_no_candidates():
    t = make_trajectory("t", [(100, 100, 0), (200, 100, 1)])
    assert find_candidates(t, R1, R2) == []


def test_back_and_forth_yields_two_candidates():
    xs = [5, 20, 45, 30, 5, 25, 45]
    t = line_trajectory("t", xs)
    found = find_candidates(t, R1, R2)
    assert [(c.first_index, c.last_index) for c in found] == [(0, 2), (4, 6)]
    assert {(c.first_index, c.last_index) for c in found} == minimal_subtrajectories(t, R1, R2)


def test_keeps_last_fix_of_start_region():
    t = line_trajectory("t", [1, 3, 5, 7, 9, 20, 45])
    (c,) = find_candidates(t, R1, R2)
    assert c.first_index == 4


def test_scan_matches_brute_force_enumeration_on_random_walks():
    rng = random.Random(11)
    for trial in range(200):
        xs = [rng.choice([5, 20, 45, 60, 85]) + rng.uniform(-3, 3) for _ in range(rng.randint(1, 25))]
        t = line_trajectory(f"t{trial}", xs)
        for a, b in [(R1, R2), (R2, R1), (R1, R3), (R3, R2)]:
            got = {(c.first_index, c.last_index) for c in find_candidates(t, a, b)}
            assert got == minimal_subtrajectories(t, a, b)


def test_group_sizes_porto_alegre_shape():
    trajs = [line_trajectory(f"ab{k}", range(5, 46, 5), t0=1000 * k) for k in range(8)]
    trajs += [line_trajectory(f"ba{k}", range(45, 4, -5), t0=1000 * k) for k in range(16)]
    groups = group_candidates(trajs, [R1, R2])
    assert [(g.key, len(g)) for g in groups] == [(("R1", "R2"), 8), (("R2", "R1"), 16)]
    assert sum(len(g) for g in groups) == 24


def test_group_candidates_empty_input():
    assert group_candidates([], [R1, R2]) == []


def test_one_trajectory_three_regions_three_groups():
    t = line_trajectory("t", range(0, 92, 2))
    groups = group_candidates([t], [R1, R2, R3])
    assert sorted((g.key, len(g)) for g in groups) == [
        (("R1", "R2"), 1), (("R1", "R3"), 1), (("R2", "R3"), 1)
    ]


def _random_dataset(seed):
    rng = random.Random(seed)
    trajs = []
    for k in range(15):
        xs = [rng.choice([5, 20, 45, 60, 85]) + rng.uniform(-3, 3) for _ in range(rng.randint(2, 30))]
        trajs.append(line_trajectory(f"t{k}", xs, y=rng.uniform(1, 9)))
    return trajs


def test_candidates_are_minimal_and_disjoint():
    regions = {r.rid: r for r in (R1, R2, R3)}
    groups = group_candidates(_random_dataset(5), list(regions.values()))
    assert groups
    for g in groups:
        for c in g.candidates:
            assert point_in_region(c.points[0], regions[c.start_region])
            assert point_in_region(c.points[-1], regions[c.end_region])
            for p in c.points[1:-1]:
                assert not point_in_region(p, regions[c.start_region])
                assert not point_in_region(p, regions[c.end_region])
        by_tid = {}
        for c in g.candidates:
            by_tid.setdefault(c.tid, []).append((c.first_index, c.last_index))
        for spans in by_tid.values():
            spans.sort()
            assert all(a[1] < b[0] for a, b in zip(spans, spans[1:]))


def test_grouping_invariant_under_trajectory_permutation():
    trajs = _random_dataset(9)
    shuffled = trajs[:]
    random.Random(1).shuffle(shuffled)

    def triples(groups):
        return {g.key: {(c.tid, c.first_index, c.last_index) for c in g.candidates} for g in groups}

    assert triples(group_candidates(trajs, [R1, R2, R3])) == triples(group_candidates(shuffled, [R1, R2, R3]))


def test_cids_are_unique_and_ordered():
    groups = group_candidates(_random_dataset(2), [R1, R2, R3])
    cids = [c.cid for g in groups for c in g.candidates]
    assert len(cids) == len(set(cids))
    for g in groups:
        assert [c.cid for c in g.candidates] == sorted(c.cid for c in g.candidates)
