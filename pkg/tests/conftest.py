from __future__ import annotations

import pytest

from trasod.model import Candidate, CandidateGroup, Region, TrajectoryPoint

_criteria: list[tuple[str, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion, reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria.append((marker.args[0], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    verdict: dict[str, str] = {}
    for label, outcome in _criteria:
        if verdict.get(label) in (None, "passed"):
            verdict[label] = outcome
    terminalreporter.section("acceptance criteria")
    for label, outcome in verdict.items():
        status = {"passed": "PASS", "failed": "FAIL"}.get(outcome, outcome.upper())
        terminalreporter.write_line(f"{status}  {label}")


def square(rid: str, x0: float, y0: float, size: float) -> Region:
    return Region(rid, rid, ((x0, y0), (x0 + size, y0), (x0 + size, y0 + size), (x0, y0 + size)))


def make_candidate(cid: int, xys, t0: int = 0, dt: int = 10, start="R1", end="R2", tid=None) -> Candidate:
    pts = tuple(TrajectoryPoint(x, y, t0 + k * dt) for k, (x, y) in enumerate(xys))
    return Candidate(cid, tid or f"t{cid}", start, end, 0, len(pts) - 1, pts)


def fig6_layout() -> CandidateGroup:
    """Three candidates R1 -> R2 along y=0.

    c2 runs straight. c1 escorts it (y=+10) except for x in 65..90 where it
    swings out to y=+80; c3 escorts it (y=-10) except for x in 10..35 where
    it swings out to y=-80. With max_dist 15, every c2 point is near one of
    them, while c1 and c3 each have points with no neighbor at all.
    """
    xs = list(range(0, 101, 5))
    c2 = [(x, 0.0) for x in xs]
    c1 = [(x, 80.0 if 65 <= x <= 90 else 10.0) for x in xs]
    c3 = [(x, -80.0 if 10 <= x <= 35 else -10.0) for x in xs]
    return CandidateGroup("R1", "R2", (make_candidate(1, c1), make_candidate(2, c2), make_candidate(3, c3)))


FIG6_MAX_DIST = 15.0


@pytest.fixture
def fig6_group() -> CandidateGroup:
    return fig6_layout()


@pytest.fixture
def unit_square() -> Region:
    return square("U", 0.0, 0.0, 1.0)
