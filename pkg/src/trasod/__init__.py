"""Semantic spatial and spatio-temporal outlier mining for trajectories
moving between regions of interest."""

from .candidates import enumerate_region_pairs, find_candidates, group_candidates
from .classifier import (
    GroupResult,
    OutlierVerdict,
    build_reports,
    classify_group,
    find_standards,
    semantic_classify,
    synchronized_standards,
)
from .model import (
    Candidate,
    CandidateGroup,
    Classification,
    Kind,
    OutlierReport,
    Params,
    Region,
    Semantic,
    Stop,
    Trajectory,
    TrajectoryPoint,
    ValidationError,
)
from .neighborhood import (
    BACKEND,
    GridIndex,
    build_index,
    min_neighborhood_size,
    neighborhood,
    neighborhood_brute_force,
)
from .pipeline import PipelineResult, run
from .stops import detect_stops
from .temporal import TimeFacets, enrich

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Candidate",
    "CandidateGroup",
    "Classification",
    "GridIndex",
    "GroupResult",
    "Kind",
    "OutlierReport",
    "OutlierVerdict",
    "Params",
    "PipelineResult",
    "Region",
    "Semantic",
    "Stop",
    "TimeFacets",
    "Trajectory",
    "TrajectoryPoint",
    "ValidationError",
    "build_index",
    "build_reports",
    "classify_group",
    "detect_stops",
    "enrich",
    "enumerate_region_pairs",
    "find_candidates",
    "find_standards",
    "group_candidates",
    "min_neighborhood_size",
    "neighborhood",
    "neighborhood_brute_force",
    "run",
    "semantic_classify",
    "synchronized_standards",
]
