"""``trasod`` command: mine semantic outliers between regions of interest.

Exit codes: 0 success, 1 input error, 2 parameter error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Sequence

from . import formats
from .model import Params, ValidationError
from .pipeline import PipelineResult, run as run_pipeline

log = logging.getLogger("trasod")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PARAMS = 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="trasod",
        description="Find standard paths and semantic spatial / spatio-temporal outliers "
        "among trajectories moving between regions.",
    )
    p.add_argument("--trajectories", required=True, help="CSV with header tid,x,y,t")
    p.add_argument("--regions", required=True, help="CSV with header rid,name,wkt")
    p.add_argument("--max-dist", type=float, required=True, help="neighborhood radius, meters")
    p.add_argument("--min-sup", type=int, required=True, help="minimum neighbors per point for a standard")
    p.add_argument(
        "--time-tolerance", type=float, required=True,
        help="max departure-time difference for synchronization, seconds",
    )
    p.add_argument("--max-stop-speed", type=float, default=1.0, help="m/s (default: %(default)s)")
    p.add_argument("--min-stop-duration", type=float, default=300.0, help="seconds (default: %(default)s)")
    p.add_argument("--crs", choices=formats.CRS_MODES, default="planar")
    p.add_argument("--out", required=True, help="report CSV path")
    p.add_argument("--geojson", help="optional GeoJSON overlay path")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def format_summary(result: PipelineResult) -> str:
    rows = [("from", "to", "candidates", "standards", "outliers")]
    rows += [(a, b, str(n), str(s), str(o)) for a, b, n, s, o in result.summary_rows()]
    widths = [max(len(r[i]) for r in rows) for i in range(5)]
    lines = ["  ".join(cell.rjust(w) if i >= 2 else cell.ljust(w) for i, (cell, w) in enumerate(zip(r, widths))) for r in rows]
    total = (sum(len(r.group) for r in result.results), sum(len(r.standards) for r in result.results), len(result.reports))
    lines.append(f"total: {total[0]} candidates, {total[1]} standards, {total[2]} outliers")
    return "\n".join(lines)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARAMS if exc.code else EXIT_OK
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        params = Params(
            max_dist=args.max_dist,
            min_sup=args.min_sup,
            time_tolerance=args.time_tolerance,
            max_stop_speed=args.max_stop_speed,
            min_stop_duration=args.min_stop_duration,
        )
    except ValidationError as exc:
        print(f"trasod: invalid parameter: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    if args.threads < 1:
        print("trasod: invalid parameter: --threads must be >= 1", file=sys.stderr)
        return EXIT_PARAMS

    try:
        trajectories, projection = formats.load_trajectories(args.trajectories, args.crs)
        regions = formats.read_regions(args.regions, projection)
    except FileNotFoundError as exc:
        print(f"trasod: no such file: {exc.filename}", file=sys.stderr)
        return EXIT_INPUT
    except (formats.InputError, ValidationError, UnicodeDecodeError) as exc:
        print(f"trasod: {exc}", file=sys.stderr)
        return EXIT_INPUT
    log.info("loaded %d trajectories, %d regions", len(trajectories), len(regions))

    result = run_pipeline(trajectories, regions, params, threads=args.threads)
    for a, b in sorted({tuple(sorted(pair)) for pair in result.skipped}):
        print(f"trasod: warning: regions {a} and {b} overlap; pair skipped", file=sys.stderr)

    try:
        formats.write_report_csv(result.reports, args.out)
        if args.geojson:
            formats.write_geojson(result.results, regions, args.geojson, projection)
    except OSError as exc:
        print(f"trasod: cannot write output: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(format_summary(result))
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
