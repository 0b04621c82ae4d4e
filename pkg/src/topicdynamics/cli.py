"""Command-line entry point.

Exit codes: 0 on success, 2 for invalid flags or unparseable input,
3 when there is too little data to analyze, 4 for filesystem problems.
"""

from __future__ import annotations

import argparse
import datetime
import logging
import sys

from . import __version__
from .alignment import Alignment
from .distances import Metric
from .ephemerality import Orientation
from .errors import InsufficientDataError, TopicDynamicsError
from .pipeline import PipelineConfig, run

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INSUFFICIENT_DATA = 3
EXIT_IO = 4


def _iso_date(raw: str) -> datetime.date:
    try:
        return datetime.date.fromisoformat(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{raw!r} is not a YYYY-MM-DD date") from None


def _pair(raw: str) -> tuple[str, str]:
    parts = raw.split(",")
    if len(parts) != 2 or not all(p.strip() for p in parts):
        raise argparse.ArgumentTypeError(
            f"{raw!r} is not a 'topic_a,topic_b' pair"
        )
    return parts[0].strip(), parts[1].strip()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topicdynamics",
        description=(
            "Compare, cluster, and score discussion topics purely by the "
            "shape of their daily activity curves."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", help="daily counts file (topic_id,date,count)")
    source.add_argument(
        "--fixtures",
        help="JSON shape-spec file; generates a synthetic corpus and runs on it",
    )
    parser.add_argument(
        "--input-format",
        choices=["csv", "jsonl"],
        default="csv",
        help="input encoding: csv (default) or line-delimited records",
    )
    parser.add_argument("--from", dest="date_from", type=_iso_date, metavar="DATE",
                        help="first day of the analysis range (default: earliest in data)")
    parser.add_argument("--to", dest="date_to", type=_iso_date, metavar="DATE",
                        help="last day of the analysis range (default: latest in data)")
    parser.add_argument("--smooth-window", type=int, default=3,
                        help="odd moving-average width in days (default 3)")
    parser.add_argument("--metric", choices=[m.value for m in Metric], default=Metric.NDS.value,
                        help="distance between curves (default nds)")
    parser.add_argument("--alignment", choices=[a.value for a in Alignment],
                        default=Alignment.EXHAUSTIVE.value,
                        help="shift strategy applied before measuring (default exhaustive)")
    parser.add_argument("--min-cluster-size", type=int, default=3,
                        help="smallest cluster worth reporting (default 3)")
    parser.add_argument("--core-k", type=int, default=None,
                        help="neighbor rank for core distances (default: min cluster size)")
    parser.add_argument("--mass-threshold", type=float, default=0.8,
                        help="attention share treated as 'most of it' (default 0.8)")
    parser.add_argument("--trim", type=float, default=0.1,
                        help="attention share trimmed per end by the filtered measure (default 0.1)")
    parser.add_argument("--e4-orientation", choices=[o.value for o in Orientation],
                        default=Orientation.FLIPPED.value,
                        help="sorted-measure reading for the quadrant grid (default flipped)")
    parser.add_argument("--overlay-pair", type=_pair, metavar="A,B", default=None,
                        help="topics for the alignment overlay (default: closest pair)")
    parser.add_argument("--out", default="out", help="output directory (default ./out)")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads for the distance matrix (default 1)")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = PipelineConfig(
            input_path=args.input,
            out_dir=args.out,
            input_format=args.input_format,
            fixtures_path=args.fixtures,
            date_from=args.date_from,
            date_to=args.date_to,
            smooth_window=args.smooth_window,
            metric=args.metric,
            alignment=args.alignment,
            min_cluster_size=args.min_cluster_size,
            core_k=args.core_k,
            mass_threshold=args.mass_threshold,
            trim_fraction=args.trim,
            e4_orientation=args.e4_orientation,
            overlay_pair=args.overlay_pair,
            threads=args.threads,
        )
        result = run(config)
    except InsufficientDataError as exc:
        logger.error("%s", exc)
        return EXIT_INSUFFICIENT_DATA
    except TopicDynamicsError as exc:
        logger.error("%s", exc)
        return EXIT_INVALID
    except OSError as exc:
        logger.error("%s", exc)
        return EXIT_IO
    print(result.out_dir)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
