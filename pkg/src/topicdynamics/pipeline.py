"""End-to-end run: ingest daily counts, compare, cluster, score, report.

Every output is written deterministically: topic order follows first
appearance in the input, reals are serialized in shortest round-trip form,
and nothing in any file depends on wall clock or worker scheduling, so a
rerun with the same input and configuration is byte-identical.
"""

from __future__ import annotations

import csv
import datetime
import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .alignment import Alignment, align_exhaustive, align_max, align_mean
from .clustering import NOISE, ClusterResult, cluster_topics
from .distances import Metric
from .ephemerality import (
    EphemeralityParams,
    EphemeralityReport,
    Orientation,
    _oriented,
    categorize,
    ephemerality_filtered,
    ephemerality_original,
    ephemerality_sorted,
)
from .errors import (
    DuplicateKeyError,
    IngestError,
    InsufficientDataError,
    InvalidParameterError,
)
from .matrix import DistanceMatrix, compute_distance_matrix
from .series import DEFAULT_SMOOTH_WINDOW, TopicSeries, TopicVector, preprocess
from .synthetic import generate_set, load_fixture_file, write_counts_csv
from .validation import check_window

logger = logging.getLogger(__name__)

INPUT_FIELDS = ("topic_id", "date", "count")


def fmt_float(value: float) -> str:
    """Shortest decimal form that round-trips to the same float64."""
    return repr(float(value))


@dataclass
class PipelineConfig:
    """Everything a run needs; the manifest embeds the result-relevant part."""

    input_path: str | Path | None = None
    out_dir: str | Path = "out"
    input_format: str = "csv"
    fixtures_path: str | Path | None = None
    date_from: datetime.date | None = None
    date_to: datetime.date | None = None
    smooth_window: int = DEFAULT_SMOOTH_WINDOW
    metric: Metric = Metric.NDS
    alignment: Alignment = Alignment.EXHAUSTIVE
    min_cluster_size: int = 3
    core_k: int | None = None
    mass_threshold: float = 0.8
    trim_fraction: float = 0.1
    e4_orientation: Orientation = Orientation.FLIPPED
    overlay_pair: tuple[str, str] | None = None
    threads: int = 1

    def __post_init__(self):
        self.metric = Metric.coerce(self.metric)
        self.alignment = Alignment.coerce(self.alignment)
        self.e4_orientation = Orientation.coerce(self.e4_orientation)
        check_window(self.smooth_window)
        if self.input_format not in ("csv", "jsonl"):
            raise InvalidParameterError(
                f"input_format must be 'csv' or 'jsonl', got {self.input_format!r}"
            )
        if self.input_path is None and self.fixtures_path is None:
            raise InvalidParameterError("either input_path or fixtures_path is required")
        if self.date_from and self.date_to and self.date_from > self.date_to:
            raise InvalidParameterError(
                f"date_from {self.date_from} is after date_to {self.date_to}"
            )

    def ephemerality_params(self) -> EphemeralityParams:
        return EphemeralityParams(self.mass_threshold, self.trim_fraction)


@dataclass
class IngestResult:
    series: list[TopicSeries]
    date_from: datetime.date
    date_to: datetime.date
    excluded_zero_activity: list[str]
    out_of_range_rows: int


def _parse_count(raw: str, line_no: int) -> int:
    try:
        count = int(raw)
    except (TypeError, ValueError):
        raise IngestError(f"line {line_no}: count {raw!r} is not an integer") from None
    if count < 0:
        raise IngestError(f"line {line_no}: negative count {count}")
    return count


def _parse_date(raw: str, line_no: int) -> datetime.date:
    try:
        return datetime.date.fromisoformat(str(raw))
    except ValueError:
        raise IngestError(f"line {line_no}: date {raw!r} is not an ISO date") from None


def _iter_csv(path: Path):
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise IngestError("line 1: empty input file") from None
        if tuple(h.strip() for h in header) != INPUT_FIELDS:
            raise IngestError(
                f"line 1: expected header {','.join(INPUT_FIELDS)}, got {','.join(header)}"
            )
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise IngestError(f"line {line_no}: expected 3 fields, got {len(row)}")
            yield line_no, row[0].strip(), row[1].strip(), row[2].strip()


def _iter_jsonl(path: Path):
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise IngestError(f"line {line_no}: invalid record ({exc.msg})") from None
            if not isinstance(record, dict) or not all(k in record for k in INPUT_FIELDS):
                raise IngestError(
                    f"line {line_no}: record needs fields {', '.join(INPUT_FIELDS)}"
                )
            yield line_no, str(record["topic_id"]), record["date"], record["count"]


def ingest(
    path,
    input_format: str = "csv",
    date_from: datetime.date | None = None,
    date_to: datetime.date | None = None,
) -> IngestResult:
    """Read daily counts and rebase every topic onto one common date range.

    Missing days become zeros.  Rows dated outside the requested range are
    dropped (their number is reported); topics left with no activity are
    excluded and listed.  Malformed rows and repeated ``(topic_id, date)``
    keys raise errors naming the offending line.
    """
    path = Path(path)
    rows = _iter_csv(path) if input_format == "csv" else _iter_jsonl(path)
    seen: dict[tuple[str, datetime.date], int] = {}
    per_topic: dict[str, dict[datetime.date, int]] = {}
    for line_no, topic_id, raw_date, raw_count in rows:
        if not topic_id:
            raise IngestError(f"line {line_no}: empty topic_id")
        day = _parse_date(raw_date, line_no)
        count = _parse_count(raw_count, line_no)
        key = (topic_id, day)
        if key in seen:
            raise DuplicateKeyError(
                f"line {line_no}: duplicate entry for topic {topic_id!r} on "
                f"{day.isoformat()} (first at line {seen[key]})"
            )
        seen[key] = line_no
        per_topic.setdefault(topic_id, {})[day] = count

    if not per_topic:
        raise InsufficientDataError("input contains no data rows")

    all_days = [d for counts in per_topic.values() for d in counts]
    lo = date_from or min(all_days)
    hi = date_to or max(all_days)
    if lo > hi:
        raise InvalidParameterError(f"date range {lo}..{hi} is empty")
    n_days = (hi - lo).days + 1

    series: list[TopicSeries] = []
    excluded: list[str] = []
    out_of_range = 0
    for topic_id, counts in per_topic.items():
        values = np.zeros(n_days, dtype=np.float64)
        total = 0
        for day, count in counts.items():
            if lo <= day <= hi:
                values[(day - lo).days] = count
                total += count
            else:
                out_of_range += 1
        if total > 0:
            series.append(TopicSeries(topic_id, lo, values))
        else:
            excluded.append(topic_id)
    if out_of_range:
        logger.warning("dropped %d rows outside %s..%s", out_of_range, lo, hi)
    if excluded:
        logger.info("excluded %d topics with no activity in range", len(excluded))
    return IngestResult(series, lo, hi, excluded, out_of_range)


@dataclass
class RunResult:
    out_dir: Path
    files: dict[str, Path]
    topic_ids: list[str]
    matrix: DistanceMatrix = field(repr=False)
    clusters: ClusterResult = field(repr=False)
    reports: list[EphemeralityReport] = field(repr=False)
    thresholds: tuple[float, float]


def run(config: PipelineConfig) -> RunResult:
    """Execute the full pipeline and write all artifacts into ``out_dir``."""
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    files: dict[str, Path] = {}

    input_path = config.input_path
    input_format = config.input_format
    if config.fixtures_path is not None:
        logger.info("generating fixture corpus from %s", config.fixtures_path)
        specs, start_date = load_fixture_file(config.fixtures_path)
        series_set, labels = generate_set(specs, start_date)
        input_path = out_dir / "fixtures.csv"
        write_counts_csv(series_set, input_path)
        labels_path = out_dir / "fixture_labels.csv"
        with open(labels_path, "w", encoding="utf-8", newline="") as fh:
            fh.write("topic_id,label\n")
            for topic_id, label in labels.items():
                fh.write(f"{topic_id},{label}\n")
        files["fixtures"] = input_path
        files["fixture_labels"] = labels_path
        input_format = "csv"

    ingested = ingest(input_path, input_format, config.date_from, config.date_to)
    if len(ingested.series) < 2:
        raise InsufficientDataError(
            f"need at least 2 topics with activity, got {len(ingested.series)}"
        )
    logger.info(
        "ingested %d topics over %s..%s",
        len(ingested.series),
        ingested.date_from,
        ingested.date_to,
    )

    vectors: list[TopicVector] = [
        preprocess(s, config.smooth_window) for s in ingested.series
    ]
    topic_ids = [v.topic_id for v in vectors]

    matrix = compute_distance_matrix(
        vectors, config.metric, config.alignment, config.threads
    )
    logger.info("distance matrix done (%s, %s)", config.metric.value, config.alignment.value)

    clusters = cluster_topics(matrix, config.min_cluster_size, config.core_k)
    logger.info(
        "%d clusters, %d noise topics",
        clusters.n_clusters,
        int(np.sum(clusters.labels == NOISE)),
    )

    params = config.ephemerality_params()
    triples = [
        (
            ephemerality_original(v, params),
            ephemerality_filtered(v, params),
            ephemerality_sorted(v, params),
        )
        for v in vectors
    ]
    theta_filtered = float(np.median([t[1] for t in triples]))
    theta_sorted = float(
        np.median([_oriented(t[2], config.e4_orientation) for t in triples])
    )
    reports = [
        EphemeralityReport(
            tid,
            e_orig,
            e_filt,
            e_sort,
            categorize(e_filt, e_sort, theta_filtered, theta_sorted, config.e4_orientation),
        )
        for tid, (e_orig, e_filt, e_sort) in zip(topic_ids, triples)
    ]

    files["distance_matrix"] = _write_matrix(out_dir, matrix)
    files["clusters"] = _write_clusters(out_dir, topic_ids, clusters)
    files["ephemerality"] = _write_ephemerality(out_dir, reports)
    files["cluster_stats"] = _write_cluster_stats(out_dir, clusters, reports)
    files["curves"] = _write_curves(out_dir, vectors)
    files["cluster_members"] = _write_cluster_members(out_dir, topic_ids, clusters)
    files["scatter"] = _write_scatter(out_dir, reports, clusters)
    files["cluster_tree"] = _write_cluster_tree(out_dir, clusters)
    files["aligned_pair"] = _write_aligned_pair(out_dir, vectors, matrix, config)
    files["manifest"] = _write_manifest(
        out_dir, config, input_path, ingested, topic_ids, clusters,
        (theta_filtered, theta_sorted),
    )
    logger.info("wrote %d files to %s", len(files), out_dir)
    return RunResult(
        out_dir, files, topic_ids, matrix, clusters, reports, (theta_filtered, theta_sorted)
    )


# --- writers ---------------------------------------------------------------


def _write_matrix(out_dir: Path, matrix: DistanceMatrix) -> Path:
    path = out_dir / "distance_matrix.csv"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("topic_id," + ",".join(matrix.topic_ids) + "\n")
        for tid, row in zip(matrix.topic_ids, matrix.values):
            fh.write(tid + "," + ",".join(fmt_float(v) for v in row) + "\n")
    return path


def _write_clusters(out_dir: Path, topic_ids: list[str], clusters: ClusterResult) -> Path:
    path = out_dir / "clusters.csv"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("topic_id,cluster,stability,medoid_distance\n")
        for idx, tid in enumerate(topic_ids):
            label = int(clusters.labels[idx])
            if label == NOISE:
                fh.write(f"{tid},{label},,\n")
            else:
                fh.write(
                    f"{tid},{label},{fmt_float(clusters.stabilities[label])},"
                    f"{fmt_float(clusters.medoid_distance[idx])}\n"
                )
    return path


def _write_ephemerality(out_dir: Path, reports: list[EphemeralityReport]) -> Path:
    path = out_dir / "ephemerality.csv"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("topic_id,e_orig,e_filtered,e_sorted,category\n")
        for r in reports:
            fh.write(
                f"{r.topic_id},{fmt_float(r.e_orig)},{fmt_float(r.e_filtered)},"
                f"{fmt_float(r.e_sorted)},{r.category.value}\n"
            )
    return path


def _write_cluster_stats(
    out_dir: Path, clusters: ClusterResult, reports: list[EphemeralityReport]
) -> Path:
    path = out_dir / "cluster_stats.csv"
    by_measure = np.array([(r.e_orig, r.e_filtered, r.e_sorted) for r in reports])
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(
            "cluster,n_topics,e_orig_mean,e_orig_std,e_filtered_mean,e_filtered_std,"
            "e_sorted_mean,e_sorted_std\n"
        )
        for label in sorted(set(int(v) for v in clusters.labels)):
            members = clusters.labels == label
            stats: list[str] = [str(label), str(int(members.sum()))]
            for col in range(3):
                vals = by_measure[members, col]
                stats.append(fmt_float(np.mean(vals)))
                stats.append(fmt_float(np.std(vals)))
            fh.write(",".join(stats) + "\n")
    return path


def _write_curves(out_dir: Path, vectors: list[TopicVector]) -> Path:
    path = out_dir / "curves.csv"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("topic_id,day,value\n")
        for v in vectors:
            for day, value in enumerate(v.values):
                fh.write(f"{v.topic_id},{day},{fmt_float(value)}\n")
    return path


def _write_cluster_members(
    out_dir: Path, topic_ids: list[str], clusters: ClusterResult
) -> Path:
    path = out_dir / "cluster_members.csv"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("cluster,rank,topic_id,medoid_distance\n")
        for label in range(clusters.n_clusters):
            members = clusters.members(label)
            # Sort by distance to the medoid; index breaks exact ties.
            order = sorted(members, key=lambda i: (clusters.medoid_distance[i], i))
            for rank, idx in enumerate(order):
                fh.write(
                    f"{label},{rank},{topic_ids[idx]},"
                    f"{fmt_float(clusters.medoid_distance[idx])}\n"
                )
    return path


def _write_scatter(
    out_dir: Path, reports: list[EphemeralityReport], clusters: ClusterResult
) -> Path:
    path = out_dir / "ephemerality_scatter.csv"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("topic_id,e_filtered,e_sorted,category,cluster\n")
        for r, label in zip(reports, clusters.labels):
            fh.write(
                f"{r.topic_id},{fmt_float(r.e_filtered)},{fmt_float(r.e_sorted)},"
                f"{r.category.value},{int(label)}\n"
            )
    return path


def _write_cluster_tree(out_dir: Path, clusters: ClusterResult) -> Path:
    path = out_dir / "cluster_tree.jsonl"
    dendro = clusters.dendrogram
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for row_idx in range(dendro.merges.shape[0]):
            left, right, dist, size = dendro.merges[row_idx]
            record = {
                "node": dendro.n_leaves + row_idx,
                "left": int(left),
                "right": int(right),
                "distance": float(dist),
                "size": int(size),
            }
            fh.write(json.dumps(record, sort_keys=True) + "\n")
    return path


def _write_aligned_pair(
    out_dir: Path,
    vectors: list[TopicVector],
    matrix: DistanceMatrix,
    config: PipelineConfig,
) -> Path:
    path = out_dir / "aligned_pair.csv"
    if config.overlay_pair is not None:
        id_a, id_b = config.overlay_pair
        try:
            ia = matrix.topic_ids.index(id_a)
            ib = matrix.topic_ids.index(id_b)
        except ValueError as exc:
            raise InvalidParameterError(f"overlay pair topic not found: {exc}") from None
    else:
        # Default to the closest pair; their overlay is the most telling.
        n = len(matrix)
        masked = matrix.values + np.where(np.eye(n, dtype=bool), np.inf, 0.0)
        ia, ib = np.unravel_index(int(np.argmin(masked)), masked.shape)
        ia, ib = int(min(ia, ib)), int(max(ia, ib))
    va = vectors[ia].values
    vb = vectors[ib].values
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("alignment,shift,day,a_value,b_value\n")

        def block(name: str, a, b, shift: int):
            for day, (x, y) in enumerate(zip(a, b)):
                fh.write(f"{name},{shift},{day},{fmt_float(x)},{fmt_float(y)}\n")

        block(Alignment.NONE.value, va, vb, 0)
        pair = align_max(va, vb)
        block(Alignment.MAX.value, pair.a, pair.b, pair.shift)
        pair = align_mean(va, vb)
        block(Alignment.MEAN.value, pair.a, pair.b, pair.shift)
        pair, _ = align_exhaustive(va, vb, config.metric)
        block(Alignment.EXHAUSTIVE.value, pair.a, pair.b, pair.shift)
    return path


def _write_manifest(
    out_dir: Path,
    config: PipelineConfig,
    input_path,
    ingested: IngestResult,
    topic_ids: list[str],
    clusters: ClusterResult,
    thresholds: tuple[float, float],
) -> Path:
    path = out_dir / "manifest.json"
    digest = hashlib.sha256(Path(input_path).read_bytes()).hexdigest()
    input_path = Path(input_path)
    try:
        # Inputs generated into the run directory are recorded relative to
        # it, so runs into different directories stay byte-comparable.
        input_display = str(input_path.relative_to(out_dir))
    except ValueError:
        input_display = str(input_path)
    # The thread count is deliberately absent: it cannot change any result,
    # and keeping it out makes reruns byte-comparable across machines.
    manifest = {
        "version": __version__,
        "input": {
            "path": input_display,
            "format": "csv" if config.fixtures_path is not None else config.input_format,
            "sha256": digest,
            "fixtures_path": (
                str(config.fixtures_path) if config.fixtures_path is not None else None
            ),
        },
        "date_range": {
            "from": ingested.date_from.isoformat(),
            "to": ingested.date_to.isoformat(),
        },
        "config": {
            "smooth_window": config.smooth_window,
            "metric": config.metric.value,
            "alignment": config.alignment.value,
            "min_cluster_size": config.min_cluster_size,
            "core_k": config.core_k,
            "mass_threshold": config.mass_threshold,
            "trim_fraction": config.trim_fraction,
            "e4_orientation": config.e4_orientation.value,
            "overlay_pair": list(config.overlay_pair) if config.overlay_pair else None,
        },
        "topics": {
            "analyzed": len(topic_ids),
            "excluded_zero_activity": ingested.excluded_zero_activity,
            "rows_out_of_range": ingested.out_of_range_rows,
        },
        "clusters": {
            "count": clusters.n_clusters,
            "noise": int(np.sum(clusters.labels == NOISE)),
        },
        "categorization_thresholds": {
            "e_filtered": thresholds[0],
            "e_sorted_oriented": thresholds[1],
        },
    }
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path
