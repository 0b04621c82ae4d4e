"""Pairwise distance matrices over a set of topic vectors."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .alignment import Alignment, _aligned_distance_prechecked
from .distances import Metric
from .errors import IncompatibleVectorsError, InsufficientDataError, InvalidParameterError
from .series import TopicVector
from .validation import check_distance_matrix, check_tdv_matrix


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric pairwise distances plus the provenance needed to rerun them."""

    topic_ids: tuple[str, ...]
    values: np.ndarray = field(repr=False)
    metric: Metric = Metric.NDS
    alignment: Alignment = Alignment.EXHAUSTIVE

    def __post_init__(self):
        arr = np.array(check_distance_matrix(self.values), copy=True)
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "topic_ids", tuple(self.topic_ids))
        if len(self.topic_ids) != arr.shape[0]:
            raise IncompatibleVectorsError(
                f"{len(self.topic_ids)} topic ids for a {arr.shape[0]}x{arr.shape[1]} matrix"
            )
        if len(set(self.topic_ids)) != len(self.topic_ids):
            raise InvalidParameterError("topic ids must be unique")

    def __len__(self) -> int:
        return len(self.topic_ids)


def pairwise_distances(
    X,
    metric=Metric.NDS,
    alignment=Alignment.EXHAUSTIVE,
    threads: int = 1,
) -> np.ndarray:
    """Distance between every pair of rows of a (topics x days) TDV matrix.

    Work is split by row across a bounded thread pool; results land in
    preassigned slots, so the output is identical for any thread count.
    """
    rows = check_tdv_matrix(X)
    met = Metric.coerce(metric)
    strategy = Alignment.coerce(alignment)
    if not isinstance(threads, (int, np.integer)) or isinstance(threads, bool) or threads < 1:
        raise InvalidParameterError(f"threads must be a positive integer, got {threads!r}")
    n = rows.shape[0]
    out = np.zeros((n, n), dtype=np.float64)

    def fill_row(i: int) -> None:
        for j in range(i + 1, n):
            d = _aligned_distance_prechecked(rows[i], rows[j], met, strategy)
            out[i, j] = d
            out[j, i] = d

    if threads == 1 or n < 3:
        for i in range(n):
            fill_row(i)
    else:
        with ThreadPoolExecutor(max_workers=int(threads)) as pool:
            list(pool.map(fill_row, range(n)))
    return out


def compute_distance_matrix(
    vectors: Sequence[TopicVector],
    metric=Metric.NDS,
    alignment=Alignment.EXHAUSTIVE,
    threads: int = 1,
) -> DistanceMatrix:
    """Assemble the full :class:`DistanceMatrix` for a list of topic vectors."""
    if len(vectors) < 2:
        raise InsufficientDataError(
            f"need at least 2 topics to build a distance matrix, got {len(vectors)}"
        )
    lengths = {len(v) for v in vectors}
    if len(lengths) != 1:
        raise IncompatibleVectorsError(
            f"all topic vectors must share one length, got lengths {sorted(lengths)}"
        )
    X = np.vstack([v.values for v in vectors])
    values = pairwise_distances(X, metric, alignment, threads)
    return DistanceMatrix(
        tuple(v.topic_id for v in vectors),
        values,
        Metric.coerce(metric),
        Alignment.coerce(alignment),
    )
