"""Daily activity series and their normalized distribution vectors.

A topic arrives as a run of daily counts.  Before any distance is computed
the counts are smoothed with a centered moving average and scaled to sum to
one, so that topics of very different volume become comparable shapes.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateTopicError
from .validation import SUM_TOLERANCE, as_count_matrix, as_curve, check_window

#: Default width (days) of the centered moving-average window.
DEFAULT_SMOOTH_WINDOW = 3


def _frozen_array(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64, copy=True)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class TopicSeries:
    """One topic's consecutive daily activity counts.

    ``counts[m]`` is the activity on ``start_date + m`` days.  Raw ingested
    counts are integers; a smoothed series carries real values.
    """

    topic_id: str
    start_date: datetime.date
    counts: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = _frozen_array(as_curve(self.counts, "counts"))
        object.__setattr__(self, "counts", arr)

    def __len__(self) -> int:
        return int(self.counts.shape[0])

    @property
    def end_date(self) -> datetime.date:
        return self.start_date + datetime.timedelta(days=len(self) - 1)

    @property
    def total(self) -> float:
        return float(self.counts.sum())


@dataclass(frozen=True)
class TopicVector:
    """A topic's activity as a distribution over days.

    ``values`` are nonnegative and, when ``normalized`` is true, sum to one
    within 1e-9.  ``smooth_window`` records the moving-average width applied
    before normalization (1 means none).
    """

    topic_id: str
    values: np.ndarray = field(repr=False)
    smooth_window: int = 1
    normalized: bool = True

    def __post_init__(self):
        arr = _frozen_array(as_curve(self.values, "values"))
        object.__setattr__(self, "values", arr)
        check_window(self.smooth_window)
        if self.normalized and abs(float(arr.sum()) - 1.0) > SUM_TOLERANCE:
            raise DegenerateTopicError(
                f"topic {self.topic_id!r}: values marked normalized but sum to "
                f"{float(arr.sum())!r}"
            )

    def __len__(self) -> int:
        return int(self.values.shape[0])


def smooth_values(values, window: int = DEFAULT_SMOOTH_WINDOW) -> np.ndarray:
    """Centered moving average with the window truncated at the boundaries.

    Interior days average ``window`` neighbors; near the edges only the
    in-range part of the window contributes, and the divisor shrinks to the
    number of days actually covered.  ``smooth_values([0, 9, 0], 3)`` is
    ``[4.5, 3.0, 4.5]``.
    """
    arr = as_curve(values)
    w = check_window(window)
    if w == 1:
        return arr.copy()
    half = (w - 1) // 2
    kernel = np.ones(w, dtype=np.float64)
    # Full convolution then a centered slice handles series shorter than the
    # window; dividing by the in-range coverage truncates at the boundaries.
    sums = np.convolve(arr, kernel, mode="full")[half : half + arr.shape[0]]
    coverage = np.convolve(np.ones_like(arr), kernel, mode="full")[half : half + arr.shape[0]]
    return sums / coverage


def normalize_values(values) -> np.ndarray:
    """Scale a nonnegative vector to sum to one.

    Raises ``DegenerateTopicError`` when the vector has no mass at all.
    """
    arr = as_curve(values)
    total = float(arr.sum())
    if total <= 0.0:
        raise DegenerateTopicError("cannot normalize a vector with zero total activity")
    return arr / total


def smooth(series: TopicSeries, window: int = DEFAULT_SMOOTH_WINDOW) -> TopicSeries:
    """Return a copy of ``series`` with its counts smoothed (values stay real)."""
    return TopicSeries(series.topic_id, series.start_date, smooth_values(series.counts, window))


def normalize(series: TopicSeries) -> TopicVector:
    """Turn a series into a normalized distribution vector (no smoothing)."""
    return TopicVector(series.topic_id, normalize_values(series.counts))


def preprocess(
    series: TopicSeries,
    window: int = DEFAULT_SMOOTH_WINDOW,
    *,
    normalize_first: bool = False,
) -> TopicVector:
    """Standard preparation of a raw series: smooth, then normalize.

    Normalizing last guarantees the sum-to-one invariant regardless of how
    the boundary truncation redistributes mass.  ``normalize_first=True``
    applies the steps in the opposite order for comparison; its result is
    generally not an exact distribution, so the returned vector only claims
    ``normalized`` when the sum happens to land within tolerance.
    """
    w = check_window(window)
    if normalize_first:
        values = smooth_values(normalize_values(series.counts), w)
        is_normalized = abs(float(values.sum()) - 1.0) <= SUM_TOLERANCE
        return TopicVector(series.topic_id, values, smooth_window=w, normalized=is_normalized)
    values = normalize_values(smooth_values(series.counts, w))
    return TopicVector(series.topic_id, values, smooth_window=w)


def preprocess_counts(counts, window: int = DEFAULT_SMOOTH_WINDOW) -> np.ndarray:
    """Array-level version of :func:`preprocess` for a single counts vector."""
    return normalize_values(smooth_values(counts, window))


def preprocess_matrix(X, window: int = DEFAULT_SMOOTH_WINDOW) -> np.ndarray:
    """Smooth and normalize every row of a (topics x days) count matrix."""
    X = as_count_matrix(X)
    return np.vstack([preprocess_counts(row, window) for row in X])
