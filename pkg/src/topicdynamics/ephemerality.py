"""Ephemerality: how fleeting a topic's attention is.

Three measures, each mapping a normalized activity curve to [0, 1]-ish
scores where higher means more short-lived:

* ``original``  - share of the active span burned before 80% of total
  attention has accumulated,
* ``filtered``  - like the original but with the first and last 10% of
  attention trimmed, so slow tails do not dominate,
* ``sorted``    - how few days, picked best-first, cover 80% of attention,
  relative to the number of active days.

Topics are then placed on a 2x2 grid (filtered x sorted) to call them
uniform, rollercoaster-like, or single-burst.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .series import TopicVector
from .validation import SUM_TOLERANCE, check_fraction, check_normalized

#: Tolerance used when a float prefix sum is compared against a threshold.
#: ``cumsum([0.1]*10)[7]`` is 0.7999999999999999; without the slack the
#: crossing index would depend on rounding noise instead of the data.
THRESHOLD_TOLERANCE = SUM_TOLERANCE


class Category(str, enum.Enum):
    """Cells of the ephemerality quadrant grid."""

    UNIFORM = "uniform"
    ROLLERCOASTER = "rollercoaster"
    BURST = "burst"
    UNDEFINED = "undefined"


class Orientation(str, enum.Enum):
    """How the sorted measure feeds the quadrant grid.

    ``VERBATIM`` uses the score as computed, under which a single burst
    scores low.  ``FLIPPED`` uses ``1 - score`` so that the "high" half of
    the axis means bursty, matching the grid's published reading.
    """

    VERBATIM = "verbatim"
    FLIPPED = "flipped"

    @classmethod
    def coerce(cls, value) -> "Orientation":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InvalidParameterError(
                f"unknown orientation {value!r}; expected one of "
                f"{[o.value for o in cls]}"
            ) from None


@dataclass(frozen=True)
class EphemeralityParams:
    """Thresholds shared by the three measures.

    ``mass_threshold`` is the attention share considered "most of it";
    ``trim_fraction`` is the share clipped from each end by the filtered
    measure (low cut = trim_fraction, high cut = 1 - trim_fraction).
    ``elementwise_trim`` switches the filtered measure's low cut to a
    per-day reading (first day whose own share reaches the cut) instead of
    the cumulative one; kept for comparison only.
    """

    mass_threshold: float = 0.8
    trim_fraction: float = 0.1
    elementwise_trim: bool = False

    def __post_init__(self):
        check_fraction(self.mass_threshold, "mass_threshold", open_low=True, open_high=True)
        check_fraction(self.trim_fraction, "trim_fraction", open_low=True)
        if self.trim_fraction >= 0.5:
            raise InvalidParameterError(
                f"trim_fraction must be below 0.5, got {self.trim_fraction}"
            )

    @property
    def low_cut(self) -> float:
        return self.trim_fraction

    @property
    def high_cut(self) -> float:
        return 1.0 - self.trim_fraction


DEFAULT_PARAMS = EphemeralityParams()


def _values_of(topic) -> np.ndarray:
    if isinstance(topic, TopicVector):
        return check_normalized(topic.values)
    return check_normalized(topic)


def _active_span(values: np.ndarray) -> tuple[int, int]:
    active = np.nonzero(values > 0.0)[0]
    return int(active[0]), int(active[-1])


def _first_crossing(prefix: np.ndarray, threshold: float) -> int:
    hit = np.nonzero(prefix >= threshold - THRESHOLD_TOLERANCE)[0]
    # The prefix ends at ~1 and thresholds stay below 1, so a hit exists.
    return int(hit[0])


def ephemerality_original(topic, params: EphemeralityParams = DEFAULT_PARAMS) -> float:
    """1 minus the fraction of the active span needed to reach the mass threshold.

    A topic active on a single day scores 1 (maximally fleeting).
    """
    values = _values_of(topic)
    start, end = _active_span(values)
    if start == end:
        return 1.0
    reach = _first_crossing(np.cumsum(values), params.mass_threshold)
    return 1.0 - (reach - start) / (end - start)


def ephemerality_filtered(topic, params: EphemeralityParams = DEFAULT_PARAMS) -> float:
    """Span between the trimmed mass cuts, relative to the active span.

    The low and high cut days are read off the cumulative curve (first day
    reaching ``trim_fraction`` and ``1 - trim_fraction`` of attention).
    With ``params.elementwise_trim`` the low cut instead takes the first
    day whose own share reaches the cut, falling back to the first active
    day when no single day is that heavy.
    """
    values = _values_of(topic)
    start, end = _active_span(values)
    if start == end:
        return 1.0
    prefix = np.cumsum(values)
    if params.elementwise_trim:
        heavy = np.nonzero(values >= params.low_cut - THRESHOLD_TOLERANCE)[0]
        low = int(heavy[0]) if heavy.size else start
    else:
        low = _first_crossing(prefix, params.low_cut)
    high = _first_crossing(prefix, params.high_cut)
    return 1.0 - (high - low) / (end - start)


def ephemerality_sorted(topic, params: EphemeralityParams = DEFAULT_PARAMS) -> float:
    """How few best days cover the mass threshold, relative to active days.

    Days are taken in decreasing order of attention; if ``k`` of ``D``
    active days reach the threshold the score is ``(k / D) /
    mass_threshold``, clamped to 1.
    """
    values = _values_of(topic)
    active_days = int(np.count_nonzero(values > 0.0))
    if active_days == 1:
        return 1.0
    ordered = np.sort(values)[::-1]
    k = _first_crossing(np.cumsum(ordered), params.mass_threshold) + 1
    return min(1.0, (k / active_days) / params.mass_threshold)


def categorize(
    e_filtered: float,
    e_sorted: float,
    theta_filtered: float,
    theta_sorted: float,
    orientation=Orientation.FLIPPED,
) -> Category:
    """Place one topic on the quadrant grid.

    ``theta_*`` split each axis into low (<=) and high (>).  The sorted
    score is first mapped through the orientation; ``theta_sorted`` applies
    to the oriented value.  Cells: low/low uniform, low filtered + high
    sorted rollercoaster, high/high burst, and high filtered + low sorted
    has no published name (undefined).
    """
    axis_sorted = _oriented(e_sorted, orientation)
    high_filtered = e_filtered > theta_filtered
    high_sorted = axis_sorted > theta_sorted
    if high_filtered:
        return Category.BURST if high_sorted else Category.UNDEFINED
    return Category.ROLLERCOASTER if high_sorted else Category.UNIFORM


def _oriented(e_sorted: float, orientation) -> float:
    if Orientation.coerce(orientation) is Orientation.FLIPPED:
        return 1.0 - e_sorted
    return e_sorted


@dataclass(frozen=True)
class EphemeralityReport:
    """Scores and grid cell for one topic."""

    topic_id: str
    e_orig: float
    e_filtered: float
    e_sorted: float
    category: Category


def score_topics(
    topics,
    params: EphemeralityParams = DEFAULT_PARAMS,
    orientation=Orientation.FLIPPED,
    theta_filtered: float | None = None,
    theta_sorted: float | None = None,
) -> list[EphemeralityReport]:
    """Score a set of topics and categorize them against shared thresholds.

    Thresholds default to the median of each axis over the given topics
    (the sorted-axis median is taken after orientation), so "high" means
    above the middle of this particular topic set.
    """
    orientation = Orientation.coerce(orientation)
    ids: list[str] = []
    triples: list[tuple[float, float, float]] = []
    for idx, topic in enumerate(topics):
        tid = topic.topic_id if isinstance(topic, TopicVector) else f"topic_{idx}"
        ids.append(tid)
        triples.append(
            (
                ephemerality_original(topic, params),
                ephemerality_filtered(topic, params),
                ephemerality_sorted(topic, params),
            )
        )
    if not triples:
        return []
    if theta_filtered is None:
        theta_filtered = float(np.median([t[1] for t in triples]))
    if theta_sorted is None:
        theta_sorted = float(np.median([_oriented(t[2], orientation) for t in triples]))
    return [
        EphemeralityReport(
            tid,
            e_orig,
            e_filt,
            e_sort,
            categorize(e_filt, e_sort, theta_filtered, theta_sorted, orientation),
        )
        for tid, (e_orig, e_filt, e_sort) in zip(ids, triples)
    ]
