"""Synthetic daily-count generators for the four canonical topic shapes.

Each spec deterministically (per seed) produces one topic's integer counts:
a flat line, a single Gaussian burst over a small baseline, several
separated bursts, or a raised sinusoid.  Noise is multiplicative lognormal
jitter applied to the real-valued profile; the profile is rescaled to the
requested total mass afterwards, and rounding to integers happens last.
"""

from __future__ import annotations

import datetime
import enum
import json
from dataclasses import dataclass, replace

import numpy as np

from .errors import InvalidParameterError
from .series import TopicSeries

DEFAULT_LENGTH = 222
DEFAULT_START_DATE = datetime.date(2024, 1, 1)


class Shape(str, enum.Enum):
    UNIFORM = "uniform"
    BURST = "burst"
    ROLLERCOASTER = "rollercoaster"
    SEASONAL = "seasonal"

    @classmethod
    def coerce(cls, value) -> "Shape":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InvalidParameterError(
                f"unknown shape {value!r}; expected one of {[s.value for s in cls]}"
            ) from None


@dataclass(frozen=True)
class ShapeSpec:
    """Parameters for one synthetic topic.

    Only the fields relevant to ``kind`` are read: ``center``/``width``
    for bursts (center defaults to the middle), ``n_bursts``/``separation``
    /``width`` for rollercoasters (centers straddle the middle), and
    ``period``/``phase``/``amplitude`` for seasonal curves.  ``noise`` is
    the sigma of the lognormal day-level jitter.
    """

    kind: Shape
    length: int = DEFAULT_LENGTH
    total_mass: int = 100_000
    center: int | None = None
    width: float = 3.0
    n_bursts: int = 2
    separation: int | None = None
    period: float | None = None
    phase: float = 0.0
    amplitude: float = 0.9
    baseline_share: float = 0.02
    noise: float = 0.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", Shape.coerce(self.kind))
        if int(self.length) < 1:
            raise InvalidParameterError(f"length must be >= 1, got {self.length}")
        if int(self.total_mass) < 1:
            raise InvalidParameterError(f"total_mass must be >= 1, got {self.total_mass}")
        if not self.width > 0:
            raise InvalidParameterError(f"width must be positive, got {self.width}")
        if self.kind is Shape.ROLLERCOASTER and int(self.n_bursts) < 2:
            raise InvalidParameterError(
                f"a rollercoaster needs >= 2 bursts, got {self.n_bursts}"
            )
        if not 0.0 <= float(self.amplitude) <= 1.0:
            raise InvalidParameterError(f"amplitude must be in [0, 1], got {self.amplitude}")
        if not 0.0 <= float(self.baseline_share) < 1.0:
            raise InvalidParameterError(
                f"baseline_share must be in [0, 1), got {self.baseline_share}"
            )
        if float(self.noise) < 0.0:
            raise InvalidParameterError(f"noise must be >= 0, got {self.noise}")


def _gaussian(days: np.ndarray, center: float, width: float) -> np.ndarray:
    return np.exp(-0.5 * ((days - center) / width) ** 2)


def _template(spec: ShapeSpec) -> np.ndarray:
    """Unit-sum real-valued shape before jitter and scaling."""
    days = np.arange(spec.length, dtype=np.float64)
    if spec.kind is Shape.UNIFORM:
        profile = np.ones(spec.length, dtype=np.float64)
    elif spec.kind is Shape.BURST:
        center = (spec.length - 1) / 2 if spec.center is None else float(spec.center)
        profile = _peaked_profile(spec, _gaussian(days, center, spec.width))
    elif spec.kind is Shape.ROLLERCOASTER:
        sep = float(spec.separation) if spec.separation is not None else spec.length / spec.n_bursts
        mid = (spec.length - 1) / 2
        peaks = np.zeros_like(days)
        for i in range(spec.n_bursts):
            center = mid + (i - (spec.n_bursts - 1) / 2) * sep
            if not 0 <= center <= spec.length - 1:
                raise InvalidParameterError(
                    f"burst center {center} falls outside the {spec.length}-day grid; "
                    "reduce separation or n_bursts"
                )
            peaks += _gaussian(days, center, spec.width)
        profile = _peaked_profile(spec, peaks)
    else:  # seasonal
        period = float(spec.period) if spec.period is not None else float(spec.length)
        profile = 1.0 + spec.amplitude * np.sin(2.0 * np.pi * (days - spec.phase) / period)
    return profile / profile.sum()


def _peaked_profile(spec: ShapeSpec, peaks: np.ndarray) -> np.ndarray:
    # A small uniform baseline keeps burst topics from having zero-activity
    # tails, like real discussions that simmer before and after the spike.
    baseline = spec.baseline_share / spec.length
    return (1.0 - spec.baseline_share) * peaks / peaks.sum() + baseline


def generate(
    spec: ShapeSpec,
    topic_id: str | None = None,
    start_date: datetime.date = DEFAULT_START_DATE,
) -> TopicSeries:
    """Materialize a spec into integer daily counts.

    The ground-truth label of the result is ``spec.kind``.  Counts sum to
    ``total_mass`` up to rounding, are nonnegative, and are identical for
    identical specs.
    """
    profile = _template(spec) * float(spec.total_mass)
    if spec.noise > 0.0:
        rng = np.random.default_rng(spec.seed)
        profile = profile * rng.lognormal(mean=0.0, sigma=spec.noise, size=spec.length)
        profile *= float(spec.total_mass) / profile.sum()
    counts = np.rint(profile)
    if topic_id is None:
        topic_id = f"{spec.kind.value}_{spec.seed}"
    return TopicSeries(topic_id, start_date, counts)


def generate_set(
    specs,
    start_date: datetime.date = DEFAULT_START_DATE,
) -> tuple[list[TopicSeries], dict[str, str]]:
    """Generate ``(topic_id, spec)`` pairs into series plus a label map."""
    series: list[TopicSeries] = []
    labels: dict[str, str] = {}
    for topic_id, spec in specs:
        series.append(generate(spec, topic_id, start_date))
        labels[topic_id] = spec.kind.value
    return series, labels


_SPEC_FIELDS = {
    "length", "total_mass", "center", "width", "n_bursts", "separation",
    "period", "phase", "amplitude", "baseline_share", "noise", "seed",
}


def load_fixture_file(path) -> tuple[list[tuple[str, ShapeSpec]], datetime.date]:
    """Read a JSON shape-spec file.

    Schema: ``{"start_date": "YYYY-MM-DD", "topics": [{"kind": ...,
    "count": N, ...spec fields...}]}``.  Each entry expands to ``count``
    topics (default 1) whose seeds run consecutively from the entry's
    ``seed``, so a fixture file always produces the same corpus.
    """
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "topics" not in data:
        raise InvalidParameterError(f"{path}: fixture file needs a 'topics' list")
    start_date = datetime.date.fromisoformat(data.get("start_date", DEFAULT_START_DATE.isoformat()))
    expanded: list[tuple[str, ShapeSpec]] = []
    index = 0
    for entry in data["topics"]:
        if not isinstance(entry, dict) or "kind" not in entry:
            raise InvalidParameterError(f"{path}: every topic entry needs a 'kind'")
        unknown = set(entry) - _SPEC_FIELDS - {"kind", "count"}
        if unknown:
            raise InvalidParameterError(f"{path}: unknown spec fields {sorted(unknown)}")
        count = int(entry.get("count", 1))
        if count < 1:
            raise InvalidParameterError(f"{path}: count must be >= 1, got {count}")
        base = ShapeSpec(kind=entry["kind"], **{k: entry[k] for k in entry if k in _SPEC_FIELDS})
        for offset in range(count):
            spec = replace(base, seed=base.seed + offset)
            expanded.append((f"{spec.kind.value}_{index:04d}", spec))
            index += 1
    return expanded, start_date


def write_counts_csv(series, path) -> None:
    """Emit series as the pipeline's long-form input CSV (all days, zeros too)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("topic_id,date,count\n")
        for s in series:
            for offset, count in enumerate(s.counts):
                day = s.start_date + datetime.timedelta(days=offset)
                fh.write(f"{s.topic_id},{day.isoformat()},{int(count)}\n")
