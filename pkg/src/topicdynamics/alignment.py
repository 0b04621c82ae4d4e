"""Temporal alignment of two activity curves by an integer-day shift.

Shifting never wraps and never drops mass: both vectors are zero-padded to
a common length so that one is displaced ``shift`` days relative to the
other.  Positive ``shift`` moves ``b`` toward later days.

Three strategies produce a shift:

* peak alignment      - match the days of maximum activity,
* mean alignment      - match the centers of mass, rounded to whole days,
* exhaustive search   - try every shift and keep the one minimizing the
  chosen metric (ties: smaller magnitude first, then the negative shift).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .distances import Metric, _clamp_unit, kernel
from .errors import InvalidParameterError
from .validation import check_pair

__all__ = [
    "Alignment",
    "AlignedPair",
    "apply_shift",
    "align_max",
    "align_mean",
    "align_exhaustive",
    "aligned_distance",
    "shift_distance_profile",
]


class Alignment(str, enum.Enum):
    """Alignment strategy identifiers, as accepted on the command line."""

    NONE = "none"
    MAX = "max"
    MEAN = "mean"
    EXHAUSTIVE = "exhaustive"

    @classmethod
    def coerce(cls, value) -> "Alignment":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InvalidParameterError(
                f"unknown alignment {value!r}; expected one of "
                f"{[a.value for a in cls]}"
            ) from None


@dataclass(frozen=True)
class AlignedPair:
    """Two curves zero-padded onto a common grid after shifting ``b``."""

    a: np.ndarray = field(repr=False)
    b: np.ndarray = field(repr=False)
    shift: int
    padded_length: int

    def __post_init__(self):
        for name in ("a", "b"):
            arr = np.array(getattr(self, name), dtype=np.float64, copy=True)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        if self.a.shape[0] != self.padded_length or self.b.shape[0] != self.padded_length:
            raise InvalidParameterError("padded vectors must match padded_length")


def apply_shift(a, b, shift: int) -> AlignedPair:
    """Zero-pad ``a`` and ``b`` so that ``b`` is moved ``shift`` days later."""
    va, vb = check_pair(a, b)
    return _apply_shift_prechecked(va, vb, int(shift))


def _apply_shift_prechecked(va: np.ndarray, vb: np.ndarray, shift: int) -> AlignedPair:
    m = va.shape[0]
    if abs(shift) > m - 1:
        raise InvalidParameterError(
            f"|shift| must be at most {m - 1} for vectors of length {m}, got {shift}"
        )
    pad = np.zeros(abs(shift), dtype=np.float64)
    if shift >= 0:
        pa = np.concatenate([va, pad])
        pb = np.concatenate([pad, vb])
    else:
        pa = np.concatenate([pad, va])
        pb = np.concatenate([vb, pad])
    return AlignedPair(pa, pb, shift, m + abs(shift))


def align_max(a, b) -> AlignedPair:
    """Shift ``b`` so both curves peak on the same day.

    The first day of maximum activity wins when a curve has several.
    """
    va, vb = check_pair(a, b)
    shift = int(np.argmax(va)) - int(np.argmax(vb))
    return _apply_shift_prechecked(va, vb, shift)


def _center_of_mass(values: np.ndarray) -> float:
    return float(np.arange(values.shape[0], dtype=np.float64) @ values)


def _round_half_away(x: float) -> int:
    if x >= 0.0:
        return int(math.floor(x + 0.5))
    return int(math.ceil(x - 0.5))


def align_mean(a, b) -> AlignedPair:
    """Shift ``b`` so the centers of mass coincide (to the nearest day).

    Day indices are 0-based and halves round away from zero, so curves
    mirrored around the grid midpoint align symmetrically.
    """
    va, vb = check_pair(a, b)
    shift = _round_half_away(_center_of_mass(va) - _center_of_mass(vb))
    return _apply_shift_prechecked(va, vb, shift)


# --- exhaustive search -----------------------------------------------------
#
# For a shift s the padded vectors overlap on min(M, M - |s|) ... M days and
# each metric splits into an overlap term plus the mass each curve carries
# where the other is zero.  That avoids building 2M - 1 padded copies; for
# hda / nds the overlap term is a sliding inner product, which numpy's
# correlate computes in one call.


def _sad_profile(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    m = a.shape[0]
    out = np.empty(2 * m - 1, dtype=np.float64)
    for k, s in enumerate(range(-(m - 1), m)):
        if s >= 0:
            overlap = np.abs(a[s:] - b[: m - s]).sum()
            rest = a[:s].sum() + b[m - s :].sum()
        else:
            overlap = np.abs(a[: m + s] - b[-s:]).sum()
            rest = a[m + s :].sum() + b[: -s].sum()
        out[k] = 0.5 * (overlap + rest)
    return out


def _ks_profile(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    m = a.shape[0]
    ca = np.cumsum(a)
    cb = np.cumsum(b)
    ta = ca[-1]
    tb = cb[-1]
    out = np.empty(2 * m - 1, dtype=np.float64)
    for k, s in enumerate(range(-(m - 1), m)):
        if s >= 0:
            gap = np.abs(ca[s:] - cb[: m - s]).max()
            if s:
                # Left of the overlap only a has mass; right of it a's
                # cumulative sits at its total while b finishes.
                gap = max(gap, float(ca[s - 1]), float(np.abs(ta - cb[m - s :]).max()))
        else:
            gap = np.abs(cb[-s:] - ca[: m + s]).max()
            gap = max(gap, float(cb[-s - 1]), float(np.abs(tb - ca[m + s :]).max()))
        out[k] = gap
    return out


def _inner_profile(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # index k corresponds to shift s = k - (M - 1); entry = sum_j x[j+s]*y[j]
    return np.correlate(x, y, mode="full")


def _hda_profile(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    ra = np.sqrt(a)
    rb = np.sqrt(b)
    val = a.sum() + b.sum() - 2.0 * _inner_profile(ra, rb)
    return np.sqrt(np.maximum(val, 0.0)) / math.sqrt(2.0)


def _nds_profile(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    qa = a * a
    qb = b * b
    val = (qa * qa).sum() + (qb * qb).sum() - 2.0 * _inner_profile(qa, qb)
    return np.sqrt(np.maximum(val, 0.0)) / math.sqrt(2.0)


_PROFILES = {
    Metric.SAD: _sad_profile,
    Metric.KS: _ks_profile,
    Metric.HDA: _hda_profile,
    Metric.NDS: _nds_profile,
}


def shift_distance_profile(a, b, metric=Metric.NDS) -> np.ndarray:
    """Distance at every shift ``s`` in ``[-(M-1), M-1]``.

    Entry ``k`` holds the metric between the pair aligned at shift
    ``k - (M - 1)``.  Mostly useful for inspection and plotting.
    """
    va, vb = check_pair(a, b)
    return _PROFILES[Metric.coerce(metric)](va, vb)


def _best_shift(profile: np.ndarray, m: int) -> int:
    shifts = np.arange(-(m - 1), m)
    candidates = shifts[profile == profile.min()]
    return int(min(candidates.tolist(), key=lambda s: (abs(s), s)))


def align_exhaustive(a, b, metric=Metric.NDS) -> tuple[AlignedPair, float]:
    """Search every integer shift and return the best alignment.

    Returns the aligned pair together with its distance, recomputed on the
    padded vectors so it matches the public metric exactly.  Ties prefer the
    smaller \\|shift\\| and then the negative (earlier) shift.
    """
    va, vb = check_pair(a, b)
    met = Metric.coerce(metric)
    pair = _exhaustive_pair_prechecked(va, vb, met)
    return pair, kernel(met)(pair.a, pair.b)


def _exhaustive_pair_prechecked(va, vb, met: Metric) -> AlignedPair:
    profile = _PROFILES[met](va, vb)
    shift = _best_shift(profile, va.shape[0])
    return _apply_shift_prechecked(va, vb, shift)


def aligned_distance(a, b, metric=Metric.NDS, alignment=Alignment.EXHAUSTIVE) -> float:
    """Metric between two curves under the chosen alignment strategy."""
    va, vb = check_pair(a, b)
    met = Metric.coerce(metric)
    strategy = Alignment.coerce(alignment)
    return _aligned_distance_prechecked(va, vb, met, strategy)


def _aligned_distance_prechecked(va, vb, met: Metric, strategy: Alignment) -> float:
    if strategy is Alignment.NONE:
        pa, pb = va, vb
    elif strategy is Alignment.MAX:
        pair = _apply_shift_prechecked(va, vb, int(np.argmax(va)) - int(np.argmax(vb)))
        pa, pb = pair.a, pair.b
    elif strategy is Alignment.MEAN:
        shift = _round_half_away(_center_of_mass(va) - _center_of_mass(vb))
        pair = _apply_shift_prechecked(va, vb, shift)
        pa, pb = pair.a, pair.b
    else:
        pair = _exhaustive_pair_prechecked(va, vb, met)
        pa, pb = pair.a, pair.b
    return _clamp_unit(kernel(met)(pa, pb))
