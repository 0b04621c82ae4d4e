"""Distances between normalized activity curves.

All four metrics take two distribution vectors on the same day grid and
return a dissimilarity in [0, 1]:

* ``sad``  - half the sum of absolute per-day differences,
* ``ks``   - largest gap between the two cumulative curves,
* ``hda``  - Hellinger distance (L2 on square roots, scaled by 1/sqrt(2)),
* ``nds``  - L2 norm of the difference of squared masses, scaled by 1/sqrt(2).

``nds`` emphasizes the days that concentrate the most attention, which makes
it the default for separating bursty from flat topics.
"""

from __future__ import annotations

import enum
import math
from typing import Callable

import numpy as np

from .errors import InvalidInputError, InvalidParameterError
from .validation import check_normalized, check_pair

#: Largest excursion outside [0, 1] we attribute to floating-point rounding.
CLAMP_TOLERANCE = 1e-9


class Metric(str, enum.Enum):
    """Distance metric identifiers, as accepted on the command line."""

    SAD = "sad"
    KS = "ks"
    HDA = "hda"
    NDS = "nds"

    @classmethod
    def coerce(cls, value) -> "Metric":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InvalidParameterError(
                f"unknown metric {value!r}; expected one of "
                f"{[m.value for m in cls]}"
            ) from None


def _clamp_unit(x: float) -> float:
    """Snap tiny floating-point excursions back into [0, 1].

    Anything further than ``CLAMP_TOLERANCE`` outside the interval is not
    rounding noise and signals invalid (unnormalized) input.
    """
    if x < 0.0:
        if x < -CLAMP_TOLERANCE:
            raise InvalidInputError(f"distance {x!r} below 0 beyond tolerance")
        return 0.0
    if x > 1.0:
        if x > 1.0 + CLAMP_TOLERANCE:
            raise InvalidInputError(f"distance {x!r} above 1 beyond tolerance")
        return 1.0
    return x


def cumulate(values) -> np.ndarray:
    """Prefix sums of a normalized vector; nondecreasing, ends at ~1."""
    arr = check_normalized(values)
    return np.cumsum(arr)


# Unvalidated kernels. The alignment search calls these in a hot loop on
# vectors it has already validated / constructed itself.

def _sad_kernel(a: np.ndarray, b: np.ndarray) -> float:
    return 0.5 * float(np.abs(a - b).sum())


def _ks_kernel(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.abs(np.cumsum(a) - np.cumsum(b)).max())


def _hda_kernel(a: np.ndarray, b: np.ndarray) -> float:
    return math.sqrt(float(((np.sqrt(a) - np.sqrt(b)) ** 2).sum())) / math.sqrt(2.0)


def _nds_kernel(a: np.ndarray, b: np.ndarray) -> float:
    return math.sqrt(float(((a * a - b * b) ** 2).sum())) / math.sqrt(2.0)


_KERNELS: dict[Metric, Callable[[np.ndarray, np.ndarray], float]] = {
    Metric.SAD: _sad_kernel,
    Metric.KS: _ks_kernel,
    Metric.HDA: _hda_kernel,
    Metric.NDS: _nds_kernel,
}


def kernel(metric) -> Callable[[np.ndarray, np.ndarray], float]:
    """Return the raw (unvalidated, unclamped) kernel for ``metric``."""
    return _KERNELS[Metric.coerce(metric)]


def sad_distance(a, b) -> float:
    """Half the L1 distance between two normalized curves."""
    va, vb = check_pair(a, b)
    return _clamp_unit(_sad_kernel(va, vb))


def ks_distance(a, b) -> float:
    """Largest absolute gap between the cumulative curves."""
    va, vb = check_pair(a, b)
    return _clamp_unit(_ks_kernel(va, vb))


def hellinger_distance(a, b) -> float:
    """Hellinger distance between two normalized curves."""
    va, vb = check_pair(a, b)
    return _clamp_unit(_hda_kernel(va, vb))


def nds_distance(a, b) -> float:
    """L2 norm of the difference of squared per-day masses, scaled to [0, 1]."""
    va, vb = check_pair(a, b)
    return _clamp_unit(_nds_kernel(va, vb))


_BY_METRIC = {
    Metric.SAD: sad_distance,
    Metric.KS: ks_distance,
    Metric.HDA: hellinger_distance,
    Metric.NDS: nds_distance,
}


def distance(a, b, metric=Metric.NDS) -> float:
    """Compute the chosen metric between two normalized curves."""
    return _BY_METRIC[Metric.coerce(metric)](a, b)
