"""Array validation helpers shared by the functional API and the estimators.

All helpers return ``float64`` numpy arrays so downstream numerics behave
identically no matter what array-like the caller handed in.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    IncompatibleVectorsError,
    InvalidInputError,
    InvalidParameterError,
)

# Absolute tolerance used everywhere a floating-point sum is compared
# against an exact target (normalization checks, threshold crossings).
SUM_TOLERANCE = 1e-9


def as_curve(values, name: str = "values") -> np.ndarray:
    """Coerce to a 1-D float64 array of finite, nonnegative entries."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise InvalidInputError(f"{name} must be 1-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise InvalidInputError(f"{name} must have at least one entry")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} contains non-finite entries")
    if np.any(arr < 0):
        raise InvalidInputError(f"{name} contains negative entries")
    return arr


def check_normalized(values, name: str = "values") -> np.ndarray:
    """Validate a 1-D nonnegative vector that must sum to 1 within tolerance."""
    arr = as_curve(values, name)
    total = float(arr.sum())
    if abs(total - 1.0) > SUM_TOLERANCE:
        raise InvalidInputError(
            f"{name} must sum to 1 within {SUM_TOLERANCE:g}; got sum {total!r}"
        )
    return arr


def check_pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    """Validate two normalized vectors defined on the same day grid."""
    va = check_normalized(a, "a")
    vb = check_normalized(b, "b")
    if va.shape[0] != vb.shape[0]:
        raise IncompatibleVectorsError(
            f"vectors must have equal length; got {va.shape[0]} and {vb.shape[0]}"
        )
    return va, vb


def as_count_matrix(X) -> np.ndarray:
    """Coerce to a 2-D float64 matrix of nonnegative activity counts."""
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim != 2:
        raise InvalidInputError(f"expected a 2-D matrix, got shape {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise InvalidInputError(f"matrix must be non-empty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("matrix contains non-finite entries")
    if np.any(arr < 0):
        raise InvalidInputError("matrix contains negative entries")
    return arr


def check_tdv_matrix(X) -> np.ndarray:
    """Validate a matrix whose rows are normalized distribution vectors."""
    arr = as_count_matrix(X)
    sums = arr.sum(axis=1)
    bad = np.where(np.abs(sums - 1.0) > SUM_TOLERANCE)[0]
    if bad.size:
        raise InvalidInputError(
            f"rows {bad[:5].tolist()} do not sum to 1 within {SUM_TOLERANCE:g}"
        )
    return arr


def check_distance_matrix(X) -> np.ndarray:
    """Validate a square symmetric distance matrix with a zero diagonal."""
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvalidInputError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("distance matrix contains non-finite entries")
    if np.any(arr < 0):
        raise InvalidInputError("distance matrix contains negative entries")
    if np.any(np.diag(arr) != 0.0):
        raise InvalidInputError("distance matrix must have a zero diagonal")
    if not np.array_equal(arr, arr.T):
        raise InvalidInputError("distance matrix must be symmetric")
    return arr


def check_window(window: int) -> int:
    """Validate a smoothing window: odd integer >= 1."""
    if not isinstance(window, (int, np.integer)) or isinstance(window, bool):
        raise InvalidParameterError(f"window must be an integer, got {window!r}")
    w = int(window)
    if w < 1 or w % 2 == 0:
        raise InvalidParameterError(f"window must be an odd integer >= 1, got {w}")
    return w


def check_fraction(value: float, name: str, *, open_low=False, open_high=False) -> float:
    """Validate a scalar that must lie in [0, 1] (optionally open-ended)."""
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise InvalidParameterError(f"{name} must be a real number, got {value!r}")
    if not np.isfinite(v):
        raise InvalidParameterError(f"{name} must be finite, got {v!r}")
    low_ok = v > 0.0 if open_low else v >= 0.0
    high_ok = v < 1.0 if open_high else v <= 1.0
    if not (low_ok and high_ok):
        raise InvalidParameterError(f"{name}={v!r} outside its legal range")
    return v
