"""Independent reference implementations used to cross-check the package.

Everything here is written the dumb way on purpose: explicit loops,
explicit padding, no shared code with the library.  The metric oracles
work on plain Python lists; the alignment oracle really materializes every
zero-padded pair; the linkage oracle merges clusters quadratically.
"""

from __future__ import annotations

import math

import numpy as np


# --- metrics ---------------------------------------------------------------


def oracle_sad(a, b) -> float:
    total = 0.0
    for x, y in zip(a, b):
        total += abs(x - y)
    return 0.5 * total


def oracle_ks(a, b) -> float:
    ca = 0.0
    cb = 0.0
    worst = 0.0
    for x, y in zip(a, b):
        ca += x
        cb += y
        gap = abs(ca - cb)
        if gap > worst:
            worst = gap
    return worst


def oracle_hda(a, b) -> float:
    total = 0.0
    for x, y in zip(a, b):
        diff = math.sqrt(x) - math.sqrt(y)
        total += diff * diff
    return math.sqrt(total) / math.sqrt(2.0)


def oracle_nds(a, b) -> float:
    total = 0.0
    for x, y in zip(a, b):
        diff = x * x - y * y
        total += diff * diff
    return math.sqrt(total) / math.sqrt(2.0)


ORACLE_METRICS = {
    "sad": oracle_sad,
    "ks": oracle_ks,
    "hda": oracle_hda,
    "nds": oracle_nds,
}


# --- alignment -------------------------------------------------------------


def oracle_pad(a, b, shift: int) -> tuple[np.ndarray, np.ndarray]:
    """Zero-pad both vectors so b is displaced ``shift`` days later."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    pad = np.zeros(abs(shift))
    if shift >= 0:
        return np.concatenate([a, pad]), np.concatenate([pad, b])
    return np.concatenate([pad, a]), np.concatenate([b, pad])


def oracle_metric_arrays(name: str, a: np.ndarray, b: np.ndarray) -> float:
    """Direct numpy transcription of the metric formulas (for volume)."""
    if name == "sad":
        return 0.5 * float(np.sum(np.abs(a - b)))
    if name == "ks":
        return float(np.max(np.abs(np.cumsum(a) - np.cumsum(b))))
    if name == "hda":
        return math.sqrt(float(np.sum((np.sqrt(a) - np.sqrt(b)) ** 2)) / 2.0)
    if name == "nds":
        return math.sqrt(float(np.sum((a * a - b * b) ** 2)) / 2.0)
    raise KeyError(name)


def oracle_tie_break_order(m: int):
    """Shift candidates ordered 0, -1, +1, -2, +2, ..."""
    yield 0
    for k in range(1, m):
        yield -k
        yield k


def oracle_best_shift(a, b, name: str) -> tuple[int, float]:
    """Brute-force exhaustive alignment: try every shift, keep the first
    strict improvement in tie-break order."""
    m = len(a)
    best_shift = 0
    best = math.inf
    for s in oracle_tie_break_order(m):
        pa, pb = oracle_pad(a, b, s)
        d = oracle_metric_arrays(name, pa, pb)
        if d < best:
            best = d
            best_shift = s
    return best_shift, best


# --- single linkage --------------------------------------------------------


def oracle_single_linkage(D) -> list[tuple[float, frozenset, frozenset]]:
    """Naive agglomerative single linkage over a distance matrix.

    At each step merge the two clusters whose closest cross pair is
    smallest, breaking ties by the smallest (distance, i, j) with i < j.
    Returns the merge sequence as (distance, members_a, members_b).
    """
    D = np.asarray(D, dtype=float)
    n = D.shape[0]
    clusters: list[set[int]] = [{i} for i in range(n)]
    merges: list[tuple[float, frozenset, frozenset]] = []
    while len(clusters) > 1:
        best = None  # (distance, i, j, idx_a, idx_b)
        for x in range(len(clusters)):
            for y in range(x + 1, len(clusters)):
                for i in sorted(clusters[x]):
                    for j in sorted(clusters[y]):
                        lo, hi = (i, j) if i < j else (j, i)
                        key = (float(D[lo, hi]), lo, hi)
                        if best is None or key < best[0]:
                            best = (key, x, y)
        (dist, _, _), x, y = best
        merges.append((dist, frozenset(clusters[x]), frozenset(clusters[y])))
        clusters[x] = clusters[x] | clusters[y]
        del clusters[y]
    return merges


# --- smoothing and ephemerality -------------------------------------------


def oracle_smooth(values, window: int) -> list[float]:
    n = len(values)
    half = (window - 1) // 2
    out = []
    for m in range(n):
        lo = max(0, m - half)
        hi = min(n, m + half + 1)
        out.append(sum(values[lo:hi]) / (hi - lo))
    return out


_EPS = 1e-9


def _first_prefix_at_least(values, threshold: float) -> int:
    acc = 0.0
    for idx, v in enumerate(values):
        acc += v
        if acc >= threshold - _EPS:
            return idx
    raise AssertionError("threshold never reached")


def oracle_e_orig(values, mass=0.8) -> float:
    active = [i for i, v in enumerate(values) if v > 0.0]
    start, end = active[0], active[-1]
    if start == end:
        return 1.0
    reach = _first_prefix_at_least(values, mass)
    return 1.0 - (reach - start) / (end - start)


def oracle_e_filtered(values, trim=0.1) -> float:
    active = [i for i, v in enumerate(values) if v > 0.0]
    start, end = active[0], active[-1]
    if start == end:
        return 1.0
    low = _first_prefix_at_least(values, trim)
    high = _first_prefix_at_least(values, 1.0 - trim)
    return 1.0 - (high - low) / (end - start)


def oracle_e_sorted(values, mass=0.8) -> float:
    active = sum(1 for v in values if v > 0.0)
    if active == 1:
        return 1.0
    ordered = sorted(values, reverse=True)
    k = _first_prefix_at_least(ordered, mass) + 1
    return min(1.0, (k / active) / mass)
