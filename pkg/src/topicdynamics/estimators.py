"""Scikit-learn compatible wrappers around the functional core.

These let the stages compose with the wider ecosystem::

    from sklearn.pipeline import make_pipeline
    pipe = make_pipeline(
        ActivityCurveNormalizer(window=3),
        PairwiseCurveDistance(metric="nds", alignment="exhaustive"),
        HierarchicalDensityClustering(min_cluster_size=3),
    )
    labels = pipe.fit_predict(daily_counts)   # (topics x days) integer matrix

Every estimator follows the usual contract: parameters are set verbatim in
``__init__``, ``fit`` returns ``self``, fitted state ends in trailing
underscore attributes, and ``get_params`` / ``set_params`` come from
``BaseEstimator``.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin

from .alignment import Alignment
from .clustering import cluster_topics
from .distances import Metric
from .ephemerality import (
    DEFAULT_PARAMS,
    EphemeralityParams,
    Orientation,
    _oriented,
    categorize,
    ephemerality_filtered,
    ephemerality_original,
    ephemerality_sorted,
)
from .matrix import pairwise_distances
from .series import DEFAULT_SMOOTH_WINDOW, preprocess_matrix
from .validation import as_count_matrix, check_distance_matrix, check_tdv_matrix


class ActivityCurveNormalizer(TransformerMixin, BaseEstimator):
    """Smooth each row of daily counts and scale it to a unit-sum curve."""

    def __init__(self, window: int = DEFAULT_SMOOTH_WINDOW):
        self.window = window

    def fit(self, X, y=None):
        as_count_matrix(X)
        return self

    def transform(self, X) -> np.ndarray:
        return preprocess_matrix(X, self.window)


class PairwiseCurveDistance(TransformerMixin, BaseEstimator):
    """Turn normalized curves into a square pairwise distance matrix."""

    def __init__(
        self,
        metric: str | Metric = Metric.NDS,
        alignment: str | Alignment = Alignment.EXHAUSTIVE,
        threads: int = 1,
    ):
        self.metric = metric
        self.alignment = alignment
        self.threads = threads

    def fit(self, X, y=None):
        check_tdv_matrix(X)
        return self

    def transform(self, X) -> np.ndarray:
        return pairwise_distances(X, self.metric, self.alignment, self.threads)


class HierarchicalDensityClustering(ClusterMixin, BaseEstimator):
    """Density clustering over a precomputed distance matrix.

    ``fit`` expects the square matrix produced by
    :class:`PairwiseCurveDistance` (or any symmetric distances) and leaves
    ``labels_`` (noise = -1), per-cluster ``stabilities_``, per-point
    ``medoid_distance_`` and the merge tree in ``dendrogram_``.
    """

    def __init__(
        self,
        min_cluster_size: int = 3,
        core_k: int | None = None,
        allow_single_cluster: bool = False,
    ):
        self.min_cluster_size = min_cluster_size
        self.core_k = core_k
        self.allow_single_cluster = allow_single_cluster

    def fit(self, X, y=None):
        result = cluster_topics(
            check_distance_matrix(X),
            min_cluster_size=self.min_cluster_size,
            core_k=self.core_k,
            allow_single_cluster=self.allow_single_cluster,
        )
        self.labels_ = result.labels
        self.stabilities_ = result.stabilities
        self.medoid_distance_ = result.medoid_distance
        self.dendrogram_ = result.dendrogram
        self.n_clusters_ = result.n_clusters
        return self


class EphemeralityScorer(TransformerMixin, BaseEstimator):
    """Score normalized curves on the three ephemerality axes.

    ``transform`` returns one row per topic with columns ``(original,
    filtered, sorted)``.  ``fit`` fixes the quadrant thresholds (given
    ones, or the medians of the fitted data) and ``predict`` returns the
    grid cell names.
    """

    def __init__(
        self,
        mass_threshold: float = DEFAULT_PARAMS.mass_threshold,
        trim_fraction: float = DEFAULT_PARAMS.trim_fraction,
        orientation: str | Orientation = Orientation.FLIPPED,
        theta_filtered: float | None = None,
        theta_sorted: float | None = None,
    ):
        self.mass_threshold = mass_threshold
        self.trim_fraction = trim_fraction
        self.orientation = orientation
        self.theta_filtered = theta_filtered
        self.theta_sorted = theta_sorted

    def _params(self) -> EphemeralityParams:
        return EphemeralityParams(self.mass_threshold, self.trim_fraction)

    def fit(self, X, y=None):
        scores = self.transform(X)
        orientation = Orientation.coerce(self.orientation)
        self.theta_filtered_ = (
            float(np.median(scores[:, 1]))
            if self.theta_filtered is None
            else float(self.theta_filtered)
        )
        oriented = [_oriented(v, orientation) for v in scores[:, 2]]
        self.theta_sorted_ = (
            float(np.median(oriented)) if self.theta_sorted is None else float(self.theta_sorted)
        )
        return self

    def transform(self, X) -> np.ndarray:
        rows = check_tdv_matrix(X)
        params = self._params()
        return np.array(
            [
                (
                    ephemerality_original(row, params),
                    ephemerality_filtered(row, params),
                    ephemerality_sorted(row, params),
                )
                for row in rows
            ],
            dtype=np.float64,
        )

    def predict(self, X) -> np.ndarray:
        scores = self.transform(X)
        cells = [
            categorize(
                e_filt, e_sort, self.theta_filtered_, self.theta_sorted_, self.orientation
            ).value
            for _, e_filt, e_sort in scores
        ]
        return np.array(cells, dtype=object)
