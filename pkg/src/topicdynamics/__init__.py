"""Characterize discussion topics by the shape of their daily activity.

The library turns per-topic daily counts into normalized distribution
vectors, measures pairwise distances (optionally after shifting curves
onto each other), clusters the distance matrix with a density-based
hierarchy, and scores each topic's ephemerality.
"""

__version__ = "0.1.0"

from .alignment import (
    AlignedPair,
    Alignment,
    align_exhaustive,
    align_max,
    align_mean,
    aligned_distance,
    apply_shift,
    shift_distance_profile,
)
from .clustering import (
    NOISE,
    ClusterResult,
    Dendrogram,
    Edge,
    build_hierarchy,
    cluster_topics,
    core_distances,
    extract_clusters,
    medoid_distances,
    minimum_spanning_tree,
    mutual_reachability,
)
from .distances import (
    Metric,
    cumulate,
    distance,
    hellinger_distance,
    ks_distance,
    nds_distance,
    sad_distance,
)
from .ephemerality import (
    Category,
    EphemeralityParams,
    EphemeralityReport,
    Orientation,
    categorize,
    ephemerality_filtered,
    ephemerality_original,
    ephemerality_sorted,
    score_topics,
)
from .errors import (
    DegenerateTopicError,
    DuplicateKeyError,
    IncompatibleVectorsError,
    IngestError,
    InsufficientDataError,
    InvalidInputError,
    InvalidParameterError,
    MalformedTreeError,
    TopicDynamicsError,
)
from .estimators import (
    ActivityCurveNormalizer,
    EphemeralityScorer,
    HierarchicalDensityClustering,
    PairwiseCurveDistance,
)
from .matrix import DistanceMatrix, compute_distance_matrix, pairwise_distances
from .pipeline import IngestResult, PipelineConfig, RunResult, ingest, run
from .series import (
    TopicSeries,
    TopicVector,
    normalize,
    normalize_values,
    preprocess,
    preprocess_counts,
    preprocess_matrix,
    smooth,
    smooth_values,
)
from .synthetic import (
    Shape,
    ShapeSpec,
    generate,
    generate_set,
    load_fixture_file,
    write_counts_csv,
)

__all__ = [
    "AlignedPair",
    "Alignment",
    "ActivityCurveNormalizer",
    "Category",
    "ClusterResult",
    "Dendrogram",
    "DegenerateTopicError",
    "DistanceMatrix",
    "DuplicateKeyError",
    "Edge",
    "EphemeralityParams",
    "EphemeralityReport",
    "EphemeralityScorer",
    "HierarchicalDensityClustering",
    "IncompatibleVectorsError",
    "IngestError",
    "IngestResult",
    "InsufficientDataError",
    "InvalidInputError",
    "InvalidParameterError",
    "MalformedTreeError",
    "Metric",
    "NOISE",
    "Orientation",
    "PairwiseCurveDistance",
    "PipelineConfig",
    "RunResult",
    "Shape",
    "ShapeSpec",
    "TopicDynamicsError",
    "TopicSeries",
    "TopicVector",
    "align_exhaustive",
    "align_max",
    "align_mean",
    "aligned_distance",
    "apply_shift",
    "build_hierarchy",
    "categorize",
    "cluster_topics",
    "compute_distance_matrix",
    "core_distances",
    "cumulate",
    "distance",
    "ephemerality_filtered",
    "ephemerality_original",
    "ephemerality_sorted",
    "extract_clusters",
    "generate",
    "generate_set",
    "hellinger_distance",
    "ingest",
    "ks_distance",
    "load_fixture_file",
    "medoid_distances",
    "minimum_spanning_tree",
    "mutual_reachability",
    "nds_distance",
    "normalize",
    "normalize_values",
    "pairwise_distances",
    "preprocess",
    "preprocess_counts",
    "preprocess_matrix",
    "run",
    "sad_distance",
    "score_topics",
    "shift_distance_profile",
    "smooth",
    "smooth_values",
    "write_counts_csv",
]
