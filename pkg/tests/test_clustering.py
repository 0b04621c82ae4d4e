import numpy as np
import pytest

from topicdynamics import (
    ClusterResult,
    Dendrogram,
    Edge,
    InsufficientDataError,
    InvalidParameterError,
    MalformedTreeError,
    NOISE,
    build_hierarchy,
    cluster_topics,
    core_distances,
    extract_clusters,
    medoid_distances,
    minimum_spanning_tree,
    mutual_reachability,
)
from oracles import oracle_single_linkage


def symmetric(rows) -> np.ndarray:
    arr = np.array(rows, dtype=np.float64)
    return (arr + arr.T) / 2.0


def random_matrix(rng, n, low=0.05, high=1.0) -> np.ndarray:
    vals = rng.uniform(low, high, size=(n, n))
    D = np.triu(vals, k=1)
    D = D + D.T
    return D


def two_blob_matrix(rng, size_a=5, size_b=5):
    """Two tight groups far apart: intra <= 0.1, inter >= 0.9."""
    n = size_a + size_b
    D = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            same = (i < size_a) == (j < size_a)
            D[i, j] = D[j, i] = (
                rng.uniform(0.01, 0.1) if same else rng.uniform(0.9, 1.0)
            )
    return D


def test_core_distances_counts_the_point_itself():
    D = symmetric([[0, 1, 2], [1, 0, 3], [2, 3, 0]])
    assert core_distances(D, 1).tolist() == [0.0, 0.0, 0.0]
    assert core_distances(D, 2).tolist() == [1.0, 1.0, 2.0]
    assert core_distances(D, 3).tolist() == [2.0, 3.0, 3.0]


def test_core_distances_rejects_bad_k():
    D = np.zeros((3, 3))
    with pytest.raises(InvalidParameterError):
        core_distances(D, 0)
    with pytest.raises(InvalidParameterError):
        core_distances(D, 4)


def test_mutual_reachability_takes_the_worst_of_three():
    D = symmetric([[0, 1, 2], [1, 0, 3], [2, 3, 0]])
    W = mutual_reachability(D, 2)
    assert W[0, 1] == 1.0
    assert W[0, 2] == 2.0
    assert W[1, 2] == 3.0
    assert np.array_equal(np.diag(W), np.zeros(3))
    assert np.array_equal(W, W.T)


def test_mutual_reachability_with_k_one_is_the_raw_matrix(rng):
    D = random_matrix(rng, 8)
    assert np.array_equal(mutual_reachability(D, 1), D)


def test_mst_example():
    D = symmetric([[0, 1, 2], [1, 0, 3], [2, 3, 0]])
    edges = minimum_spanning_tree(D, core_k=1)
    assert edges == [Edge(1.0, 0, 1), Edge(2.0, 0, 2)]


def test_mst_breaks_weight_ties_lexicographically():
    # A star of equal weights: every pair is 0.5, the tree must pick the
    # lexicographically first pairs (0,1), (0,2), (0,3).
    D = np.full((4, 4), 0.5)
    np.fill_diagonal(D, 0.0)
    edges = minimum_spanning_tree(D, core_k=1)
    assert edges == [Edge(0.5, 0, 1), Edge(0.5, 0, 2), Edge(0.5, 0, 3)]


def test_mst_needs_two_points():
    with pytest.raises(InsufficientDataError):
        minimum_spanning_tree(np.zeros((1, 1)))


def test_build_hierarchy_chain_example():
    D = symmetric([[0, 1, 6], [1, 0, 5], [6, 5, 0]])
    dend = build_hierarchy(minimum_spanning_tree(D, core_k=1), 3)
    assert dend.merges.tolist() == [[0, 1, 1, 2], [2, 3, 5, 3]]
    assert dend.root == 4
    assert dend.children(4) == (2, 3)
    assert dend.size(4) == 3
    assert dend.leaf_members(3) == [0, 1]


def test_build_hierarchy_rejects_bad_edge_sets():
    with pytest.raises(MalformedTreeError):
        build_hierarchy([])
    with pytest.raises(MalformedTreeError):
        build_hierarchy([Edge(1.0, 0, 1)], n_points=3)  # disconnected
    with pytest.raises(MalformedTreeError):
        build_hierarchy([Edge(1.0, 0, 1), Edge(2.0, 0, 1)], n_points=3)  # cycle
    with pytest.raises(MalformedTreeError):
        build_hierarchy([Edge(1.0, 0, 0)], n_points=2)  # self loop


def test_dendrogram_validates_merge_table_shape():
    with pytest.raises(MalformedTreeError):
        Dendrogram(3, [[0, 1, 1, 2]])


def test_hierarchy_matches_naive_single_linkage(rng):
    for _ in range(40):
        n = int(rng.integers(2, 12))
        D = random_matrix(rng, n)
        dend = build_hierarchy(minimum_spanning_tree(D, core_k=1), n)
        expected = oracle_single_linkage(D)
        assert dend.merges.shape[0] == len(expected)
        for row, (dist, ma, mb) in zip(range(n - 1), expected):
            left, right = dend.children(n + row)
            got = {
                frozenset(dend.leaf_members(left)),
                frozenset(dend.leaf_members(right)),
            }
            assert dend.merges[row, 2] == dist
            assert got == {ma, mb}


def test_two_blobs_give_two_clusters_and_no_noise(rng):
    D = two_blob_matrix(rng)
    result = cluster_topics(D, min_cluster_size=3)
    assert result.n_clusters == 2
    assert not np.any(result.labels == NOISE)
    assert result.members(0).tolist() == [0, 1, 2, 3, 4]
    assert result.members(1).tolist() == [5, 6, 7, 8, 9]
    assert np.all(result.stabilities > 0)


def test_labels_renumbered_by_size_then_first_member(rng):
    # Blob sizes 3 and 6: the bigger one must get label 0 even though its
    # members come later in the matrix.
    D = two_blob_matrix(rng, size_a=3, size_b=6)
    result = cluster_topics(D, min_cluster_size=3)
    assert result.n_clusters == 2
    assert result.members(0).tolist() == [3, 4, 5, 6, 7, 8]
    assert result.members(1).tolist() == [0, 1, 2]


def test_equidistant_points_are_all_noise():
    D = np.full((10, 10), 0.5)
    np.fill_diagonal(D, 0.0)
    result = cluster_topics(D, min_cluster_size=3)
    assert np.all(result.labels == NOISE)
    assert result.n_clusters == 0


def test_tight_triple_needs_the_single_cluster_flag():
    D = np.full((3, 3), 0.1)
    np.fill_diagonal(D, 0.0)
    noise = cluster_topics(D, min_cluster_size=3)
    assert np.all(noise.labels == NOISE)
    single = cluster_topics(D, min_cluster_size=3, allow_single_cluster=True)
    assert single.labels.tolist() == [0, 0, 0]
    assert single.n_clusters == 1


def test_every_cluster_has_at_least_min_cluster_size_members(rng):
    for _ in range(20):
        n = int(rng.integers(4, 30))
        D = random_matrix(rng, n)
        mcs = int(rng.integers(2, 5))
        result = cluster_topics(D, min_cluster_size=mcs)
        for c in range(result.n_clusters):
            assert result.members(c).size >= mcs


def test_clustering_is_deterministic(rng):
    D = random_matrix(rng, 15)
    first = cluster_topics(D, min_cluster_size=3)
    second = cluster_topics(D, min_cluster_size=3)
    assert np.array_equal(first.labels, second.labels)
    assert np.array_equal(first.stabilities, second.stabilities)


def test_duplicate_points_with_zero_distance_do_not_crash(rng):
    D = two_blob_matrix(rng)
    D[0, 1] = D[1, 0] = 0.0
    result = cluster_topics(D, min_cluster_size=3)
    assert result.labels[0] == result.labels[1]
    assert result.labels[0] != NOISE
    assert np.all(np.isfinite(result.stabilities))


def test_medoid_distances_line_example():
    D = symmetric([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    out = medoid_distances(D, [0, 0, 0])
    assert out.tolist() == [1.0, 0.0, 1.0]


def test_medoid_distances_noise_and_coincident_members():
    D = np.zeros((4, 4))
    D[0, 3] = D[3, 0] = 0.7
    out = medoid_distances(D, [0, 0, 0, NOISE])
    assert out[:3].tolist() == [0.0, 0.0, 0.0]
    assert np.isnan(out[3])


def test_medoid_distances_rejects_label_length_mismatch():
    with pytest.raises(InvalidParameterError):
        medoid_distances(np.zeros((3, 3)), [0, 0])


def test_extract_clusters_rejects_small_min_cluster_size():
    D = np.full((4, 4), 0.5)
    np.fill_diagonal(D, 0.0)
    dend = build_hierarchy(minimum_spanning_tree(D, core_k=1), 4)
    with pytest.raises(InvalidParameterError):
        extract_clusters(dend, 1)
    with pytest.raises(InvalidParameterError):
        extract_clusters(dend, True)


def test_cluster_topics_needs_two_points():
    with pytest.raises(InsufficientDataError):
        cluster_topics(np.zeros((1, 1)))


def test_cluster_result_accessors(rng):
    D = two_blob_matrix(rng)
    result = cluster_topics(D, min_cluster_size=3)
    assert isinstance(result, ClusterResult)
    assert result.dendrogram.n_leaves == 10
    assert result.medoid_distance.shape == (10,)
    clustered = result.labels != NOISE
    assert np.all(result.medoid_distance[clustered] <= 1.0)
    assert np.all(result.medoid_distance[clustered] >= 0.0)


def test_core_k_widens_density_requirement(rng):
    # With core_k equal to the blob size plus one, every core distance
    # reaches across the gap, so the separation disappears and nothing
    # is denser than anything else.
    D = two_blob_matrix(rng)
    D[:5, 5:] = 0.9
    D[5:, :5] = 0.9
    tight = cluster_topics(D, min_cluster_size=3, core_k=3)
    loose = cluster_topics(D, min_cluster_size=3, core_k=6)
    assert tight.n_clusters == 2
    assert loose.n_clusters == 0
