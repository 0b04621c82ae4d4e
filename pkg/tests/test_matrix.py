import numpy as np
import pytest

from topicdynamics import (
    DistanceMatrix,
    IncompatibleVectorsError,
    InsufficientDataError,
    InvalidInputError,
    InvalidParameterError,
    TopicVector,
    aligned_distance,
    compute_distance_matrix,
    pairwise_distances,
)
from topicdynamics.validation import (
    as_count_matrix,
    as_curve,
    check_distance_matrix,
    check_fraction,
    check_normalized,
    check_window,
)
from conftest import random_tdv


def tdv_stack(rng, n, m):
    return np.vstack([random_tdv(rng, m) for _ in range(n)])


def test_pairwise_matches_pair_function(rng):
    X = tdv_stack(rng, 6, 15)
    D = pairwise_distances(X, "hda", "none")
    for i in range(6):
        for j in range(6):
            expected = 0.0 if i == j else aligned_distance(X[i], X[j], "hda", "none")
            assert D[i, j] == expected


def test_pairwise_thread_count_does_not_change_values(rng):
    X = tdv_stack(rng, 12, 40)
    single = pairwise_distances(X, "nds", "exhaustive", threads=1)
    multi = pairwise_distances(X, "nds", "exhaustive", threads=8)
    assert np.array_equal(single, multi)


def test_pairwise_rejects_bad_thread_counts(rng):
    X = tdv_stack(rng, 3, 5)
    for bad in (0, -2, 1.5, True):
        with pytest.raises(InvalidParameterError):
            pairwise_distances(X, threads=bad)


def test_compute_distance_matrix_carries_provenance(rng):
    vectors = [TopicVector(f"t{i}", random_tdv(rng, 10)) for i in range(4)]
    matrix = compute_distance_matrix(vectors, "sad", "max")
    assert matrix.topic_ids == ("t0", "t1", "t2", "t3")
    assert matrix.metric.value == "sad"
    assert matrix.alignment.value == "max"
    assert len(matrix) == 4
    assert matrix.values.shape == (4, 4)


def test_compute_distance_matrix_input_checks(rng):
    one = [TopicVector("only", random_tdv(rng, 10))]
    with pytest.raises(InsufficientDataError):
        compute_distance_matrix(one)
    mixed = [
        TopicVector("a", random_tdv(rng, 10)),
        TopicVector("b", random_tdv(rng, 12)),
    ]
    with pytest.raises(IncompatibleVectorsError):
        compute_distance_matrix(mixed)


def test_distance_matrix_validates_and_freezes():
    values = np.array([[0.0, 0.4], [0.4, 0.0]])
    matrix = DistanceMatrix(("a", "b"), values)
    with pytest.raises(ValueError):
        matrix.values[0, 1] = 0.9
    with pytest.raises(IncompatibleVectorsError):
        DistanceMatrix(("a",), values)
    with pytest.raises(InvalidParameterError):
        DistanceMatrix(("a", "a"), values)
    with pytest.raises(InvalidInputError):
        DistanceMatrix(("a", "b"), np.array([[0.0, 0.4], [0.5, 0.0]]))


def test_as_curve_rules():
    assert as_curve([1, 2, 3]).dtype == np.float64
    with pytest.raises(InvalidInputError):
        as_curve([[1.0]])
    with pytest.raises(InvalidInputError):
        as_curve([])
    with pytest.raises(InvalidInputError):
        as_curve([1.0, np.nan])
    with pytest.raises(InvalidInputError):
        as_curve([1.0, -0.1])


def test_check_normalized_tolerance():
    check_normalized([0.5, 0.5 + 5e-10])
    with pytest.raises(InvalidInputError):
        check_normalized([0.5, 0.5 + 5e-9])


def test_as_count_matrix_rules():
    assert as_count_matrix([[1, 2], [3, 4]]).shape == (2, 2)
    with pytest.raises(InvalidInputError):
        as_count_matrix([1, 2, 3])
    with pytest.raises(InvalidInputError):
        as_count_matrix(np.empty((0, 5)))
    with pytest.raises(InvalidInputError):
        as_count_matrix([[1.0, np.inf]])


def test_check_distance_matrix_rules():
    good = np.array([[0.0, 0.2], [0.2, 0.0]])
    assert np.array_equal(check_distance_matrix(good), good)
    with pytest.raises(InvalidInputError):
        check_distance_matrix(np.zeros((2, 3)))
    with pytest.raises(InvalidInputError):
        check_distance_matrix(np.array([[0.1, 0.2], [0.2, 0.0]]))
    with pytest.raises(InvalidInputError):
        check_distance_matrix(np.array([[0.0, 0.2], [0.3, 0.0]]))
    with pytest.raises(InvalidInputError):
        check_distance_matrix(np.array([[0.0, -0.2], [-0.2, 0.0]]))


def test_check_window_rules():
    assert check_window(1) == 1
    assert check_window(7) == 7
    for bad in (0, -3, 2, 4, 1.5, "3", True):
        with pytest.raises(InvalidParameterError):
            check_window(bad)


def test_check_fraction_rules():
    assert check_fraction(0.3, "x") == 0.3
    assert check_fraction(0.0, "x") == 0.0
    assert check_fraction(1.0, "x") == 1.0
    with pytest.raises(InvalidParameterError):
        check_fraction(0.0, "x", open_low=True)
    with pytest.raises(InvalidParameterError):
        check_fraction(1.0, "x", open_high=True)
    with pytest.raises(InvalidParameterError):
        check_fraction(1.2, "x")
    with pytest.raises(InvalidParameterError):
        check_fraction("half", "x")
    with pytest.raises(InvalidParameterError):
        check_fraction(float("nan"), "x")
