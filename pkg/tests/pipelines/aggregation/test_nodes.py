import numpy as np
import pandas as pd
import pytest

from kedro_ldslab.datasets import TimeSeriesTable, write_period_mapping
from kedro_ldslab.errors import DimensionError, EmptyClusterError, InvalidInputs, InvalidK
from kedro_ldslab.pipelines.aggregation.nodes import (
    ClusteringResult,
    build_feature_matrix,
    cluster_kmeans,
    identity_mapping,
    make_period_features,
    make_period_mapping,
    prepare_timeseries,
    select_representatives,
)
from tests.helpers import load_instance, make_config, random_instance


def test_features_are_normalized_per_column():
    ts = TimeSeriesTable.from_columns({"demand.Z1": [0, 5, 10, 10, 5, 0]})
    np.testing.assert_allclose(build_feature_matrix(ts, N=2, T=3), [[0, 0.5, 1], [1, 0.5, 0]])


def test_all_zero_column_gives_zero_features():
    ts = TimeSeriesTable.from_columns({"demand.Z1": [1, 2, 3, 4], "avail.wind": [0, 0, 0, 0]})
    features = build_feature_matrix(ts, N=2, T=2)
    assert np.isfinite(features).all()
    np.testing.assert_array_equal(features[:, 2:], 0.0)


def test_features_concatenate_column_after_column():
    ts = TimeSeriesTable.from_columns({"a": [1, 2, 3, 4], "b": [4, 3, 2, 1]})
    features = build_feature_matrix(ts, N=2, T=2)
    np.testing.assert_allclose(features, [[0.25, 0.5, 1.0, 0.75], [0.75, 1.0, 0.5, 0.25]])


def test_features_need_whole_periods():
    ts = TimeSeriesTable.from_columns({"a": [1, 2, 3]})
    with pytest.raises(DimensionError):
        build_feature_matrix(ts, N=2, T=2)


def test_identical_rows_single_cluster():
    result = cluster_kmeans(np.ones((5, 3)), k=1)
    assert result.assignment.tolist() == [0] * 5
    assert result.inertia == 0.0


def test_separated_clouds():
    rng = np.random.default_rng(42)
    X = np.vstack([rng.normal(0, 0.1, size=(6, 2)), rng.normal(10, 0.1, size=(6, 2))])
    result = cluster_kmeans(X, k=2, seed=3)
    assert len(set(result.assignment[:6])) == 1
    assert len(set(result.assignment[6:])) == 1
    assert result.assignment[0] != result.assignment[6]


def test_one_cluster_per_period():
    X = np.arange(12, dtype=float).reshape(4, 3)
    result = cluster_kmeans(X, k=4)
    assert sorted(result.assignment.tolist()) == [0, 1, 2, 3]
    assert result.inertia == pytest.approx(0.0)


@pytest.mark.parametrize("k", [0, 5])
def test_invalid_k(k):
    with pytest.raises(InvalidK):
        cluster_kmeans(np.zeros((4, 2)), k=k)


def test_single_cluster_medoid():
    features = np.array([[0.0], [4.0], [5.0], [10.0]])
    clustering = ClusteringResult(np.zeros(4, dtype=int), np.array([[4.75]]), 0.0)
    mapping = select_representatives(clustering, features, T=2)
    assert mapping.designated == (2,)
    assert mapping.weight == (4,)


def test_medoid_ties_go_to_the_lowest_period():
    features = np.array([[1.0], [3.0], [2.0], [2.0], [9.0]])
    clustering = ClusteringResult(np.array([0, 0, 0, 0, 1]), np.array([[2.0], [9.0]]), 0.0)
    mapping = select_representatives(clustering, features, T=1)
    assert mapping.designated == (2, 4)


def test_representatives_follow_their_designated_period():
    features = np.array([[9.0], [0.0], [11.0], [2.0]])
    clustering = ClusteringResult(np.array([1, 0, 1, 0]), np.array([[1.0], [10.0]]), 0.0)
    mapping = select_representatives(clustering, features, T=1)
    assert mapping.designated == (0, 1)
    assert mapping.rep_of == (0, 1, 0, 1)


def test_empty_cluster_is_a_bug_signal():
    clustering = ClusteringResult(np.array([0, 0]), np.array([[0.0], [1.0]]), 0.0)
    with pytest.raises(EmptyClusterError):
        select_representatives(clustering, np.zeros((2, 1)), T=1)


def test_fix_a_mapping(fix_a):
    _, _, mapping = fix_a
    # both clusters have two members at the same distance from their mean
    assert mapping.designated[0] in (0, 1) and mapping.designated[1] in (2, 3)
    assert mapping.rep_of == (0, 0, 1, 1)
    assert sum(mapping.weight) == 4


def test_fix_b_mapping(fix_b):
    _, _, mapping = fix_b
    assert mapping.designated == (0, 3)
    assert mapping.weight == (3, 3)


@pytest.mark.parametrize("N", [1, 4])
def test_identity_mapping(N):
    mapping = identity_mapping(N, T=3)
    assert mapping.rep_of == tuple(range(N))
    assert mapping.weight == (1,) * N
    assert all(mapping.rep_of[n] == w for w, n in enumerate(mapping.designated))


def test_mapping_files_are_deterministic(tmp_path, fix_a_paths):
    for run in ("first", "second"):
        _, _, mapping = load_instance(*fix_a_paths)
        write_period_mapping(mapping, tmp_path / run)
    for name in ("period_mapping.csv", "representatives.csv"):
        assert (tmp_path / "first" / name).read_bytes() == (tmp_path / "second" / name).read_bytes()


@pytest.mark.parametrize("seed", range(5))
def test_medoids_belong_to_their_cluster_and_weights_add_up(seed):
    config, ts, mapping = random_instance(seed)
    assert sum(mapping.weight) == config.N
    for w, n in enumerate(mapping.designated):
        assert mapping.rep_of[n] == w


def test_prepare_timeseries_refuses_invalid_inputs():
    config = make_config(H=4, T=2, k=1, zones=("Z1", "Z2"))
    raw = pd.DataFrame({"demand.Z1": [1.0, 2.0, 3.0, 4.0]}, index=pd.RangeIndex(1, 5, name="step"))
    with pytest.raises(InvalidInputs, match="missing demand series"):
        prepare_timeseries(raw, config)


def test_full_resolution_skips_clustering(fix_a):
    config, ts, _ = fix_a
    mapping = make_period_mapping(make_period_features(ts, config), config, full_resolution=True)
    assert mapping == identity_mapping(4, 4)
