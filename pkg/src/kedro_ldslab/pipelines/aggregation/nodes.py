import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd

from ...datasets.period_mapping import PeriodMapping
from ...datasets.system_config import SystemConfig
from ...datasets.timeseries import TimeSeriesTable, to_timeseries_table
from ...datasets.validation import validate_inputs
from ...errors import DimensionError, EmptyClusterError, InvalidInputs, InvalidK
from ...sklearn.cluster import RepresentativeKMeans

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ClusteringResult:
    # 0-based cluster of each input period
    assignment: np.ndarray
    centroids: np.ndarray
    inertia: float
    n_iter: int = 0

    @property
    def k(self) -> int:
        return len(self.centroids)


def build_feature_matrix(ts: TimeSeriesTable, N: int, T: int) -> np.ndarray:
    """
    One row per input period: the period's values of every column, column after column, each
    column divided by its maximum over the whole horizon. All-zero columns stay zero.
    """
    values = ts.values()
    if N < 1 or T < 1 or values.shape[0] != N * T:
        raise DimensionError(f"time series has {values.shape[0]} steps, expected N*T = {N}*{T}")
    peak = np.abs(values).max(axis=0)
    scaled = np.divide(values, peak, out=np.zeros_like(values), where=peak > 0)
    # (H, C) -> (N, T, C) -> (N, C, T) so each column's T values are contiguous
    return scaled.reshape(N, T, -1).transpose(0, 2, 1).reshape(N, -1)


def cluster_kmeans(features: np.ndarray, k: int, seed: int = 1, max_iter: int = 300) -> ClusteringResult:
    features = np.asarray(features, dtype=float)
    N = features.shape[0]
    if not 1 <= k <= N:
        raise InvalidK(f"k={k} must be between 1 and the number of periods N={N}")
    estimator = RepresentativeKMeans(n_clusters=k, random_state=seed, max_iter=max_iter).fit(features)
    logger.info("Clustered %d periods into %d clusters (inertia %.6g)", N, k, estimator.inertia_)
    return ClusteringResult(
        assignment=estimator.labels_,
        centroids=estimator.cluster_centers_,
        inertia=estimator.inertia_,
        n_iter=estimator.n_iter_,
    )


def select_representatives(clustering: ClusteringResult, features: np.ndarray, T: int) -> PeriodMapping:
    """
    Pick the medoid of each cluster as its representative: the member period nearest the
    centroid, lowest period index on ties. Representatives are numbered in order of their
    designated period so the mapping does not depend on the cluster labelling.
    """
    features = np.asarray(features, dtype=float)
    assignment = np.asarray(clustering.assignment, dtype=int)
    medoids = []
    for c in range(clustering.k):
        members = np.flatnonzero(assignment == c)
        if members.size == 0:
            raise EmptyClusterError(f"cluster {c} has no member periods")
        distances = ((features[members] - clustering.centroids[c]) ** 2).sum(axis=1)
        medoids.append(int(members[np.argmin(distances)]))

    order = np.argsort(medoids, kind="stable")
    relabel = np.empty(clustering.k, dtype=int)
    relabel[order] = np.arange(clustering.k)
    rep_of = relabel[assignment]
    designated = [medoids[c] for c in order]
    return PeriodMapping(
        N=len(assignment),
        T=T,
        rep_of=rep_of,
        designated=designated,
        weight=np.bincount(rep_of, minlength=clustering.k),
    )


def identity_mapping(N: int, T: int) -> PeriodMapping:
    return PeriodMapping(N=N, T=T, rep_of=range(N), designated=range(N), weight=[1] * N)


# Kedro node wrappers


def prepare_timeseries(raw_timeseries: pd.DataFrame, config: SystemConfig) -> TimeSeriesTable:
    """Check the raw series against the system description and refuse invalid inputs."""
    ts = to_timeseries_table(raw_timeseries, config, source="timeseries")
    report = validate_inputs(config, ts)
    if not report.ok:
        raise InvalidInputs(report.issues)
    return ts


def make_period_features(ts: TimeSeriesTable, config: SystemConfig) -> np.ndarray:
    return build_feature_matrix(ts, config.N, config.horizon.T)


def make_period_mapping(features: np.ndarray, config: SystemConfig, full_resolution: bool = False) -> PeriodMapping:
    T = config.horizon.T
    if full_resolution:
        logger.info("Using full resolution: every period represents itself")
        return identity_mapping(config.N, T)
    aggregation = config.aggregation
    clustering = cluster_kmeans(
        features, aggregation.num_representatives, aggregation.seed, aggregation.max_iter
    )
    mapping = select_representatives(clustering, features, T)
    logger.info(
        "Selected representatives: designated periods %s, weights %s",
        [n + 1 for n in mapping.designated],
        list(mapping.weight),
    )
    return mapping
