import logging
import warnings

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.cluster import KMeans
from sklearn.exceptions import ConvergenceWarning
from sklearn.utils.validation import check_array, check_is_fitted

logger = logging.getLogger(__name__)


def _member_means(X: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    centers = np.zeros((k, X.shape[1]))
    for c in range(k):
        members = labels == c
        if members.any():
            centers[c] = X[members].mean(axis=0)
    return centers


def _repair_empty_clusters(X: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    """
    Give every empty cluster one point: the point farthest from its own centroid, taken from a
    cluster that keeps at least one member. Ties go to the lowest point index.
    """
    labels = labels.copy()
    while True:
        counts = np.bincount(labels, minlength=k)
        empty = np.flatnonzero(counts == 0)
        if empty.size == 0:
            return labels
        centers = _member_means(X, labels, k)
        distances = ((X - centers[labels]) ** 2).sum(axis=1)
        donors = counts[labels] > 1
        distances[~donors] = -1.0
        point = int(np.argmax(distances))
        logger.debug("Moving period %d from cluster %d to empty cluster %d", point, labels[point], empty[0])
        labels[point] = empty[0]


class RepresentativeKMeans(BaseEstimator, ClusterMixin):
    """
    Seeded k-means (k-means++ initialisation, Lloyd iterations) that never returns an empty
    cluster.

    Wraps scikit-learn's `KMeans` with a single initialisation and `tol=0`, so iterations stop
    only when the assignment no longer changes or `max_iter` is hit. Results are deterministic
    for a fixed `random_state`.

    Parameters
    ----------
    n_clusters : int, default=8
        Number of clusters, between 1 and the number of samples.
    random_state : int, default=1
        Seed for the k-means++ initialisation.
    max_iter : int, default=300
        Cap on Lloyd iterations.

    Attributes
    ----------
    labels_ : ndarray of shape (n_samples,)
        0-based cluster of each sample.
    cluster_centers_ : ndarray of shape (n_clusters, n_features)
        Mean of the members of each cluster.
    inertia_ : float
        Sum of squared distances of the samples to their cluster centre.
    n_iter_ : int
        Lloyd iterations run.
    """

    def __init__(self, n_clusters=8, random_state=1, max_iter=300):
        self.n_clusters = n_clusters
        self.random_state = random_state
        self.max_iter = max_iter

    def fit(self, X, y=None):
        X = check_array(X, dtype=float)
        if not 1 <= self.n_clusters <= X.shape[0]:
            raise ValueError(
                f"n_clusters={self.n_clusters} must be between 1 and n_samples={X.shape[0]}"
            )
        kmeans = KMeans(
            n_clusters=self.n_clusters,
            init="k-means++",
            n_init=1,
            max_iter=self.max_iter,
            tol=0.0,
            algorithm="lloyd",
            random_state=self.random_state,
        )
        # duplicate rows make KMeans warn about fewer distinct clusters; the repair below handles it
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ConvergenceWarning)
            kmeans.fit(X)

        self.labels_ = _repair_empty_clusters(X, kmeans.labels_.astype(int), self.n_clusters)
        self.cluster_centers_ = _member_means(X, self.labels_, self.n_clusters)
        self.inertia_ = float(((X - self.cluster_centers_[self.labels_]) ** 2).sum())
        self.n_iter_ = int(kmeans.n_iter_)
        logger.debug(
            "k-means with k=%d converged after %d iterations, inertia %.6g",
            self.n_clusters,
            self.n_iter_,
            self.inertia_,
        )
        return self

    def fit_predict(self, X, y=None, **kwargs):
        return self.fit(X).labels_

    def predict(self, X):
        check_is_fitted(self, "cluster_centers_")
        X = check_array(X, dtype=float)
        distances = ((X[:, None, :] - self.cluster_centers_[None, :, :]) ** 2).sum(axis=2)
        return distances.argmin(axis=1)
