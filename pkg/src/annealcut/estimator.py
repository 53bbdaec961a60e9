"""scikit-learn style wrapper around the annealer."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from .annealer import AnnealParams, LinearSchedule, anneal
from .graph import Graph, cut_value


def check_graph(X) -> Graph:
    """Coerce ``X`` to a :class:`Graph`.

    Accepts a ``Graph`` or a square symmetric integer matrix (dense or
    scipy sparse) with a zero diagonal; the upper triangle holds the edge
    weights. Edge lists go through :meth:`Graph.from_edges`.
    """
    if isinstance(X, Graph):
        return X
    if hasattr(X, "tocoo"):
        coo = X.tocoo()
        if coo.shape[0] != coo.shape[1]:
            raise ValueError(f"adjacency matrix must be square, got shape {coo.shape}")
        if (abs(X - X.T)).nnz:
            raise ValueError("adjacency matrix must be symmetric")
        if np.any((coo.row == coo.col) & (coo.data != 0)):
            raise ValueError("adjacency matrix must have an empty diagonal")
        keep = coo.row < coo.col
        edges = np.column_stack([coo.row[keep], coo.col[keep], coo.data[keep]])
        return Graph.from_edges(coo.shape[0], edges)
    arr = np.asarray(X)
    if arr.ndim == 2 and arr.shape[0] == arr.shape[1]:
        if not np.array_equal(arr, arr.T):
            raise ValueError("adjacency matrix must be symmetric")
        if np.any(np.diag(arr) != 0):
            raise ValueError("adjacency matrix must have an empty diagonal")
        iu, ju = np.nonzero(np.triu(arr, k=1))
        return Graph.from_edges(arr.shape[0], np.column_stack([iu, ju, arr[iu, ju]]))
    raise ValueError("expected a Graph or a square adjacency matrix")


class MaxCutAnnealer(ClusterMixin, BaseEstimator):
    """Simulated annealing for maximum cut.

    ``fit`` takes one graph and stores the best cut found: ``labels_`` holds
    the shore (-1 or +1) of every vertex and ``best_objective_`` its cut
    value. ``random_state`` is the integer seed of the annealer's stream.

    Parameters
    ----------
    heat_max : float, default=10000
    heat_step : float, default=2e-6
    random_state : int, default=0
    time_limit : float or None, default=None
        Wall-clock budget in seconds.
    """

    def __init__(self, heat_max=10000.0, heat_step=2e-6, random_state=0, time_limit=None):
        self.heat_max = heat_max
        self.heat_step = heat_step
        self.random_state = random_state
        self.time_limit = time_limit

    def fit(self, X, y=None):
        graph = check_graph(X)
        if isinstance(self.random_state, (np.random.RandomState, np.random.Generator)):
            raise TypeError("random_state must be an integer seed")
        params = AnnealParams(
            schedule=LinearSchedule(float(self.heat_max), float(self.heat_step)),
            seed=int(self.random_state or 0),
            time_limit=self.time_limit,
        )
        result = anneal(graph, params)
        self.result_ = result
        self.labels_ = result.best_assignment.astype(np.int64)
        self.best_objective_ = result.best_objective
        self.n_vertices_ = graph.num_vertices
        return self

    def score(self, X, y=None):
        """Cut value of the fitted assignment on ``X``."""
        check_is_fitted(self, "labels_")
        return cut_value(check_graph(X), self.labels_)
