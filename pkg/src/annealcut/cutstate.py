"""Cut state with incrementally maintained flip gains.

``gain[v]`` is the exact change in cut value from moving ``v`` to the other
shore. A flip touches only ``v`` and its adjacency list.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .graph import Graph, check_assignment


@njit(nogil=True, cache=True, inline="always")
def flip_vertex(indptr, neighbors, weights, side, gain, k):
    """Move ``k`` across the cut, update gains, and return the objective change."""
    delta = gain[k]
    side[k] = -side[k]
    gain[k] = -delta
    sk = side[k]
    for e in range(indptr[k], indptr[k + 1]):
        x = neighbors[e]
        if side[x] == sk:
            gain[x] += 2 * weights[e]
        else:
            gain[x] -= 2 * weights[e]
    return delta


@njit(nogil=True, cache=True)
def _flip(indptr, neighbors, weights, side, gain, k):
    return flip_vertex(indptr, neighbors, weights, side, gain, k)


class CutState:
    """Shore assignment of every vertex plus its flip gains and cut value.

    The state holds a reference to its (immutable) graph. Build one with
    :meth:`init_all_one` or :meth:`recompute`.
    """

    __slots__ = ("graph", "side", "gain", "objective")

    def __init__(self, graph: Graph, side: np.ndarray, gain: np.ndarray, objective: int):
        self.graph = graph
        self.side = side
        self.gain = gain
        self.objective = int(objective)

    @classmethod
    def init_all_one(cls, graph: Graph) -> "CutState":
        side = np.ones(graph.num_vertices, dtype=np.int8)
        return cls(graph, side, graph.incident_weight(), 0)

    @classmethod
    def recompute(cls, graph: Graph, assignment) -> "CutState":
        """Build the state from scratch by direct evaluation over the edge list."""
        side = check_assignment(assignment, graph.num_vertices).copy()
        su, sv = side[graph.u], side[graph.v]
        crossing = su != sv
        objective = int(graph.w[crossing].sum(dtype=np.int64))
        # flipping an endpoint cuts an uncut edge (+w) or uncuts a cut one (-w)
        contrib = np.where(crossing, -graph.w, graph.w)
        gain = np.zeros(graph.num_vertices, dtype=np.int64)
        np.add.at(gain, graph.u, contrib)
        np.add.at(gain, graph.v, contrib)
        return cls(graph, side, gain, objective)

    @property
    def assignment(self) -> np.ndarray:
        return self.side

    def flip(self, v: int) -> int:
        if not 0 <= v < self.graph.num_vertices:
            raise IndexError(f"vertex {v} outside [0, {self.graph.num_vertices})")
        g = self.graph
        delta = int(_flip(g.indptr, g.neighbors, g.weights, self.side, self.gain, v))
        self.objective += delta
        return delta

    def copy(self) -> "CutState":
        return CutState(self.graph, self.side.copy(), self.gain.copy(), self.objective)

    def __eq__(self, other):
        if not isinstance(other, CutState):
            return NotImplemented
        return (
            self.graph is other.graph
            and self.objective == other.objective
            and np.array_equal(self.side, other.side)
            and np.array_equal(self.gain, other.gain)
        )

    __hash__ = None

    def __repr__(self):
        return f"CutState(n={self.graph.num_vertices}, objective={self.objective})"


def init_all_one(graph: Graph) -> CutState:
    return CutState.init_all_one(graph)


def recompute(graph: Graph, assignment) -> CutState:
    return CutState.recompute(graph, assignment)
