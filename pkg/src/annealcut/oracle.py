"""Exact maximum cut by exhaustive enumeration, for small graphs only."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .graph import Graph

MAX_EXACT_VERTICES = 24


class InstanceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class ExactResult:
    optimum: int
    witness: np.ndarray


@njit(nogil=True, cache=True)
def _gray_enumerate(n, indptr, neighbors, weights):
    # Vertex 0 stays on +1. Vertices 1..n-1 walk a reflected Gray code, one
    # flip per step; the change is evaluated directly from the neighbours'
    # sides. key holds bit (n-1-i) set when vertex i is on +1, so a smaller
    # key is a lexicographically smaller assignment.
    side = np.ones(n, dtype=np.int8)
    value = 0
    key = (1 << (n - 1)) - 1
    best = 0
    best_key = key
    for t in range(1, 1 << (n - 1)):
        j = 1
        s = t
        while (s & 1) == 0:
            s >>= 1
            j += 1
        delta = 0
        for e in range(indptr[j], indptr[j + 1]):
            if side[neighbors[e]] == side[j]:
                delta += weights[e]
            else:
                delta -= weights[e]
        side[j] = -side[j]
        value += delta
        key ^= 1 << (n - 1 - j)
        if value > best or (value == best and key < best_key):
            best = value
            best_key = key
    return best, best_key


def brute_force_maxcut(g: Graph) -> ExactResult:
    """Maximum cut of ``g`` and the lexicographically smallest optimal
    assignment with vertex 0 on shore +1 (-1 sorts before +1).

    >>> from annealcut.graph import Graph
    >>> brute_force_maxcut(Graph.from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])).optimum
    2
    """
    n = g.num_vertices
    if n > MAX_EXACT_VERTICES:
        raise InstanceTooLarge(f"exact solver handles at most {MAX_EXACT_VERTICES} vertices, got {n}")
    if n == 0:
        return ExactResult(0, np.zeros(0, dtype=np.int8))
    best, key = _gray_enumerate(n, g.indptr, g.neighbors, g.weights)
    witness = np.ones(n, dtype=np.int8)
    for i in range(1, n):
        if not (int(key) >> (n - 1 - i)) & 1:
            witness[i] = -1
    return ExactResult(int(best), witness)
