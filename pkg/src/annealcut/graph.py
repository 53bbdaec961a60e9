"""Weighted undirected graphs, the rudy-style edge-list format, and cut values.

Instance files are whitespace-separated integers: a first line ``n m``
followed by ``m`` lines ``a b w`` with 1-based endpoints. Blank lines are
ignored; anything else (comments included) is an error.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass, field

import numpy as np

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


class GraphFormatError(ValueError):
    """Raised when an instance or assignment file is malformed."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


def _readonly(a):
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable weighted multigraph on vertices ``0 .. num_vertices - 1``.

    Edges are kept in input order; parallel edges stay distinct. Adjacency
    is stored in CSR form (``indptr``, ``neighbors``, ``weights``) with one
    entry per edge end.
    """

    num_vertices: int
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray
    indptr: np.ndarray = field(repr=False)
    neighbors: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    @classmethod
    def from_edges(cls, num_vertices, edges) -> "Graph":
        n = int(num_vertices)
        if n < 0:
            raise ValueError("num_vertices must be non-negative")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges)
        if arr.size == 0:
            arr = np.zeros((0, 3), dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != 3:
            raise ValueError("edges must be (u, v, w) triples")
        if not np.issubdtype(arr.dtype, np.integer):
            if not np.all(np.equal(np.mod(arr, 1), 0)):
                raise ValueError("edge endpoints and weights must be integers")
        arr = arr.astype(np.int64)
        u, v, w = arr[:, 0].copy(), arr[:, 1].copy(), arr[:, 2].copy()
        if len(u) and (u.min() < 0 or v.min() < 0 or u.max() >= n or v.max() >= n):
            raise ValueError(f"edge endpoint outside [0, {n})")
        if np.any(u == v):
            raise ValueError("self-loops are not allowed")

        ends = np.concatenate([u, v])
        other = np.concatenate([v, u])
        wts = np.concatenate([w, w])
        order = np.argsort(ends, kind="stable")
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(ends, minlength=n), out=indptr[1:])
        return cls(
            n,
            _readonly(u),
            _readonly(v),
            _readonly(w),
            _readonly(indptr),
            _readonly(other[order].astype(np.int64)),
            _readonly(wts[order].astype(np.int64)),
        )

    @property
    def num_edges(self) -> int:
        return len(self.u)

    @property
    def edges(self) -> list[tuple[int, int, int]]:
        return list(zip(self.u.tolist(), self.v.tolist(), self.w.tolist()))

    def adjacent(self, vertex):
        """``(neighbor, weight)`` pairs for each edge end at ``vertex``."""
        lo, hi = self.indptr[vertex], self.indptr[vertex + 1]
        return list(zip(self.neighbors[lo:hi].tolist(), self.weights[lo:hi].tolist()))

    @property
    def adjacency(self) -> list[list[tuple[int, int]]]:
        return [self.adjacent(x) for x in range(self.num_vertices)]

    def incident_weight(self) -> np.ndarray:
        """Sum of incident edge weights per vertex."""
        out = np.zeros(self.num_vertices, dtype=np.int64)
        np.add.at(out, self.u, self.w)
        np.add.at(out, self.v, self.w)
        return out

    def to_dense(self) -> np.ndarray:
        """Symmetric weight matrix; parallel edges are summed."""
        mat = np.zeros((self.num_vertices, self.num_vertices), dtype=np.int64)
        np.add.at(mat, (self.u, self.v), self.w)
        np.add.at(mat, (self.v, self.u), self.w)
        return mat

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.num_vertices == other.num_vertices
            and np.array_equal(self.u, other.u)
            and np.array_equal(self.v, other.v)
            and np.array_equal(self.w, other.w)
        )

    __hash__ = None


def _lines(text):
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("ascii")
    if isinstance(text, str):
        return io.StringIO(text)
    return text


def _int_token(tok, lineno, what):
    try:
        value = int(tok)
    except ValueError:
        raise GraphFormatError(f"malformed {what} {tok!r}", lineno) from None
    if not INT64_MIN <= value <= INT64_MAX:
        raise GraphFormatError(f"{what} {tok!r} does not fit in 64 bits", lineno)
    return value


def parse_graph(text) -> Graph:
    """Parse an instance from a string, bytes, or text/binary stream.

    >>> parse_graph("3 2\\n1 2 1\\n2 3 1\\n").edges
    [(0, 1, 1), (1, 2, 1)]
    """
    header = None
    n = m = 0
    rows = []
    for lineno, raw in enumerate(_lines(text), start=1):
        if isinstance(raw, bytes):
            raw = raw.decode("ascii")
        toks = raw.split()
        if not toks:
            continue
        if header is None:
            if len(toks) != 2:
                raise GraphFormatError(f"expected 'n m', got {len(toks)} tokens", lineno)
            n = _int_token(toks[0], lineno, "vertex count")
            m = _int_token(toks[1], lineno, "edge count")
            if n < 0 or m < 0:
                raise GraphFormatError("vertex and edge counts must be non-negative", lineno)
            header = lineno
            continue
        if len(toks) != 3:
            raise GraphFormatError(f"expected 'a b w', got {len(toks)} tokens", lineno)
        if len(rows) == m:
            raise GraphFormatError(f"more than the declared {m} edges", lineno)
        a = _int_token(toks[0], lineno, "endpoint")
        b = _int_token(toks[1], lineno, "endpoint")
        wt = _int_token(toks[2], lineno, "weight")
        for end in (a, b):
            if not 1 <= end <= n:
                raise GraphFormatError(f"endpoint {end} outside [1, {n}]", lineno)
        if a == b:
            raise GraphFormatError(f"self-loop on vertex {a}", lineno)
        rows.append((a - 1, b - 1, wt))
    if header is None:
        raise GraphFormatError("empty instance: missing 'n m' header")
    if len(rows) != m:
        raise GraphFormatError(f"header declares {m} edges but {len(rows)} were found")
    return Graph.from_edges(n, rows)


def read_graph(path) -> Graph:
    with open(path, "rb") as fh:
        return parse_graph(fh)


def format_graph(g: Graph) -> str:
    parts = [f"{g.num_vertices} {g.num_edges}\n"]
    parts.extend(f"{a + 1} {b + 1} {wt}\n" for a, b, wt in g.edges)
    return "".join(parts)


def write_graph(g: Graph, sink):
    """Write ``g`` in instance format to a path or text stream."""
    text = format_graph(g)
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w") as fh:
            fh.write(text)
    else:
        sink.write(text)
    return text


def check_assignment(assignment, num_vertices=None) -> np.ndarray:
    """Validate a shore assignment and return it as an ``int8`` array of +/-1."""
    side = np.asarray(assignment)
    if side.ndim != 1:
        raise ValueError("assignment must be one-dimensional")
    if num_vertices is not None and len(side) != num_vertices:
        raise ValueError(f"assignment has length {len(side)}, graph has {num_vertices} vertices")
    if not np.all((side == 1) | (side == -1)):
        raise ValueError("assignment entries must be -1 or +1")
    return side.astype(np.int8)


def cut_value(g: Graph, assignment) -> int:
    """Total weight of edges whose endpoints lie on different shores."""
    side = check_assignment(assignment, g.num_vertices)
    crossing = side[g.u] != side[g.v]
    return int(g.w[crossing].sum(dtype=np.int64))


def format_assignment(assignment) -> str:
    side = check_assignment(assignment)
    return " ".join("1" if s > 0 else "-1" for s in side.tolist())


def write_assignment(assignment, sink) -> str:
    """Write the assignment as one line of space-separated +/-1 values.

    The returned text has no trailing newline; one is added when writing.
    """
    text = format_assignment(assignment)
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w") as fh:
            fh.write(text + "\n")
    elif sink is not None:
        sink.write(text + "\n")
    return text


def parse_assignment(text) -> np.ndarray:
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("ascii")
    if not isinstance(text, str):
        text = text.read()
    values = []
    for tok in text.split():
        if tok not in ("1", "-1"):
            raise GraphFormatError(f"assignment value {tok!r} is not -1 or 1")
        values.append(int(tok))
    return np.array(values, dtype=np.int8)


def read_assignment(path) -> np.ndarray:
    with open(path) as fh:
        return parse_assignment(fh.read())
