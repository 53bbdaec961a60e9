"""Simulated annealing over single-vertex flips.

The inverse temperature ``heat`` ramps linearly from 0 in steps of
``heat_step`` while it stays below ``heat_max``. A proposed flip of vertex
``k`` with gain ``g`` is accepted when a uniform draw ``u`` satisfies
``u <= exp(heat * g / best)``, where ``best`` is the largest cut seen so
far. Moves with ``g >= 0`` and every move made while ``best <= 0`` are
accepted outright, and no uniform is drawn for them; otherwise each
iteration consumes one bounded draw for the vertex and one uniform.
"""

from __future__ import annotations

import logging
import math
import sys
import time
from dataclasses import dataclass, field
from decimal import Decimal

import numpy as np
from numba import njit

from .cutstate import CutState, flip_vertex
from .graph import Graph
from .rng import Xoshiro256, next_bounded, next_uniform

logger = logging.getLogger(__name__)

CHUNK_ITERATIONS = 1 << 21
TRACE_CAPACITY = 1 << 12


@dataclass(frozen=True)
class LinearSchedule:
    heat_max: float = 10000.0
    heat_step: float = 2e-6

    def __post_init__(self):
        if not (self.heat_max > 0 and math.isfinite(self.heat_max)):
            raise ValueError(f"heat_max must be positive and finite, got {self.heat_max}")
        if not (self.heat_step > 0 and math.isfinite(self.heat_step)):
            raise ValueError(f"heat_step must be positive and finite, got {self.heat_step}")

    @property
    def iterations(self) -> int:
        return iteration_count(self)


def iteration_count(schedule: LinearSchedule) -> int:
    """Number of iterations before ``heat`` reaches ``heat_max``.

    The ratio is taken on the shortest decimal forms of the two floats so
    that ratios such as ``1.1 / 2e-6`` are not pushed past an integer by
    float rounding.
    """
    ratio = Decimal(repr(float(schedule.heat_max))) / Decimal(repr(float(schedule.heat_step)))
    return int(ratio.to_integral_value(rounding="ROUND_CEILING"))


@dataclass(frozen=True)
class AnnealParams:
    schedule: LinearSchedule = field(default_factory=LinearSchedule)
    seed: int = 0
    report_improvements: bool = False
    time_limit: float | None = None

    def __post_init__(self):
        if self.time_limit is not None and not self.time_limit > 0:
            raise ValueError(f"time_limit must be positive, got {self.time_limit}")


@dataclass
class RunResult:
    best_objective: int
    best_assignment: np.ndarray
    iterations_executed: int
    accepted_moves: int
    improvement_trace: list[tuple[int, int]]
    wall_time: float
    completed: bool = True
    seed: int | None = None
    schedule: LinearSchedule | None = None


def acceptance_probability(heat, delta, best) -> float:
    """Probability of taking a move with gain ``delta`` at inverse temperature ``heat``."""
    if best <= 0 or delta >= 0:
        return 1.0
    return min(1.0, math.exp(heat * delta / best))


@njit(nogil=True, cache=True, error_model="numpy")
def _anneal_chunk(
    indptr, neighbors, weights, side, gain, best_side, counters, rng_state,
    start, stop, heat_step, trace_iter, trace_obj,
):
    n = side.shape[0]
    obj = counters[0]
    best = counters[1]
    accepted = counters[2]
    cap = trace_iter.shape[0]
    nt = 0
    i = start
    while i < stop:
        k = next_bounded(rng_state, n)
        g = gain[k]
        take = True
        if g < 0 and best > 0:
            x = i * heat_step * g / best
            u = next_uniform(rng_state)
            # exp(x) <= 1 / (1 + y + y^2/2 + y^3/6) for y = -x >= 0, so this
            # rejects exactly the draws the exp comparison would, without exp
            y = -x
            if u * (1.0 + y * (1.0 + y * (0.5 + y * (1.0 / 6.0)))) > 1.0 + 1e-9:
                take = False
            else:
                take = u <= math.exp(x)
        i += 1
        if take:
            obj += flip_vertex(indptr, neighbors, weights, side, gain, k)
            accepted += 1
            if obj > best:
                best = obj
                best_side[:] = side
                trace_iter[nt] = i - 1
                trace_obj[nt] = obj
                nt += 1
                if nt == cap:
                    break
    counters[0] = obj
    counters[1] = best
    counters[2] = accepted
    return i, nt


def anneal(graph: Graph, params: AnnealParams | None = None, rng: Xoshiro256 | None = None,
           *, cancel=None, sink=None) -> RunResult:
    """Run one annealing chain from the all-(+1) assignment.

    ``rng`` defaults to a fresh stream seeded with ``params.seed``. ``cancel``
    is any object with ``is_set()`` (e.g. ``threading.Event``); it and the
    time limit are polled between chunks of iterations, and an interrupted
    run comes back with ``completed=False``. With ``report_improvements``
    each new best is written to ``sink`` (default stderr) as
    ``"iteration objective"``.
    """
    params = params or AnnealParams()
    n = graph.num_vertices
    if n < 1:
        raise ValueError("cannot anneal a graph with no vertices")
    if n >= 2**32:
        raise ValueError("graphs with 2**32 or more vertices are not supported")
    if rng is None:
        rng = Xoshiro256(params.seed)
    if params.report_improvements and sink is None:
        sink = sys.stderr

    total = iteration_count(params.schedule)
    heat_step = float(params.schedule.heat_step)
    state = CutState.init_all_one(graph)
    side, gain = state.side, state.gain
    best_side = side.copy()
    counters = np.zeros(3, dtype=np.int64)
    trace_iter = np.empty(TRACE_CAPACITY, dtype=np.int64)
    trace_obj = np.empty(TRACE_CAPACITY, dtype=np.int64)
    trace = []

    t0 = time.monotonic()
    deadline = None if params.time_limit is None else t0 + params.time_limit
    i = 0
    completed = True
    while i < total:
        if (cancel is not None and cancel.is_set()) or (
            deadline is not None and time.monotonic() >= deadline
        ):
            completed = False
            break
        stop = min(i + CHUNK_ITERATIONS, total)
        i, nt = _anneal_chunk(
            graph.indptr, graph.neighbors, graph.weights, side, gain, best_side,
            counters, rng.state, i, stop, heat_step, trace_iter, trace_obj,
        )
        i = int(i)
        if nt:
            fresh = list(zip(trace_iter[:nt].tolist(), trace_obj[:nt].tolist()))
            trace.extend(fresh)
            if params.report_improvements:
                sink.write("".join(f"{it} {obj}\n" for it, obj in fresh))
    wall = time.monotonic() - t0
    if not completed:
        logger.info("anneal stopped after %d of %d iterations", i, total)

    return RunResult(
        best_objective=int(counters[1]),
        best_assignment=best_side,
        iterations_executed=i,
        accepted_moves=int(counters[2]),
        improvement_trace=trace,
        wall_time=wall,
        completed=completed,
        seed=rng.seed,
        schedule=params.schedule,
    )


def format_trace(trace) -> str:
    return "".join(f"{it} {obj}\n" for it, obj in trace)


def write_trace(trace, sink) -> str:
    text = format_trace(trace)
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        with open(sink, "w") as fh:
            fh.write(text)
    return text
