"""Simulated annealing for weighted maximum cut."""

from .annealer import (
    AnnealParams,
    LinearSchedule,
    RunResult,
    acceptance_probability,
    anneal,
    iteration_count,
)
from .cutstate import CutState, init_all_one, recompute
from .estimator import MaxCutAnnealer, check_graph
from .graph import (
    Graph,
    GraphFormatError,
    cut_value,
    parse_assignment,
    parse_graph,
    read_graph,
    write_assignment,
    write_graph,
)
from .harness import (
    BenchmarkRecord,
    KnownBestTable,
    emit_csv,
    fetch_instances,
    load_known_best,
    run_instance,
    run_suite,
)
from .oracle import ExactResult, brute_force_maxcut
from .rng import Xoshiro256

__all__ = [
    "AnnealParams", "BenchmarkRecord", "CutState", "ExactResult", "Graph",
    "GraphFormatError", "KnownBestTable", "LinearSchedule", "MaxCutAnnealer",
    "RunResult", "Xoshiro256", "acceptance_probability", "anneal",
    "brute_force_maxcut", "check_graph", "cut_value", "emit_csv",
    "fetch_instances", "init_all_one", "iteration_count", "load_known_best",
    "parse_assignment", "parse_graph", "read_graph", "recompute",
    "run_instance", "run_suite", "write_assignment", "write_graph",
]

__version__ = "0.1.0"
