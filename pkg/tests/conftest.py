import os
from pathlib import Path

import numpy as np
import pytest

from annealcut.graph import Graph

ACCEPTANCE_LINES = []


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False,
        help="run the slow paper-reproduction suite (needs ANNEALCUT_INSTANCES)",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="slow reproduction run; use --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
    if not config.getoption("--runslow"):
        for number in (6, 7):
            terminalreporter.write_line(
                f"[NOT RUN] criterion {number}: slow reproduction run (--runslow, ANNEALCUT_INSTANCES)"
            )


@pytest.fixture
def acceptance_report():
    def report(number, title, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        if passed is None:
            status = "INFO"
        line = f"[{status}] criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        ACCEPTANCE_LINES.append(line)
        print(line)
    return report


@pytest.fixture(scope="session")
def instance_dir():
    """Directory holding benchmark instance files, from ANNEALCUT_INSTANCES."""
    value = os.environ.get("ANNEALCUT_INSTANCES")
    return Path(value) if value else None


def random_graph(rng, n, p=0.3, wmin=-10, wmax=10, parallel=0):
    """Erdos-Renyi graph with integer weights and ``parallel`` duplicated edges."""
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    u, v = iu[keep], ju[keep]
    w = rng.integers(wmin, wmax + 1, size=len(u))
    edges = np.column_stack([u, v, w])
    if parallel and len(edges):
        extra = edges[rng.integers(0, len(edges), size=parallel)].copy()
        extra[:, 2] = rng.integers(wmin, wmax + 1, size=parallel)
        edges = np.vstack([edges, extra])
    return Graph.from_edges(n, edges)


def path_graph(weights=(1, 1)):
    return Graph.from_edges(len(weights) + 1, [(i, i + 1, w) for i, w in enumerate(weights)])


def complete_graph(n, w=1):
    return Graph.from_edges(n, [(i, j, w) for i in range(n) for j in range(i + 1, n)])
