import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from magicdist import graph as gr
from magicdist.search import census_dm_graphs

CENSUS_ORDERS = range(1, 8)


CENSUS_SECONDS: dict[int, float] = {}


@pytest.fixture(scope="session")
def census():
    """Distance magic graphs of every order up to 7, keyed by order.

    Wall-clock time per order is kept in CENSUS_SECONDS for the runtime checks.
    """
    out = {}
    for n in CENSUS_ORDERS:
        start = time.perf_counter()
        out[n] = census_dm_graphs(n)
        CENSUS_SECONDS[n] = time.perf_counter() - start
    return out


@pytest.fixture(scope="session")
def census_graphs(census):
    return [(rec, rec.graph()) for n in CENSUS_ORDERS for rec in census[n]]


def random_graph(rng: random.Random, n: int, density: float | None = None):
    density = rng.random() if density is None else density
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < density]
    return gr.from_edge_list(n, edges)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
