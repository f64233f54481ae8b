import numpy as np
import pytest

from mixclock import BipartiteGraph, Trace, gen_nonuniform, gen_uniform
from mixclock.trace import sample_trace

# Small thread-object graph: threads t1..t4, objects o1..o4
EXAMPLE_EDGES = [(1, 2), (1, 3), (2, 1), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (4, 3)]

# A computation over EXAMPLE_EDGES.  Ids are 1-based, so thread 0 and
# object 0 are declared but never used.  The first three events are the worked timestamping example.
EXAMPLE_PAIRS = [(2, 1), (2, 3), (3, 3), (1, 2), (1, 3), (3, 2), (2, 4), (4, 2), (4, 3)]


@pytest.fixture
def example_graph():
    return BipartiteGraph.from_edges(EXAMPLE_EDGES)


@pytest.fixture
def example_trace():
    return Trace.from_pairs(EXAMPLE_PAIRS, 5, 5)


def random_small_graph(rng, max_side=6):
    n = int(rng.integers(1, max_side + 1))
    m = int(rng.integers(1, max_side + 1))
    p = float(rng.random())
    seed = int(rng.integers(2 ** 32))
    return gen_uniform(n, m, p, seed)


def random_suite_trace(rng, max_side=10, max_events=60):
    """Mixed uniform/nonuniform trace with repeated interactions."""
    n = int(rng.integers(1, max_side + 1))
    m = int(rng.integers(1, max_side + 1))
    density = float(rng.uniform(0.1, 0.9))
    seed = int(rng.integers(2 ** 32))
    if rng.random() < 0.5 or n < 2 or m < 2:
        g = gen_uniform(n, m, density, seed)
    else:
        g = gen_nonuniform(n, m, density, 0.2, 4.0, seed)
    return sample_trace(g, int(rng.integers(1, max_events + 1)), [seed, 7])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


_criteria = []


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        _criteria.append((props["criterion"], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in _criteria:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {label}")
