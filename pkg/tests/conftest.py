import random

import pytest

from graphon_algebra import QuantumGraph, standard_graph, step_kernel


@pytest.fixture
def rng():
    return random.Random(20261016)


@pytest.fixture
def G():
    """Standard graphs as single-term quantum graphs."""

    class _G:
        def __getattr__(self, name):
            return QuantumGraph.of(standard_graph(name))

    return _G()


@pytest.fixture
def half():
    return step_kernel([["1/2"]])


@pytest.fixture
def zero_kernel():
    return step_kernel([[0]])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
