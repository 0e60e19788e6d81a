from __future__ import annotations

import pytest

from mwvc_sim.config import reload_settings
from mwvc_sim.graph import WeightedGraph


def make_graph(n, edges, weights=None):
    return WeightedGraph.from_edges(n, edges, weights if weights is not None else [1.0] * n)


@pytest.fixture
def single_edge():
    return make_graph(2, [(0, 1)])


@pytest.fixture
def triangle_369():
    return make_graph(3, [(0, 1), (0, 2), (1, 2)], [3.0, 6.0, 9.0])


@pytest.fixture
def four_cycle():
    return make_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


@pytest.fixture
def star5():
    return make_graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)], [3.0, 1.0, 1.0, 1.0, 1.0])


@pytest.fixture
def fresh_settings(monkeypatch):
    """Yield a setter for MWVC_* variables; settings are rebuilt afterwards."""

    def apply(**env):
        for key, value in env.items():
            monkeypatch.setenv(key, str(value))
        return reload_settings()

    yield apply
    monkeypatch.undo()
    reload_settings()


@pytest.fixture
def graph_factory():
    return make_graph
