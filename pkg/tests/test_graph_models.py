import io

import numpy as np
import pytest

from mwvc_sim.graph import WeightedGraph, load_graph, save_graph
from mwvc_sim.utils.exceptions import GraphFormatError, InvalidInputError


def test_from_edges_normalizes_order():
    graph = WeightedGraph.from_edges(3, [(2, 1), (1, 0)], [1.0, 2.0, 3.0])
    assert graph.edge_list() == [(0, 1), (1, 2)]
    assert graph.degrees.tolist() == [1, 2, 1]
    assert graph.neighbors(1) == [(0, 0), (2, 1)]
    assert graph.max_degree == 2
    assert graph.average_degree == pytest.approx(4 / 3)


@pytest.mark.parametrize(
    "edges, weights, message",
    [
        ([(0, 0)], [1.0, 1.0], "self-loop"),
        ([(0, 1), (1, 0)], [1.0, 1.0], "duplicate edge"),
        ([(0, 2)], [1.0, 1.0], "outside"),
        ([(0, 1)], [1.0, 0.0], "weight of vertex 1"),
        ([(0, 1)], [1.0, float("nan")], "weight of vertex 1"),
    ],
)
def test_from_edges_rejects_bad_input(edges, weights, message):
    with pytest.raises(InvalidInputError, match=message):
        WeightedGraph.from_edges(2, edges, weights)


def test_graph_is_immutable(single_edge):
    with pytest.raises(ValueError):
        single_edge.weights[0] = 5.0


def test_induced_subgraph_keeps_edge_order():
    graph = WeightedGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)], [1.0, 2.0, 3.0, 4.0])
    keep = np.array([False, True, True, True])
    sub, vertex_ids, edge_ids = graph.induced_subgraph(keep, weights=np.array([9.0, 8.0, 7.0, 6.0]))
    assert vertex_ids.tolist() == [1, 2, 3]
    assert edge_ids.tolist() == [2, 3]
    assert sub.edge_list() == [(0, 1), (1, 2)]
    assert sub.weights.tolist() == [8.0, 7.0, 6.0]


def test_load_single_edge():
    graph = load_graph(io.StringIO("# tiny\np 2 1\nv 0 1.0\nv 1 1.0\ne 0 1\n"))
    assert graph.num_vertices == 2
    assert graph.edge_list() == [(0, 1)]
    assert graph.weights.tolist() == [1.0, 1.0]


def test_load_remaps_arbitrary_ids():
    graph = load_graph(io.StringIO("p 3 2\nv a 1\nv b 2\nv c 3\ne c b\ne a b\n"))
    assert graph.original_ids == ("a", "b", "c")
    assert graph.edge_list() == [(0, 1), (1, 2)]


def test_second_save_is_byte_identical():
    graph = WeightedGraph.from_edges(4, [(0, 1), (2, 3), (1, 3)], [0.1, 1.0 / 3.0, 2.5, 7.0])
    first = io.StringIO()
    save_graph(graph, first)
    second = io.StringIO()
    save_graph(load_graph(io.StringIO(first.getvalue())), second)
    assert first.getvalue() == second.getvalue()


@pytest.mark.parametrize(
    "text, message, line",
    [
        ("p 4 1\nv 0 1\nv 1 1\nv 2 1\nv 3 1\ne 3 3\n", "self-loop", 6),
        ("p 2 1\nv 0 1\nv 1 1\ne 0 9\n", "dangling vertex id 9", 4),
        ("p 2 2\nv 0 1\nv 1 1\ne 0 1\ne 1 0\n", "duplicate edge", 5),
        ("p 2 1\nv 0 1\nv 1 -2\ne 0 1\n", "weight must be positive", 3),
        ("v 0 1\n", "missing header", 1),
        ("p 3 0\nv 0 1\nv 1 1\n", "header declares 3 vertices", 1),
        ("p 2 1\nv 0 1\nv 1 1\nx 0 1\n", "unknown line type", 4),
    ],
)
def test_load_reports_line(text, message, line):
    with pytest.raises(GraphFormatError, match=message) as excinfo:
        load_graph(io.StringIO(text))
    assert excinfo.value.line == line
    assert f"at line {line}" in str(excinfo.value)
