import numpy as np
import pytest

from mwvc_sim.central import (
    ThresholdPolicy,
    init_edge_weights,
    iteration_guard,
    run_centralized,
    solve_residual,
    vertex_loads,
)
from mwvc_sim.graph import GenSpec, WeightDist, WeightedGraph, generate
from mwvc_sim.utils.exceptions import InvalidInputError


def test_init_single_edge(single_edge):
    x = init_edge_weights(single_edge, single_edge.weights, single_edge.degrees)
    assert x.tolist() == [1.0]


def test_init_star_saturates_center(graph_factory):
    star = graph_factory(5, [(0, 1), (0, 2), (0, 3), (0, 4)], [4.0, 1.0, 1.0, 1.0, 1.0])
    x = init_edge_weights(star, star.weights, star.degrees)
    assert x.tolist() == [1.0] * 4
    assert vertex_loads(star.edges, x, 5)[0] == 4.0


def test_init_triangle(triangle_369):
    x = init_edge_weights(triangle_369, triangle_369.weights, triangle_369.degrees)
    assert x.tolist() == [1.5, 1.5, 3.0]
    assert vertex_loads(triangle_369.edges, x, 3)[0] == 3.0


def test_init_rejects_zero_degree(single_edge):
    with pytest.raises(InvalidInputError):
        init_edge_weights(single_edge, single_edge.weights, np.array([1, 0]))


def test_empty_graph():
    result = run_centralized(WeightedGraph.from_edges(0, [], []))
    assert result.cover == ()
    assert result.cover_weight == 0.0
    assert result.iterations == 0


def test_single_edge_unit_weights(single_edge):
    result = run_centralized(single_edge, epsilon=0.1)
    assert result.cover == (0, 1)
    assert result.cover_weight == 2.0
    assert result.matching_value == 1.0
    assert result.freeze_iteration.tolist() == [0, 0]
    assert result.ratio_vs_matching == 2.0


def test_single_edge_heavy_endpoint(graph_factory):
    graph = graph_factory(2, [(0, 1)], [10.0, 1.0])
    result = run_centralized(graph, epsilon=0.1)
    assert result.cover == (1,)
    assert result.cover_weight == 1.0


def test_triangle_cover(triangle_369):
    result = run_centralized(triangle_369, epsilon=0.1, record_trace=True)
    assert result.cover == (0, 1)
    assert result.matching_value == pytest.approx(6.0)
    assert result.trace[0].newly_frozen == (0, 1)
    assert result.trace[0].max_load_ratio == pytest.approx(1.0)


def test_epsilon_out_of_range(single_edge):
    with pytest.raises(InvalidInputError):
        run_centralized(single_edge, epsilon=0.5)


def test_max_iters_below_guard(triangle_369):
    with pytest.raises(InvalidInputError):
        run_centralized(triangle_369, epsilon=0.1, max_iters=0)


def test_iteration_guard():
    assert iteration_guard(1, 0.1) == 1
    assert iteration_guard(100, 0.1) == 45


@pytest.mark.parametrize("mode", ["fixed-midpoint", "uniform-random"])
def test_run_on_random_graph_is_valid_and_feasible(mode):
    graph = generate(
        GenSpec(model="gnp", num_vertices=400, target_avg_degree=12, weight_dist=WeightDist.parse("uniform:1:5"), seed=11)
    )
    result = run_centralized(graph, epsilon=0.1, policy=ThresholdPolicy(mode=mode, epsilon=0.1, seed=4))
    cover = np.zeros(graph.num_vertices, dtype=bool)
    cover[list(result.cover)] = True
    assert np.all(cover[graph.edges[:, 0]] | cover[graph.edges[:, 1]])
    loads = vertex_loads(graph.edges, result.x, graph.num_vertices)
    assert np.all(loads <= graph.weights * (1 + 1e-9))
    assert result.iterations <= iteration_guard(graph.max_degree, 0.1)
    # every cover vertex froze with load at least (1-4eps) w(v)
    assert result.cover_weight <= 2 * result.matching_value / (1 - 4 * 0.1) + 1e-9


def test_random_thresholds_stay_in_range():
    policy = ThresholdPolicy(mode="uniform-random", epsilon=0.1, seed=3)
    draws = policy.thresholds(1000, t=5)
    assert draws.min() >= 0.6 and draws.max() <= 0.8
    assert policy.threshold_for(17, 5) == draws[17]
    assert np.array_equal(policy.thresholds(1000, t=5), draws)


def test_subgraph_thresholds_follow_original_ids():
    policy = ThresholdPolicy(mode="uniform-random", epsilon=0.1, seed=3)
    full = policy.thresholds(10, t=2)
    keys = np.array([2, 5, 9])
    assert np.array_equal(policy.thresholds(3, t=2, vertex_keys=keys), full[keys])


def test_solve_residual_maps_ids(graph_factory):
    graph = graph_factory(4, [(0, 1), (1, 2), (2, 3)])
    keep = np.array([False, True, True, True])
    result, vertex_ids, edge_ids = solve_residual(graph, np.array([1.0, 1.0, 1.0, 1.0]), keep, 0.1)
    assert vertex_ids.tolist() == [1, 2, 3]
    assert edge_ids.tolist() == [1, 2]
    assert len(result.x) == 2
