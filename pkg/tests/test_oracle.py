import numpy as np
import pytest

from mwvc_sim.central import run_centralized
from mwvc_sim.graph import GenSpec, WeightDist, WeightedGraph, generate
from mwvc_sim.mpc import MpcConfig, MpcResult, SaturationCertificate, run_mpc
from mwvc_sim.oracle import (
    approximation_bound,
    brute_force_mwvc,
    exact_mwvc,
    matching_value,
    ratio_report,
    validate_cover,
    validate_fractional_matching,
)
from mwvc_sim.utils.exceptions import InvalidInputError, OracleCapExceededError


def test_exact_single_edge(graph_factory):
    result = exact_mwvc(graph_factory(2, [(0, 1)], [2.0, 3.0]))
    assert result.opt_cover == (0,)
    assert result.opt_weight == 2.0


def test_exact_unit_triangle(graph_factory):
    result = exact_mwvc(graph_factory(3, [(0, 1), (0, 2), (1, 2)]))
    assert result.opt_weight == 2.0
    assert len(result.opt_cover) == 2


def test_exact_star_prefers_center(star5):
    result = exact_mwvc(star5)
    assert result.opt_cover == (0,)
    assert result.opt_weight == 3.0


def test_exact_empty_graph():
    result = exact_mwvc(WeightedGraph.from_edges(0, [], []))
    assert result.opt_cover == ()
    assert result.opt_weight == 0.0


@pytest.mark.parametrize("seed", range(8))
def test_exact_matches_brute_force(seed):
    graph = generate(
        GenSpec(
            model="gnp",
            num_vertices=14,
            target_avg_degree=4,
            weight_dist=WeightDist.parse("uniform:1:10"),
            seed=seed,
        )
    )
    exact = exact_mwvc(graph)
    brute = brute_force_mwvc(graph)
    assert exact.opt_weight == pytest.approx(brute.opt_weight)
    assert validate_cover(graph, exact.opt_cover).valid


def test_exact_node_cap(graph_factory):
    path = graph_factory(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    with pytest.raises(OracleCapExceededError, match="instance too large for oracle"):
        exact_mwvc(path, node_cap=1)


def test_brute_force_size_limit():
    graph = WeightedGraph.from_edges(25, [], [1.0] * 25)
    with pytest.raises(InvalidInputError):
        brute_force_mwvc(graph)


def test_validate_cover_cases(single_edge, graph_factory):
    assert validate_cover(WeightedGraph.from_edges(0, [], []), []).valid
    check = validate_cover(single_edge, [])
    assert not check
    assert check.witness == (0, 1)
    triangle = graph_factory(3, [(0, 1), (0, 2), (1, 2)])
    assert validate_cover(triangle, [0, 2]).valid
    with pytest.raises(InvalidInputError):
        validate_cover(triangle, [3])


def test_zero_matching_is_feasible(triangle_369):
    report = validate_fractional_matching(triangle_369, np.zeros(3))
    assert report.feasible
    assert report.worst_slack == 3.0


def test_init_matching_is_tight_at_first_vertex(triangle_369):
    report = validate_fractional_matching(triangle_369, np.array([1.5, 1.5, 3.0]))
    assert report.feasible
    assert report.worst_vertex == 0
    assert report.worst_slack == pytest.approx(0.0)


def test_overloaded_edge_is_infeasible(single_edge):
    report = validate_fractional_matching(single_edge, np.array([1.5]), slack_factor=1.0)
    assert not report.feasible
    assert report.worst_slack == pytest.approx(-0.5)
    relaxed = validate_fractional_matching(single_edge, np.array([1.5]), slack_factor=1.6)
    assert relaxed.feasible


def test_matching_input_checks(single_edge):
    with pytest.raises(InvalidInputError):
        validate_fractional_matching(single_edge, np.array([1.0, 2.0]))
    with pytest.raises(InvalidInputError):
        validate_fractional_matching(single_edge, np.array([-0.1]))


def test_bounds():
    assert approximation_bound("central", 0.1) == pytest.approx(3.0)
    assert approximation_bound("mpc", 0.1) == pytest.approx(5.0)


def test_ratio_on_empty_graph_is_vacuous():
    result = run_centralized(WeightedGraph.from_edges(0, [], []))
    report = ratio_report(result)
    assert report.certified_by == "vacuous"
    assert report.passed is True
    assert report.ratio_vs_matching is None


def test_ratio_single_edge_against_opt(single_edge):
    result = run_centralized(single_edge, epsilon=0.1)
    report = ratio_report(result, exact_mwvc(single_edge))
    assert report.ratio_vs_opt == pytest.approx(2.0)
    assert report.bound == pytest.approx(3.0)
    assert report.certified_by == "opt"
    assert report.passed is True


def test_weak_duality_ordering():
    graph = generate(
        GenSpec(model="gnp", num_vertices=30, target_avg_degree=6, weight_dist=WeightDist.parse("uniform:1:3"), seed=2)
    )
    result = run_centralized(graph, epsilon=0.1)
    exact = exact_mwvc(graph)
    assert matching_value(result.x) <= exact.opt_weight + 1e-9
    report = ratio_report(result, exact)
    assert report.ratio_vs_opt <= report.ratio_vs_matching + 1e-12
    assert report.passed


def test_ratio_flags_zero_matching_with_cover(star5):
    # the center freezes on its bias alone; the leaf edges are zeroed
    result = run_mpc(star5, MpcConfig.from_preset(stop_degree=1.0))
    assert result.cover == (0,)
    report = ratio_report(result)
    assert report.algorithm == "mpc"
    assert report.passed is False
    assert report.anomaly is not None


def _overloaded_mpc_result():
    # x loads vertex 0 and 1 at (1 + 6 eps) w; vertex 2 joins the cover unpaid
    config = MpcConfig.from_preset(epsilon=0.01)
    return MpcResult(
        cover=(0, 1, 2),
        cover_weight=2.4,
        matching_value=1.06,
        phases=0,
        mpc_rounds=1,
        phase_records=[],
        certificate=SaturationCertificate(epsilon=0.01, cover_size=3),
        x=np.array([1.06, 0.0]),
        config=config,
    )


def test_overloaded_matching_is_scaled_before_certifying(graph_factory):
    graph = graph_factory(3, [(0, 1), (1, 2)], [1.0, 1.0, 0.4])
    result = _overloaded_mpc_result()
    assert result.cover_weight / result.matching_value <= approximation_bound("mpc", 0.01)

    report = ratio_report(result, graph=graph)
    assert report.dual_scale == pytest.approx(1.06)
    assert report.ratio_vs_matching == pytest.approx(2.4)
    assert report.passed is None
    assert report.certified_by is None

    exact = exact_mwvc(graph)
    assert exact.opt_weight == 1.0
    assert ratio_report(result, exact, graph=graph).passed is False


def test_mpc_scale_falls_back_to_overload_bound():
    report = ratio_report(_overloaded_mpc_result())
    assert report.dual_scale == pytest.approx(1.06)
    assert report.passed is None


def test_central_matching_is_not_rescaled(triangle_369):
    result = run_centralized(triangle_369, epsilon=0.1)
    report = ratio_report(result, graph=triangle_369)
    assert report.dual_scale == pytest.approx(1.0)
    assert report.ratio_vs_matching == pytest.approx(result.cover_weight / result.matching_value)
