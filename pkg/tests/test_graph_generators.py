import numpy as np
import pytest

from mwvc_sim.graph import GenSpec, WeightDist, generate
from mwvc_sim.utils.exceptions import GenSpecError


def test_star_structure():
    graph = generate(GenSpec(model="star", num_vertices=5, center_weight=3.0, leaf_weight=1.0))
    assert graph.num_edges == 4
    assert graph.degrees[0] == 4
    assert graph.weights.tolist() == [3.0, 1.0, 1.0, 1.0, 1.0]


def test_path_and_triangle():
    path = generate(GenSpec(model="path", num_vertices=4))
    assert path.edge_list() == [(0, 1), (1, 2), (2, 3)]
    triangle = generate(GenSpec(model="triangle", num_vertices=3))
    assert triangle.num_edges == 3


def test_gnp_is_deterministic():
    spec = GenSpec(
        model="gnp",
        num_vertices=1000,
        target_avg_degree=32,
        weight_dist=WeightDist.parse("uniform:1:2"),
        seed=7,
    )
    first, second = generate(spec), generate(spec)
    assert np.array_equal(first.edges, second.edges)
    assert np.array_equal(first.weights, second.weights)
    assert first == second


def test_gnp_seeds_differ():
    a = generate(GenSpec(model="gnp", num_vertices=200, target_avg_degree=8, seed=1))
    b = generate(GenSpec(model="gnp", num_vertices=200, target_avg_degree=8, seed=2))
    assert a != b


def test_gnp_average_degree_concentrates():
    for seed in range(20):
        graph = generate(GenSpec(model="gnp", num_vertices=1000, target_avg_degree=32, seed=seed))
        assert abs(graph.average_degree - 32) <= 0.15 * 32


def test_power_law_is_deterministic_and_skewed():
    spec = GenSpec(model="power-law", num_vertices=2000, target_avg_degree=16, seed=5)
    graph = generate(spec)
    assert graph == generate(spec)
    assert graph.max_degree > 4 * graph.average_degree


def test_weight_distributions():
    uniform = generate(
        GenSpec(model="gnp", num_vertices=500, target_avg_degree=4, weight_dist=WeightDist.parse("uniform:1:2"))
    )
    assert uniform.weights.min() >= 1.0 and uniform.weights.max() <= 2.0
    exponential = generate(
        GenSpec(model="gnp", num_vertices=500, target_avg_degree=4, weight_dist=WeightDist.parse("exponential:3"))
    )
    assert exponential.weights.min() > 0.0
    degree = generate(
        GenSpec(model="star", num_vertices=6, weight_dist=WeightDist.parse("degree:2"))
    )
    assert degree.weights.tolist() == [10.0, 2.0, 2.0, 2.0, 2.0, 2.0]


def test_weights_do_not_depend_on_structure_stream():
    sparse = generate(GenSpec(model="gnp", num_vertices=100, target_avg_degree=2, seed=9))
    dense = generate(GenSpec(model="gnp", num_vertices=100, target_avg_degree=20, seed=9))
    assert np.array_equal(sparse.weights, dense.weights)


@pytest.mark.parametrize(
    "spec, field",
    [
        (GenSpec(model="triangle", num_vertices=4), "num_vertices"),
        (GenSpec(model="gnp", num_vertices=10), "target_avg_degree"),
        (GenSpec(model="gnp", num_vertices=10, target_avg_degree=10), "target_avg_degree"),
        (GenSpec(model="path", num_vertices=3, weight_dist=WeightDist(kind="uniform", lo=2, hi=1)), "weight_dist"),
        (GenSpec(model="star", num_vertices=3, center_weight=-1.0), "center_weight"),
    ],
)
def test_bad_spec_names_field(spec, field):
    with pytest.raises(GenSpecError) as excinfo:
        generate(spec)
    assert excinfo.value.field == field


def test_unparseable_weights():
    with pytest.raises(GenSpecError):
        WeightDist.parse("normal:1:2")
