import numpy as np
import pytest

from mwvc_sim.central import ThresholdPolicy, run_centralized
from mwvc_sim.central.solver import init_edge_weights
from mwvc_sim.graph import GenSpec, WeightDist, generate
from mwvc_sim.mpc import MachineMemoryLedger, MpcConfig, MpcState, run_phase


def _gnp(n, degree, seed, weights="uniform:1:4"):
    return generate(
        GenSpec(model="gnp", num_vertices=n, target_avg_degree=degree, weight_dist=WeightDist.parse(weights), seed=seed)
    )


@pytest.mark.parametrize("mode", ["fixed-midpoint", "uniform-random"])
@pytest.mark.parametrize("seed", range(3))
def test_central_loads_never_decrease(mode, seed):
    graph = _gnp(300, 20, seed)
    policy = ThresholdPolicy(mode=mode, epsilon=0.1, seed=seed)
    result = run_centralized(graph, epsilon=0.1, policy=policy, record_trace=True)
    loads = np.stack([snap.loads for snap in result.trace])
    assert np.all(np.diff(loads, axis=0) >= -1e-12 * loads[1:])

    start = init_edge_weights(graph, graph.weights, graph.degrees)
    assert np.all(result.x >= start)


def test_central_frozen_vertices_stay_frozen():
    graph = _gnp(300, 20, 5, weights="exponential:2")
    result = run_centralized(graph, epsilon=0.05, record_trace=True)
    seen = set()
    for snap in result.trace:
        newly = set(snap.newly_frozen)
        assert not newly & seen
        assert all(result.freeze_iteration[v] == snap.t for v in newly)
        seen |= newly
    assert seen == set(result.cover)


def test_mpc_freezes_and_final_weights_are_permanent():
    graph = _gnp(1200, 64, 9, weights="uniform:1:2")
    config = MpcConfig.from_preset(epsilon=0.1, seed=9)
    state = MpcState.initial(graph)
    ledger = MachineMemoryLedger(graph.num_vertices, enforce=False)
    stop = config.resolved_stop_degree(graph.num_vertices)

    phases = 0
    while state.residual_average_degree() > stop and phases < config.phase_cap:
        frozen = state.vertex_frozen.copy()
        freeze_phase = state.freeze_phase.copy()
        edge_frozen = state.edge_frozen.copy()
        x_final = state.x_final.copy()
        degree = state.residual_degree.copy()

        run_phase(state, graph, config, ledger)
        phases += 1

        assert np.all(state.vertex_frozen[frozen])
        assert np.array_equal(state.freeze_phase[frozen], freeze_phase[frozen])
        assert np.all(state.freeze_phase[state.vertex_frozen & ~frozen] == phases - 1)
        assert np.all(state.edge_frozen[edge_frozen])
        assert np.array_equal(state.x_final[edge_frozen], x_final[edge_frozen])
        assert np.all(state.residual_degree <= degree)

    assert phases >= 1
