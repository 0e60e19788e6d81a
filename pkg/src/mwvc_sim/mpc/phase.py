"""Single-phase operations of the MPC simulation.

A phase splits the nonfrozen vertices into ``V^high`` (residual degree at
least ``d^alpha``) and ``V^inactive``, partitions ``V^high`` at random over
``m = floor(sqrt(d))`` machines, and lets each machine run ``I`` iterations of
the primal-dual process on its induced subgraph with a biased load estimate.
Machines only read their own subgraph plus per-phase constants, so
:func:`local_simulate` is a pure function and can run on any worker.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from mwvc_sim.central.solver import vertex_loads
from mwvc_sim.graph.models import WeightedGraph
from mwvc_sim.mpc.models import MachineSubgraph, MpcConfig, MpcState, VertexClass
from mwvc_sim.utils.exceptions import InvalidInputError, InvariantViolationError
from mwvc_sim.utils.rng import Stream, integers_per_vertex, uniform_per_vertex


@dataclass(frozen=True)
class PostPhaseSummary:
    frozen_local: int
    frozen_saturated: int
    zeroed_cross_edges: int
    newly_frozen: np.ndarray


def select_high(state: MpcState, alpha: float) -> Tuple[np.ndarray, np.ndarray]:
    """Boolean masks (V^high, V^inactive) over all vertices."""
    if not 0.0 < alpha <= 1.0:
        raise InvalidInputError(f"alpha must lie in (0, 1], got {alpha}")
    alive = ~state.vertex_frozen
    d = state.residual_average_degree()
    high = alive & (state.residual_degree >= d**alpha)
    # a vertex with no nonfrozen neighbor has nothing to do this phase
    high &= state.residual_degree > 0
    inactive = alive & ~high
    return high, inactive


def compute_residual_weights(state: MpcState, graph: WeightedGraph, mask: np.ndarray) -> np.ndarray:
    """w'(v) = w(v) minus the finalized weight of frozen edges at v.

    Computed for every vertex; raises if any vertex in ``mask`` would be left
    with nonpositive residual weight.
    """
    n = graph.num_vertices
    frozen_edges = state.edge_frozen
    x = np.nan_to_num(state.x_final[frozen_edges], nan=0.0)
    residual = graph.weights - vertex_loads(graph.edges[frozen_edges], x, n)
    bad = np.asarray(mask, dtype=bool) & (residual <= 0.0)
    if bad.any():
        v = int(np.flatnonzero(bad)[0])
        raise InvariantViolationError(
            "residual-positive",
            f"vertex {v} has residual weight {residual[v]} <= 0",
            witness=v,
        )
    return residual


def partition_vertices(high: np.ndarray, m: int, seed: int, phase: int) -> np.ndarray:
    """Machine id per vertex (uniform over 0..m-1), -1 outside V^high.

    Keyed by (seed, phase) and indexed by vertex id, so the assignment does
    not depend on worker count or iteration order.
    """
    if m < 1:
        raise InvalidInputError("m must be >= 1")
    n = high.shape[0]
    draws = integers_per_vertex(seed, Stream.PARTITION, n, m, phase)
    return np.where(high, draws, -1)


def high_edges(graph: WeightedGraph, high: np.ndarray) -> np.ndarray:
    """Ids of edges of E[V^high]."""
    if graph.num_edges == 0:
        return np.zeros(0, dtype=np.int64)
    return np.flatnonzero(high[graph.edges[:, 0]] & high[graph.edges[:, 1]])


def initial_high_weights(
    graph: WeightedGraph, edge_ids: np.ndarray, residual: np.ndarray, degree: np.ndarray
) -> np.ndarray:
    """x0 = min(w'(u)/d(u), w'(v)/d(v)) on E[V^high], with residual degrees."""
    if edge_ids.size == 0:
        return np.zeros(0, dtype=np.float64)
    ends = graph.edges[edge_ids]
    ratio = np.zeros(graph.num_vertices, dtype=np.float64)
    touched = np.unique(ends)
    ratio[touched] = residual[touched] / degree[touched]
    return np.minimum(ratio[ends[:, 0]], ratio[ends[:, 1]])


def build_machine_subgraphs(
    graph: WeightedGraph,
    machine_of: np.ndarray,
    m: int,
    edge_ids: np.ndarray,
    x0: np.ndarray,
    residual: np.ndarray,
) -> List[MachineSubgraph]:
    """Group the E[V^high] edges whose endpoints share a machine.

    ``x0`` is indexed like ``edge_ids``.
    """
    ends = graph.edges[edge_ids]
    mu = machine_of[ends[:, 0]] if edge_ids.size else np.zeros(0, dtype=np.int64)
    mv = machine_of[ends[:, 1]] if edge_ids.size else np.zeros(0, dtype=np.int64)
    local = mu == mv
    local_pos = np.flatnonzero(local)
    local_machine = mu[local_pos]
    order = np.argsort(local_machine, kind="stable")
    local_pos = local_pos[order]
    bounds = np.searchsorted(local_machine[order], np.arange(m + 1))

    vertex_order = np.argsort(machine_of, kind="stable")
    sorted_machines = machine_of[vertex_order]
    vbounds = np.searchsorted(sorted_machines, np.arange(m + 1))

    # position of each vertex inside its machine
    assigned = sorted_machines >= 0
    local_index = np.full(machine_of.shape[0], -1, dtype=np.int64)
    local_index[vertex_order[assigned]] = (
        np.flatnonzero(assigned) - vbounds[sorted_machines[assigned]]
    )

    subgraphs: List[MachineSubgraph] = []
    for i in range(m):
        vids = vertex_order[vbounds[i] : vbounds[i + 1]]
        pos = local_pos[bounds[i] : bounds[i + 1]]
        loc = local_index[ends[pos]].reshape(-1, 2)
        subgraphs.append(
            MachineSubgraph(
                machine=i,
                vertex_ids=vids,
                edge_ids=edge_ids[pos],
                local_edges=loc,
                x0=x0[pos],
                residual_weight=residual[vids],
            )
        )
    return subgraphs


def phase_thresholds(config: MpcConfig, n: int, phase: int, iterations: int) -> np.ndarray:
    """(I, n) array of T_{v,t} drawn uniformly in [1-4eps, 1-2eps]."""
    low, high = 1.0 - 4.0 * config.epsilon, 1.0 - 2.0 * config.epsilon
    out = np.empty((iterations, n), dtype=np.float64)
    for t in range(iterations):
        out[t] = uniform_per_vertex(config.seed, Stream.MPC_THRESHOLD, n, low, high, phase, t)
    return out


def local_simulate(
    sub: MachineSubgraph,
    iterations: int,
    epsilon: float,
    m: int,
    config: MpcConfig,
    thresholds: np.ndarray,
) -> np.ndarray:
    """Run I local iterations on one machine.

    The load estimate of vertex v at iteration t is
    ``bias(t, m) * w'(v) + m * (sum of local x_e at v)``. Returns the local
    freeze iteration of each machine vertex, -1 if it never froze.
    """
    k = sub.num_vertices
    freeze_iter = np.full(k, -1, dtype=np.int64)
    if k == 0:
        return freeze_iter
    x = sub.x0.astype(np.float64).copy()
    lu, lv = sub.local_edges[:, 0], sub.local_edges[:, 1]
    w = sub.residual_weight
    frozen = np.zeros(k, dtype=bool)
    growth = 1.0 / (1.0 - epsilon)
    for t in range(iterations):
        local_load = np.bincount(lu, weights=x, minlength=k) + np.bincount(lv, weights=x, minlength=k)
        estimate = config.bias_factor(t, m) * w + m * local_load
        newly = ~frozen & (estimate >= thresholds[t, sub.vertex_ids] * w)
        frozen |= newly
        freeze_iter[newly] = t
        active = ~(frozen[lu] | frozen[lv])
        x[active] *= growth
    return freeze_iter


def finalize_edge_weights(
    ends: np.ndarray, x0: np.ndarray, freeze_iter: np.ndarray, iterations: int, epsilon: float
) -> np.ndarray:
    """x^MPC_e = x0_e / (1-eps)^t' with t' the earliest endpoint freeze (I if none).

    ``freeze_iter`` is indexed by global vertex id with -1 meaning never.
    """
    if ends.shape[0] == 0:
        return np.zeros(0, dtype=np.float64)
    fi = np.where(freeze_iter < 0, iterations, freeze_iter)
    t_prime = np.minimum(fi[ends[:, 0]], fi[ends[:, 1]])
    return x0 / np.power(1.0 - epsilon, t_prime)


def post_phase_freeze(
    state: MpcState,
    graph: WeightedGraph,
    high: np.ndarray,
    inactive: np.ndarray,
    edge_ids: np.ndarray,
    x_high: np.ndarray,
    freeze_iter: np.ndarray,
    residual: np.ndarray,
) -> PostPhaseSummary:
    """Apply the end-of-phase freezes and recompute residual degrees.

    Locally frozen vertices freeze; a high vertex whose full E[V^high] load
    reaches w'(v) freezes too. Their E[V^high] edges keep x^MPC, and cross
    edges from V^inactive to a newly frozen high vertex freeze at weight 0.
    Non-frozen E[V^high] weights are discarded.
    """
    n = graph.num_vertices
    ends = graph.edges[edge_ids] if edge_ids.size else np.zeros((0, 2), dtype=np.int64)
    local = high & (freeze_iter >= 0)
    y_mpc = vertex_loads(ends, x_high, n)
    saturated = high & ~local & (y_mpc >= residual)
    newly = local | saturated

    state.vertex_frozen |= newly
    state.freeze_phase[newly] = state.phase
    state.vertex_class[newly] = VertexClass.FROZEN

    if edge_ids.size:
        touched = newly[ends[:, 0]] | newly[ends[:, 1]]
        fe = edge_ids[touched]
        state.edge_frozen[fe] = True
        state.x_final[fe] = x_high[touched]

    zeroed = 0
    if graph.num_edges:
        u, v = graph.edges[:, 0], graph.edges[:, 1]
        cross = ~state.edge_frozen & (
            (inactive[u] & newly[v]) | (inactive[v] & newly[u])
        )
        zeroed = int(cross.sum())
        state.edge_frozen[cross] = True
        state.x_final[cross] = 0.0
        # any remaining edge at a frozen vertex would be a bookkeeping bug
        dangling = ~state.edge_frozen & (state.vertex_frozen[u] | state.vertex_frozen[v])
        if dangling.any():
            e = int(np.flatnonzero(dangling)[0])
            raise InvariantViolationError(
                "frozen-closure", f"edge {e} touches a frozen vertex but is not frozen", witness=e
            )
        alive_edges = ~(state.vertex_frozen[u] | state.vertex_frozen[v])
        degree = np.bincount(u[alive_edges], minlength=n) + np.bincount(v[alive_edges], minlength=n)
    else:
        degree = np.zeros(n, dtype=np.int64)

    alive = ~state.vertex_frozen
    state.residual_degree = np.where(alive, degree, 0).astype(np.int64)
    state.residual_weight = compute_residual_weights(state, graph, alive)
    state.vertex_class[alive] = VertexClass.INACTIVE
    state.phase += 1
    return PostPhaseSummary(
        frozen_local=int(local.sum()),
        frozen_saturated=int(saturated.sum()),
        zeroed_cross_edges=zeroed,
        newly_frozen=np.flatnonzero(newly),
    )


__all__ = [
    "PostPhaseSummary",
    "select_high",
    "compute_residual_weights",
    "partition_vertices",
    "high_edges",
    "initial_high_weights",
    "build_machine_subgraphs",
    "phase_thresholds",
    "local_simulate",
    "finalize_edge_weights",
    "post_phase_freeze",
]
