"""Phase loop of the MPC simulation and the final centralized solve."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

import numpy as np

from mwvc_sim.central.solver import solve_residual
from mwvc_sim.config import get_settings
from mwvc_sim.graph.models import WeightedGraph
from mwvc_sim.mpc.checks import check_sparsification, saturation_certificate
from mwvc_sim.mpc.memory import MachineMemoryLedger, machine_loads
from mwvc_sim.mpc.models import (
    MachineSubgraph,
    MpcConfig,
    MpcResult,
    MpcState,
    PhaseRecord,
    VertexClass,
)
from mwvc_sim.mpc.phase import (
    build_machine_subgraphs,
    compute_residual_weights,
    finalize_edge_weights,
    high_edges,
    initial_high_weights,
    local_simulate,
    partition_vertices,
    phase_thresholds,
    post_phase_freeze,
    select_high,
)
from mwvc_sim.utils.exceptions import (
    InvariantViolationError,
    MemoryCapExceededError,
    PhaseCapExceededError,
)
from mwvc_sim.utils.logging import get_logger
from mwvc_sim.utils.rng import Stream, derive_seed

logger = get_logger("mpc")


def run_phase(
    state: MpcState,
    graph: WeightedGraph,
    config: MpcConfig,
    ledger: MachineMemoryLedger,
    executor: Optional[ThreadPoolExecutor] = None,
) -> PhaseRecord:
    """Simulate one phase and mutate ``state`` to the post-phase state."""
    n = graph.num_vertices
    phase = state.phase
    d = state.residual_average_degree()
    high, inactive = select_high(state, config.alpha)
    state.vertex_class[high] = VertexClass.HIGH
    residual = compute_residual_weights(state, graph, high)
    degree = state.residual_degree.copy()

    m = config.machines(d)
    iterations = config.iterations(m)
    edge_ids = high_edges(graph, high)
    x0 = initial_high_weights(graph, edge_ids, residual, degree)
    machine_of = partition_vertices(high, m, config.seed, phase)
    subgraphs = build_machine_subgraphs(graph, machine_of, m, edge_ids, x0, residual)
    words = machine_loads(subgraphs)
    memory_ok = ledger.record(phase, words)

    thresholds = phase_thresholds(config, n, phase, iterations)

    def simulate(sub: MachineSubgraph) -> np.ndarray:
        return local_simulate(sub, iterations, config.epsilon, m, config, thresholds)

    if executor is not None:
        outcomes = list(executor.map(simulate, subgraphs))
    else:
        outcomes = [simulate(sub) for sub in subgraphs]

    freeze_iter = np.full(n, -1, dtype=np.int64)
    for sub, local in zip(subgraphs, outcomes):
        freeze_iter[sub.vertex_ids] = local

    ends = graph.edges[edge_ids]
    x_high = finalize_edge_weights(ends, x0, freeze_iter, iterations, config.epsilon)
    summary = post_phase_freeze(
        state, graph, high, inactive, edge_ids, x_high, freeze_iter, residual
    )
    check = check_sparsification(
        graph, state, high, residual, degree, d, config.epsilon, iterations, config.alpha
    )

    record = PhaseRecord(
        phase=phase,
        d=d,
        m=m,
        iterations=iterations,
        high_count=int(high.sum()),
        inactive_count=int(inactive.sum()),
        per_machine_edges=[sub.num_edges for sub in subgraphs],
        per_machine_words=words,
        frozen_local=summary.frozen_local,
        frozen_saturated=summary.frozen_saturated,
        zeroed_cross_edges=summary.zeroed_cross_edges,
        nonfrozen_edges_after=check.nonfrozen_edges_after,
        sparsification_bound=check.sparsification_bound,
        max_active_out_degree_excess=check.max_active_out_degree_excess,
        checks={
            "out_degree": check.out_degree_ok,
            "total_nonfrozen": check.total_ok,
            "memory": memory_ok,
        },
    )
    log = logger.info if check.passed else logger.warning
    log(
        "phase_completed",
        phase=phase,
        d=round(d, 4),
        m=m,
        iterations=iterations,
        high=record.high_count,
        frozen_local=record.frozen_local,
        frozen_saturated=record.frozen_saturated,
        nonfrozen_edges=record.nonfrozen_edges_after,
        checks=record.checks,
    )
    return record


def run_single(
    graph: WeightedGraph,
    config: Optional[MpcConfig] = None,
    *,
    workers: Optional[int] = None,
) -> MpcResult:
    """Simulate one copy of the phase-based MPC algorithm and return its cover.

    Phases run while the residual average degree exceeds the stop threshold.
    The remaining residual graph is then solved centrally with fixed-midpoint
    thresholds on the residual weights.
    """
    settings = get_settings()
    config = config or MpcConfig.from_preset()
    workers = settings.mpc.WORKERS if workers is None else workers
    n = graph.num_vertices
    state = MpcState.initial(graph)
    stop = config.resolved_stop_degree(n)
    ledger = MachineMemoryLedger(
        n,
        cap_words=config.resolved_mem_cap(n, settings.mpc.MEM_CAP_FACTOR),
        enforce=config.enforce_mem,
    )
    records: List[PhaseRecord] = []

    executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while state.residual_average_degree() > stop:
            if state.phase >= config.phase_cap:
                raise PhaseCapExceededError(config.phase_cap, state.residual_average_degree())
            records.append(run_phase(state, graph, config, ledger, executor))
    finally:
        if executor is not None:
            executor.shutdown(wait=True)

    alive = ~state.vertex_frozen
    residual = compute_residual_weights(state, graph, alive)
    final, vertex_ids, edge_ids = solve_residual(graph, residual, alive, config.epsilon)
    cover_ids = vertex_ids[list(final.cover)] if final.cover else np.zeros(0, dtype=np.int64)
    state.vertex_frozen[cover_ids] = True
    state.freeze_phase[cover_ids] = state.phase
    state.vertex_class[cover_ids] = VertexClass.FROZEN
    state.edge_frozen[edge_ids] = True
    state.x_final[edge_ids] = final.x

    x = np.nan_to_num(state.x_final, nan=0.0)
    cover_mask = state.vertex_frozen
    if graph.num_edges:
        uncovered = ~(cover_mask[graph.edges[:, 0]] | cover_mask[graph.edges[:, 1]])
        if uncovered.any():
            e = int(np.flatnonzero(uncovered)[0])
            raise InvariantViolationError(
                "cover", f"edge {graph.edge_list()[e]} left uncovered", witness=e
            )

    certificate = saturation_certificate(graph, cover_mask, x, config.epsilon)
    if not (certificate.saturation_ok and certificate.near_feasible):
        logger.warning(
            "saturation_certificate_violations",
            below_lower=certificate.below_lower_count,
            above_upper=certificate.above_upper_count,
        )

    cover = tuple(int(v) for v in np.flatnonzero(cover_mask))
    phases = len(records)
    result = MpcResult(
        cover=cover,
        cover_weight=float(graph.weights[cover_mask].sum()),
        matching_value=float(x.sum()),
        phases=phases,
        mpc_rounds=4 * phases + 1,
        phase_records=records,
        certificate=certificate,
        x=x,
        config=config,
        central_iterations=final.iterations,
        freeze_phase=state.freeze_phase.copy(),
    )
    logger.info(
        "mpc_finished",
        n=n,
        m=graph.num_edges,
        phases=phases,
        rounds=result.mpc_rounds,
        cover_size=len(cover),
        cover_weight=result.cover_weight,
        matching_value=result.matching_value,
        memory=ledger.summary()["state"],
    )
    return result


COPY_FAILURES = (InvariantViolationError, PhaseCapExceededError, MemoryCapExceededError)


def run_mpc(
    graph: WeightedGraph,
    config: Optional[MpcConfig] = None,
    *,
    workers: Optional[int] = None,
) -> MpcResult:
    """Run ``config.repetitions`` independent copies and keep the lightest cover.

    Copy 0 uses ``config.seed``; copy k > 0 draws its seed from the
    (seed, REPETITION, k) stream. A copy that fails an invariant or a cap is
    skipped; if every copy fails, the last error is raised. Ties go to the
    lower copy index.
    """
    config = config or MpcConfig.from_preset()
    if config.repetitions == 1:
        result = run_single(graph, config, workers=workers)
        result.repetition_weights = [result.cover_weight]
        return result

    best: Optional[MpcResult] = None
    weights: List[Optional[float]] = []
    last_error: Optional[Exception] = None
    for k in range(config.repetitions):
        seed = config.seed if k == 0 else derive_seed(config.seed, Stream.REPETITION, k)
        copy = config.model_copy(update={"seed": seed, "repetitions": 1})
        try:
            result = run_single(graph, copy, workers=workers)
        except COPY_FAILURES as exc:
            logger.warning("mpc_copy_failed", repetition=k, seed=seed, error=str(exc))
            weights.append(None)
            last_error = exc
            continue
        weights.append(result.cover_weight)
        if best is None or result.cover_weight < best.cover_weight:
            best = result
            best.repetition = k

    if best is None:
        assert last_error is not None
        raise last_error
    best.repetition_weights = weights
    logger.info(
        "mpc_repetitions_finished",
        repetitions=config.repetitions,
        chosen=best.repetition,
        failed=sum(w is None for w in weights),
        cover_weight=best.cover_weight,
    )
    return best


__all__ = ["COPY_FAILURES", "run_phase", "run_single", "run_mpc"]
