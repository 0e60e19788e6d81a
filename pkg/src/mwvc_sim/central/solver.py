"""Generic centralized primal-dual MWVC solver.

Dual variables ``x_e`` start from the min-ratio fractional matching
``x_(u,v) = min(w(u)/d(u), w(v)/d(v))``. Each iteration first freezes every
active vertex whose incident load ``y_v`` reaches ``T_{v,t} * w(v)`` (all tests
read the loads at the start of the iteration), then divides every still-active
edge by ``1 - eps``. Frozen vertices form the cover.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from mwvc_sim.central.thresholds import ThresholdPolicy
from mwvc_sim.config import get_settings
from mwvc_sim.graph.models import WeightedGraph
from mwvc_sim.utils.exceptions import (
    InvalidInputError,
    InvariantViolationError,
    IterationLimitExceededError,
)
from mwvc_sim.utils.logging import get_logger

logger = get_logger("central")


@dataclass
class CentralState:
    """Mutable solver state for one run."""

    x: np.ndarray
    vertex_frozen: np.ndarray
    edge_frozen: np.ndarray
    t: int = 0


@dataclass(frozen=True)
class IterationSnapshot:
    t: int
    active_edges: int
    loads: np.ndarray
    newly_frozen: Tuple[int, ...]
    max_load_ratio: float = 0.0


@dataclass
class CentralResult:
    cover: Tuple[int, ...]
    cover_weight: float
    matching_value: float
    iterations: int
    epsilon: float
    x: np.ndarray
    freeze_iteration: np.ndarray
    trace: Optional[List[IterationSnapshot]] = field(default=None)

    @property
    def ratio_vs_matching(self) -> Optional[float]:
        if self.matching_value <= 0.0:
            return None
        return self.cover_weight / self.matching_value


def vertex_loads(edges: np.ndarray, x: np.ndarray, n: int) -> np.ndarray:
    """y_v = sum of x_e over edges incident to v."""
    if edges.shape[0] == 0:
        return np.zeros(n, dtype=np.float64)
    return np.bincount(edges[:, 0], weights=x, minlength=n) + np.bincount(
        edges[:, 1], weights=x, minlength=n
    )


def iteration_guard(max_degree: int, epsilon: float) -> int:
    """ceil(log(Delta) / log(1/(1-eps))) + 1, the termination bound."""
    if max_degree <= 1:
        return 1
    return int(math.ceil(math.log(max_degree) / math.log(1.0 / (1.0 - epsilon)))) + 1


def init_edge_weights(
    graph: WeightedGraph, weights: np.ndarray, degrees: np.ndarray
) -> np.ndarray:
    """Min-ratio initialization x_(u,v) = min(w(u)/d(u), w(v)/d(v))."""
    w = np.asarray(weights, dtype=np.float64)
    d = np.asarray(degrees, dtype=np.float64)
    if w.shape[0] != graph.num_vertices or d.shape[0] != graph.num_vertices:
        raise InvalidInputError("weights and degrees need one entry per vertex")
    if graph.num_edges == 0:
        return np.zeros(0, dtype=np.float64)
    u, v = graph.edges[:, 0], graph.edges[:, 1]
    touched = np.zeros(graph.num_vertices, dtype=bool)
    touched[u] = True
    touched[v] = True
    if np.any(w[touched] <= 0.0):
        bad = int(np.flatnonzero(touched & (w <= 0.0))[0])
        raise InvalidInputError(f"nonpositive weight {w[bad]} on vertex {bad}")
    if np.any(d[touched] <= 0.0):
        bad = int(np.flatnonzero(touched & (d <= 0.0))[0])
        raise InvalidInputError(f"zero degree passed for non-isolated vertex {bad}")
    ratio = np.zeros(graph.num_vertices, dtype=np.float64)
    ratio[touched] = w[touched] / d[touched]
    return np.minimum(ratio[u], ratio[v])


def run_centralized(
    graph: WeightedGraph,
    weights: Optional[np.ndarray] = None,
    epsilon: Optional[float] = None,
    policy: Optional[ThresholdPolicy] = None,
    max_iters: Optional[int] = None,
    *,
    tolerance: Optional[float] = None,
    record_trace: bool = False,
    vertex_keys: Optional[np.ndarray] = None,
) -> CentralResult:
    settings = get_settings()
    eps = settings.solver.DEFAULT_EPSILON if epsilon is None else float(epsilon)
    if not 0.0 < eps < 0.5:
        raise InvalidInputError(f"epsilon must lie in (0, 1/2), got {eps}")
    if policy is None:
        policy = ThresholdPolicy(mode="fixed-midpoint", epsilon=eps)
    elif abs(policy.epsilon - eps) > 0.0:
        policy = policy.model_copy(update={"epsilon": eps})
    tol = settings.solver.FEASIBILITY_TOLERANCE if tolerance is None else float(tolerance)

    n = graph.num_vertices
    w = graph.weights if weights is None else np.asarray(weights, dtype=np.float64)
    if w.shape[0] != n:
        raise InvalidInputError("weights need one entry per vertex")
    degrees = graph.degrees
    guard = iteration_guard(graph.max_degree, eps)
    if max_iters is None:
        max_iters = guard + settings.solver.CENTRAL_ITER_SLACK
    elif max_iters < guard:
        raise InvalidInputError(f"max_iters={max_iters} below the termination guard {guard}")

    edges = graph.edges
    x = init_edge_weights(graph, w, degrees)
    state = CentralState(
        x=x,
        vertex_frozen=np.zeros(n, dtype=bool),
        edge_frozen=np.zeros(graph.num_edges, dtype=bool),
    )
    freeze_iteration = np.full(n, -1, dtype=np.int64)
    trace: Optional[List[IterationSnapshot]] = [] if record_trace else None
    growth = 1.0 / (1.0 - eps)

    while not state.edge_frozen.all():
        if state.t >= max_iters:
            raise IterationLimitExceededError(max_iters, int((~state.edge_frozen).sum()))
        loads = vertex_loads(edges, state.x, n)
        _assert_feasible(loads, w, tol, state.t)
        thresholds = policy.thresholds(n, state.t, vertex_keys)
        newly = ~state.vertex_frozen & (loads >= thresholds * w) & (degrees > 0)
        state.vertex_frozen |= newly
        freeze_iteration[newly] = state.t
        state.edge_frozen = state.vertex_frozen[edges[:, 0]] | state.vertex_frozen[edges[:, 1]]
        if trace is not None:
            trace.append(
                IterationSnapshot(
                    t=state.t,
                    active_edges=int((~state.edge_frozen).sum()),
                    loads=loads.copy(),
                    newly_frozen=tuple(int(i) for i in np.flatnonzero(newly)),
                    max_load_ratio=float((loads / w).max()) if n else 0.0,
                )
            )
        state.x[~state.edge_frozen] *= growth
        state.t += 1

    loads = vertex_loads(edges, state.x, n)
    _assert_feasible(loads, w, tol, state.t)
    cover_mask = state.vertex_frozen
    cover = tuple(int(i) for i in np.flatnonzero(cover_mask))
    cover_weight = float(w[cover_mask].sum())
    matching_value = float(state.x.sum())

    short = cover_mask & (loads < (1.0 - 4.0 * eps) * w * (1.0 - tol))
    if short.any():
        bad = int(np.flatnonzero(short)[0])
        raise InvariantViolationError(
            "freeze-saturation",
            f"cover vertex {bad} has load {loads[bad]} < (1-4eps) w = {(1 - 4 * eps) * w[bad]}",
            witness=bad,
        )

    logger.debug(
        "centralized_finished",
        n=n,
        m=graph.num_edges,
        iterations=state.t,
        cover_size=len(cover),
        cover_weight=cover_weight,
        matching_value=matching_value,
    )
    return CentralResult(
        cover=cover,
        cover_weight=cover_weight,
        matching_value=matching_value,
        iterations=state.t,
        epsilon=eps,
        x=state.x,
        freeze_iteration=freeze_iteration,
        trace=trace,
    )


def solve_residual(
    graph: WeightedGraph,
    residual_weights: np.ndarray,
    keep: np.ndarray,
    epsilon: float,
    policy: Optional[ThresholdPolicy] = None,
) -> Tuple[CentralResult, np.ndarray, np.ndarray]:
    """Run the centralized solver on the subgraph induced by ``keep``.

    Returns the subgraph result together with the original ids of the
    subgraph's vertices and edges, so callers can map cover and x back.
    """
    sub, vertex_ids, edge_ids = graph.induced_subgraph(keep, weights=residual_weights)
    result = run_centralized(sub, epsilon=epsilon, policy=policy, vertex_keys=vertex_ids)
    return result, vertex_ids, edge_ids


def _assert_feasible(loads: np.ndarray, weights: np.ndarray, tol: float, t: int) -> None:
    over = loads > weights * (1.0 + tol)
    if over.any():
        bad = int(np.flatnonzero(over)[0])
        raise InvariantViolationError(
            "dual-feasibility",
            f"iteration {t}: vertex {bad} load {loads[bad]} exceeds weight {weights[bad]}",
            witness=bad,
        )


__all__ = [
    "CentralState",
    "CentralResult",
    "IterationSnapshot",
    "init_edge_weights",
    "iteration_guard",
    "run_centralized",
    "solve_residual",
    "vertex_loads",
]
