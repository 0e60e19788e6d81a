from __future__ import annotations

from typing import Iterable, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel

from mwvc_sim.central.solver import CentralResult
from mwvc_sim.central.solver import vertex_loads as _edge_loads
from mwvc_sim.config import get_settings
from mwvc_sim.graph.models import WeightedGraph
from mwvc_sim.mpc.models import MpcResult
from mwvc_sim.oracle.exact import ExactResult
from mwvc_sim.utils.exceptions import InvalidInputError


class CoverCheck(BaseModel):
    valid: bool
    witness: Optional[Tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.valid


class FeasibilityReport(BaseModel):
    """Dual constraint check, ``sum x_e at v <= slack_factor * w(v)``."""

    feasible: bool
    worst_vertex: Optional[int] = None
    worst_slack: Optional[float] = None
    slack_factor: float = 1.0
    slack_tolerance_used: float


class RatioReport(BaseModel):
    algorithm: Literal["central", "mpc"]
    cover_weight: float
    matching_value: float
    opt_weight: Optional[float] = None
    ratio_vs_matching: Optional[float] = None
    ratio_vs_opt: Optional[float] = None
    bound: float
    dual_scale: float = 1.0
    certified_by: Optional[Literal["opt", "matching", "vacuous"]] = None
    passed: Optional[bool] = None
    anomaly: Optional[str] = None


def matching_value(x: np.ndarray) -> float:
    return float(np.asarray(x, dtype=np.float64).sum())


def vertex_loads(graph: WeightedGraph, x: np.ndarray) -> np.ndarray:
    return _edge_loads(graph.edges, np.asarray(x, dtype=np.float64), graph.num_vertices)


def validate_cover(graph: WeightedGraph, cover: Iterable[int]) -> CoverCheck:
    """Valid iff every edge has an endpoint in ``cover``; else report the first bare edge."""
    mask = np.zeros(graph.num_vertices, dtype=bool)
    ids = np.fromiter((int(v) for v in cover), dtype=np.int64)
    if ids.size and (ids.min() < 0 or ids.max() >= graph.num_vertices):
        raise InvalidInputError("cover contains a vertex id outside 0..n-1")
    mask[ids] = True
    if graph.num_edges == 0:
        return CoverCheck(valid=True)
    bare = ~(mask[graph.edges[:, 0]] | mask[graph.edges[:, 1]])
    if not bare.any():
        return CoverCheck(valid=True)
    u, v = graph.edges[int(np.flatnonzero(bare)[0])]
    return CoverCheck(valid=False, witness=(int(u), int(v)))


def validate_fractional_matching(
    graph: WeightedGraph,
    x: np.ndarray,
    weights: Optional[np.ndarray] = None,
    slack_factor: float = 1.0,
    tolerance: Optional[float] = None,
) -> FeasibilityReport:
    """Check every vertex load against ``slack_factor * w(v)``.

    The worst vertex is the one with the smallest slack relative to its
    weight; it is reported whether or not the check passes.
    """
    tol = get_settings().solver.FEASIBILITY_TOLERANCE if tolerance is None else tolerance
    x = np.asarray(x, dtype=np.float64)
    if x.shape[0] != graph.num_edges:
        raise InvalidInputError(f"expected {graph.num_edges} edge values, got {x.shape[0]}")
    if np.any(x < 0.0):
        e = int(np.flatnonzero(x < 0.0)[0])
        raise InvalidInputError(f"negative matching value {x[e]} on edge {e}")
    w = graph.weights if weights is None else np.asarray(weights, dtype=np.float64)
    if graph.num_vertices == 0:
        return FeasibilityReport(feasible=True, slack_factor=slack_factor, slack_tolerance_used=tol)

    slack = slack_factor * w - vertex_loads(graph, x)
    worst = int(np.argmin(slack / w))
    return FeasibilityReport(
        feasible=bool(slack[worst] >= -tol * w[worst]),
        worst_vertex=worst,
        worst_slack=float(slack[worst]),
        slack_factor=slack_factor,
        slack_tolerance_used=tol,
    )


def approximation_bound(algorithm: str, epsilon: float) -> float:
    return 2.0 + (30.0 if algorithm == "mpc" else 10.0) * epsilon


def dual_scale(
    algorithm: str, epsilon: float, x: np.ndarray, graph: Optional[WeightedGraph] = None
) -> float:
    """Factor that makes ``x / factor`` a feasible fractional matching.

    With the graph at hand this is the worst load ratio ``max_v y_v / w(v)``
    (never below 1); without it an MPC matching falls back to its proven
    ``1 + 6 eps`` overload and a central one to 1.
    """
    if graph is not None:
        if graph.num_edges == 0:
            return 1.0
        ratio = vertex_loads(graph, x) / graph.weights
        return max(1.0, float(ratio.max()))
    return 1.0 + 6.0 * epsilon if algorithm == "mpc" else 1.0


def ratio_report(
    result: Union[CentralResult, MpcResult],
    exact: Optional[ExactResult] = None,
    epsilon: Optional[float] = None,
    graph: Optional[WeightedGraph] = None,
) -> RatioReport:
    """Cover weight against the matching value and, when known, OPT.

    The matching is first scaled down by :func:`dual_scale` so that weak
    duality applies to it. Without an exact optimum a run is certified when
    cover/scaled matching is within the bound; otherwise it stays uncertified
    (``passed`` is None).
    """
    slack = get_settings().oracle.RATIO_SLACK
    algorithm: Literal["central", "mpc"] = "mpc" if isinstance(result, MpcResult) else "central"
    eps = result.epsilon if epsilon is None else epsilon
    bound = approximation_bound(algorithm, eps)
    report = RatioReport(
        algorithm=algorithm,
        cover_weight=result.cover_weight,
        matching_value=result.matching_value,
        opt_weight=exact.opt_weight if exact is not None else None,
        bound=bound,
        dual_scale=dual_scale(algorithm, eps, result.x, graph),
    )

    if not result.cover:
        report.certified_by = "vacuous"
        report.passed = True
        return report
    if result.matching_value <= 0.0:
        report.anomaly = "zero matching value with a nonempty cover"
        report.passed = False
        return report

    report.ratio_vs_matching = result.cover_weight * report.dual_scale / result.matching_value
    if exact is not None and exact.opt_weight > 0.0:
        report.ratio_vs_opt = result.cover_weight / exact.opt_weight
        report.certified_by = "opt"
        report.passed = report.ratio_vs_opt <= bound + slack
    elif report.ratio_vs_matching <= bound + slack:
        report.certified_by = "matching"
        report.passed = True
    return report


__all__ = [
    "CoverCheck",
    "FeasibilityReport",
    "RatioReport",
    "approximation_bound",
    "dual_scale",
    "matching_value",
    "ratio_report",
    "validate_cover",
    "validate_fractional_matching",
    "vertex_loads",
]
