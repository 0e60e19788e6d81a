"""Per-phase sparsification checks and the end-of-run saturation certificate.

Check results are reported, never raised: a failed check is a finding of the
run, not a crash.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from mwvc_sim.central.solver import vertex_loads
from mwvc_sim.graph.models import WeightedGraph
from mwvc_sim.mpc.models import MpcState, SaturationCertificate, SparsificationCheck

_REL_TOL = 1e-9


def orient_edges(
    ends: np.ndarray, residual: np.ndarray, degree: np.ndarray
) -> np.ndarray:
    """Tail vertex of each edge under the ratio orientation.

    u -> v iff w'(u)/d(u) < w'(v)/d(v); ties point toward the larger id, so the
    smaller id is the tail.
    """
    if ends.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    u, v = ends[:, 0], ends[:, 1]
    ru = residual[u] / np.maximum(degree[u], 1)
    rv = residual[v] / np.maximum(degree[v], 1)
    tail_is_u = (ru < rv) | ((ru == rv) & (u < v))
    return np.where(tail_is_u, u, v)


def check_sparsification(
    graph: WeightedGraph,
    state: MpcState,
    high: np.ndarray,
    residual: np.ndarray,
    degree: np.ndarray,
    d: float,
    epsilon: float,
    iterations: int,
    alpha: float,
) -> SparsificationCheck:
    """Verify the two deterministic end-of-phase sparsification bounds.

    ``residual`` and ``degree`` are the phase-start values; ``state`` is the
    post-phase state. (a) every still-active high vertex keeps at most
    d(u)(1-eps)^I active out-neighbors in V^high. (b) the number of nonfrozen
    edges is at most n d (1-eps)^I + n d^alpha.
    """
    n = graph.num_vertices
    shrink = (1.0 - epsilon) ** iterations
    alive = ~state.vertex_frozen

    excess = 0.0
    worst: Optional[int] = None
    if graph.num_edges:
        both_high = high[graph.edges[:, 0]] & high[graph.edges[:, 1]]
        both_alive = alive[graph.edges[:, 0]] & alive[graph.edges[:, 1]]
        ends = graph.edges[both_high & both_alive]
        tails = orient_edges(ends, residual, degree)
        out_degree = np.bincount(tails, minlength=n).astype(np.float64)
        limit = degree.astype(np.float64) * shrink
        over = out_degree - limit * (1.0 + _REL_TOL)
        over[~(high & alive)] = -np.inf
        if n and np.isfinite(over).any():
            worst_idx = int(np.argmax(over))
            excess = float(max(over[worst_idx], 0.0))
            if over[worst_idx] > 0.0:
                worst = worst_idx

    remaining = state.nonfrozen_edge_count(graph)
    bound = n * d * shrink + n * d**alpha
    return SparsificationCheck(
        out_degree_ok=worst is None,
        max_active_out_degree_excess=excess,
        worst_vertex=worst,
        nonfrozen_edges_after=remaining,
        sparsification_bound=float(bound),
        total_ok=remaining <= bound * (1.0 + _REL_TOL),
    )


def saturation_certificate(
    graph: WeightedGraph, cover_mask: np.ndarray, x: np.ndarray, epsilon: float
) -> SaturationCertificate:
    """Loads of the final fractional matching against the vertex weights.

    Counts cover vertices below (1-16eps) w(v) and any vertex above
    (1+6eps) w(v), and checks (1-16eps) w(C) <= 2 sum x_e.
    """
    n = graph.num_vertices
    w = graph.weights
    loads = vertex_loads(graph.edges, x, n)
    ratio = loads / w if n else np.zeros(0)
    lower = 1.0 - 16.0 * epsilon
    upper = 1.0 + 6.0 * epsilon
    below = np.flatnonzero(cover_mask & (ratio < lower * (1.0 - _REL_TOL)))
    above = np.flatnonzero(ratio > upper * (1.0 + _REL_TOL))
    cover_weight = float(w[cover_mask].sum())
    matching = float(x.sum())
    return SaturationCertificate(
        epsilon=epsilon,
        cover_size=int(cover_mask.sum()),
        min_cover_load_ratio=float(ratio[cover_mask].min()) if cover_mask.any() else None,
        max_load_ratio=float(ratio.max()) if n else None,
        below_lower_count=int(below.size),
        above_upper_count=int(above.size),
        below_lower_vertices=[int(v) for v in below[:20]],
        above_upper_vertices=[int(v) for v in above[:20]],
        ratio_certificate_ok=lower * cover_weight <= 2.0 * matching * (1.0 + _REL_TOL) + 1e-12,
    )


__all__ = ["orient_edges", "check_sparsification", "saturation_certificate"]
