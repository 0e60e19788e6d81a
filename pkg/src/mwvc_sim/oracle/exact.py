"""Exact minimum-weight vertex cover for small instances.

``exact_mwvc`` is a depth-first branch-and-bound over vertex bitmasks. At each
node it picks the free vertex ``v`` with the most uncovered edges and branches
on the edge set at ``v``: either ``v`` joins the cover, or every free
neighbor of ``v`` does. Nodes are pruned with the incumbent and a greedy
edge-packing lower bound. ``brute_force_mwvc`` enumerates all ``2^n`` subsets
and exists to cross-check the branch-and-bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from mwvc_sim.config import get_settings
from mwvc_sim.graph.models import WeightedGraph
from mwvc_sim.utils.exceptions import InvalidInputError, OracleCapExceededError
from mwvc_sim.utils.logging import get_logger

logger = get_logger("oracle")

_EPS = 1e-12


@dataclass(frozen=True)
class ExactResult:
    opt_cover: Tuple[int, ...]
    opt_weight: float
    nodes_explored: int


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _packing(free: int, adj: List[int], w: List[float]) -> Tuple[float, int]:
    """Greedy maximal edge packing on the free subgraph.

    Returns its value (a lower bound on the remaining cover weight) and the
    mask of vertices it made tight (a cover of the free subgraph).
    """
    residual: Dict[int, float] = {}
    value = 0.0
    tight = 0
    for v in _bits(free):
        later = adj[v] & free & ~((1 << (v + 1)) - 1)
        for u in _bits(later):
            rv = residual.get(v, w[v])
            ru = residual.get(u, w[u])
            delta = min(rv, ru)
            if delta <= _EPS:
                tight |= 1 << (v if rv <= ru else u)
                continue
            value += delta
            residual[v] = rv - delta
            residual[u] = ru - delta
            if residual[v] <= _EPS:
                tight |= 1 << v
            if residual[u] <= _EPS:
                tight |= 1 << u
    return value, tight


def exact_mwvc(graph: WeightedGraph, node_cap: Optional[int] = None) -> ExactResult:
    """Provably minimum-weight vertex cover; raises when ``node_cap`` is hit."""
    cap = get_settings().oracle.NODE_CAP if node_cap is None else node_cap
    n = graph.num_vertices
    w = [float(x) for x in graph.weights]
    adj = [0] * n
    for u, v in graph.edges:
        adj[int(u)] |= 1 << int(v)
        adj[int(v)] |= 1 << int(u)
    full = (1 << n) - 1

    # maximal packing gives a feasible starting incumbent
    _, best_mask = _packing(full, adj, w)
    best_weight = sum(w[v] for v in _bits(best_mask))

    nodes = 0
    stack: List[Tuple[int, float]] = [(0, 0.0)]
    while stack:
        cover, cost = stack.pop()
        nodes += 1
        if nodes > cap:
            logger.warning("oracle_cap_exceeded", n=n, m=graph.num_edges, node_cap=cap)
            raise OracleCapExceededError(cap)

        free = full & ~cover
        pivot, pivot_degree = -1, 0
        for v in _bits(free):
            degree = (adj[v] & free).bit_count()
            if degree > pivot_degree:
                pivot, pivot_degree = v, degree
        if pivot_degree == 0:
            if cost < best_weight - _EPS:
                best_weight, best_mask = cost, cover
            continue

        bound, _ = _packing(free, adj, w)
        if cost + bound >= best_weight - _EPS:
            continue

        neighbors = adj[pivot] & free
        stack.append((cover | neighbors, cost + sum(w[u] for u in _bits(neighbors))))
        stack.append((cover | (1 << pivot), cost + w[pivot]))

    opt = tuple(sorted(_bits(best_mask)))
    logger.debug("exact_finished", n=n, m=graph.num_edges, opt_weight=best_weight, nodes=nodes)
    return ExactResult(opt_cover=opt, opt_weight=float(sum(w[v] for v in opt)), nodes_explored=nodes)


def brute_force_mwvc(graph: WeightedGraph, max_n: Optional[int] = None) -> ExactResult:
    """Enumerate every vertex subset; only for tiny graphs."""
    limit = get_settings().oracle.BRUTE_FORCE_MAX_N if max_n is None else max_n
    n = graph.num_vertices
    if n > limit:
        raise InvalidInputError(f"brute force limited to n <= {limit}, got {n}")
    masks = np.arange(1 << n, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(n, dtype=np.int64)) & 1).astype(bool)
    valid = np.ones(masks.shape[0], dtype=bool)
    for u, v in graph.edges:
        valid &= bits[:, u] | bits[:, v]
    cost = bits.astype(np.float64) @ graph.weights if n else np.zeros(1)
    cost = np.where(valid, cost, np.inf)
    best = int(np.argmin(cost))
    cover = tuple(int(v) for v in np.flatnonzero(bits[best])) if n else ()
    return ExactResult(opt_cover=cover, opt_weight=float(cost[best]), nodes_explored=int(masks.shape[0]))


__all__ = ["ExactResult", "exact_mwvc", "brute_force_mwvc"]
