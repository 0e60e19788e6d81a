"""Deterministic graph generators.

``generate`` is a pure function of its :class:`GenSpec`: structure is drawn
from the (seed, GENERATOR) stream and weights from the (seed, WEIGHTS) stream,
so the same spec always reproduces the same graph bit for bit.
"""

from __future__ import annotations

import networkx as nx
import numpy as np

from mwvc_sim.graph.models import GenSpec, WeightedGraph
from mwvc_sim.utils.exceptions import GenSpecError
from mwvc_sim.utils.logging import get_logger
from mwvc_sim.utils.rng import Stream, keyed_generator

logger = get_logger("graph.generate")

# Chung-Lu exponent for the power-law model
POWER_LAW_GAMMA = 2.5


def generate(spec: GenSpec) -> WeightedGraph:
    spec.check()
    n = spec.num_vertices
    rng = keyed_generator(spec.seed, Stream.GENERATOR)

    if spec.model == "gnp":
        edges = _gnp_edges(n, float(spec.target_avg_degree or 0.0), rng)
    elif spec.model == "power-law":
        edges = _power_law_edges(n, float(spec.target_avg_degree or 0.0), rng)
    elif spec.model == "star":
        edges = np.array([(0, leaf) for leaf in range(1, n)], dtype=np.int64).reshape(-1, 2)
    elif spec.model == "path":
        edges = np.array([(i, i + 1) for i in range(n - 1)], dtype=np.int64).reshape(-1, 2)
    elif spec.model == "triangle":
        edges = np.array([(0, 1), (0, 2), (1, 2)], dtype=np.int64)
    else:  # pragma: no cover - Literal guards this
        raise GenSpecError("model", f"unknown model {spec.model}")

    degrees = np.bincount(edges.reshape(-1), minlength=n) if n else np.zeros(0, dtype=np.int64)
    weights = _draw_weights(spec, degrees)
    if spec.model == "star" and n:
        if spec.center_weight is not None:
            weights[0] = spec.center_weight
        if spec.leaf_weight is not None:
            weights[1:] = spec.leaf_weight

    graph = WeightedGraph.from_edges(n, edges, weights)
    logger.debug(
        "graph_generated",
        model=spec.model,
        n=n,
        m=graph.num_edges,
        avg_degree=round(graph.average_degree, 4),
        seed=spec.seed,
    )
    return graph


def _gnp_edges(n: int, avg_degree: float, rng: np.random.Generator) -> np.ndarray:
    """G(n, p) with p = avg_degree / (n - 1), sampled row by row."""
    if n < 2 or avg_degree <= 0.0:
        return np.zeros((0, 2), dtype=np.int64)
    p = avg_degree / (n - 1)
    if p > 1.0:
        raise GenSpecError("target_avg_degree", "target degree unreachable (p > 1)")
    rows = []
    for u in range(n - 1):
        remaining = n - 1 - u
        k = int(rng.binomial(remaining, p))
        if k == 0:
            continue
        cols = np.sort(rng.choice(remaining, size=k, replace=False)) + (u + 1)
        rows.append(np.stack([np.full(k, u, dtype=np.int64), cols.astype(np.int64)], axis=1))
    if not rows:
        return np.zeros((0, 2), dtype=np.int64)
    return np.concatenate(rows)


def _power_law_edges(n: int, avg_degree: float, rng: np.random.Generator) -> np.ndarray:
    """Chung-Lu graph with expected degrees following a power law of exponent gamma."""
    if n < 2 or avg_degree <= 0.0:
        return np.zeros((0, 2), dtype=np.int64)
    ranks = np.arange(1, n + 1, dtype=np.float64)
    expected = ranks ** (-1.0 / (POWER_LAW_GAMMA - 1.0))
    expected *= avg_degree / expected.mean()
    # capping redistributes mass; rescale the uncapped part until the mean matches
    for _ in range(32):
        np.minimum(expected, n - 1, out=expected)
        deficit = avg_degree * n - expected.sum()
        free = expected < n - 1
        if deficit <= 1e-9 * avg_degree * n or not free.any():
            break
        expected[free] *= 1.0 + deficit / expected[free].sum()
    if expected.sum() < 0.999 * avg_degree * n:
        raise GenSpecError("target_avg_degree", "target degree unreachable for power-law model")
    nx_seed = int(rng.integers(0, 2**32 - 1))
    g = nx.expected_degree_graph(expected.tolist(), seed=nx_seed, selfloops=False)
    edges = np.array(sorted((min(u, v), max(u, v)) for u, v in g.edges()), dtype=np.int64)
    return edges.reshape(-1, 2)


def _draw_weights(spec: GenSpec, degrees: np.ndarray) -> np.ndarray:
    n = spec.num_vertices
    dist = spec.weight_dist
    rng = keyed_generator(spec.seed, Stream.WEIGHTS)
    if dist.kind == "uniform":
        return rng.uniform(dist.lo, dist.hi, size=n) if dist.lo < dist.hi else np.full(n, dist.lo)
    if dist.kind == "exponential":
        draws = rng.exponential(dist.mean, size=n)
        return np.maximum(draws, dist.mean * 1e-12)
    return dist.scale * np.maximum(degrees, 1).astype(np.float64)


__all__ = ["generate", "POWER_LAW_GAMMA"]
