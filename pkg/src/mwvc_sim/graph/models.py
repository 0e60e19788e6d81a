from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from mwvc_sim.utils.exceptions import GenSpecError, InvalidInputError

GraphModel = Literal["gnp", "star", "path", "triangle", "power-law"]
WeightKind = Literal["uniform", "exponential", "degree-proportional"]


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Immutable vertex-weighted undirected graph.

    Vertices are dense ids ``0..n-1``. Edges are stored as an ``(m, 2)`` array
    with ``u < v`` in lexicographic order; adjacency is kept in CSR form
    (``adj_offsets`` / ``adj_neighbors`` / ``adj_edges``) so that
    ``neighbors(v)`` yields ``(neighbor, edge_index)`` pairs in neighbor order.
    Build instances through :meth:`from_edges`, which enforces the invariants.
    """

    num_vertices: int
    edges: np.ndarray
    weights: np.ndarray
    adj_offsets: np.ndarray
    adj_neighbors: np.ndarray
    adj_edges: np.ndarray
    original_ids: Optional[Tuple[str, ...]] = field(default=None)

    @classmethod
    def from_edges(
        cls,
        num_vertices: int,
        edges: Iterable[Sequence[int]] | np.ndarray,
        weights: Sequence[float] | np.ndarray,
        original_ids: Optional[Sequence[str]] = None,
    ) -> "WeightedGraph":
        if num_vertices < 0:
            raise InvalidInputError("num_vertices must be nonnegative")
        w = np.array(weights, dtype=np.float64).reshape(-1)
        if w.shape[0] != num_vertices:
            raise InvalidInputError(
                f"expected {num_vertices} weights, got {w.shape[0]}"
            )
        if num_vertices and (not np.all(np.isfinite(w)) or np.any(w <= 0.0)):
            bad = int(np.flatnonzero(~(np.isfinite(w) & (w > 0.0)))[0])
            raise InvalidInputError(f"weight of vertex {bad} must be a positive finite number")

        e = np.array(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        e = e.reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= num_vertices):
            raise InvalidInputError("edge endpoint outside 0..n-1")
        loops = np.flatnonzero(e[:, 0] == e[:, 1])
        if loops.size:
            raise InvalidInputError(f"self-loop on vertex {int(e[loops[0], 0])}")

        lo = np.minimum(e[:, 0], e[:, 1])
        hi = np.maximum(e[:, 0], e[:, 1])
        order = np.lexsort((hi, lo))
        e = np.stack([lo[order], hi[order]], axis=1) if e.size else np.zeros((0, 2), dtype=np.int64)
        if e.shape[0] > 1:
            dup = np.flatnonzero(np.all(e[1:] == e[:-1], axis=1))
            if dup.size:
                u, v = e[dup[0] + 1]
                raise InvalidInputError(f"duplicate edge ({int(u)}, {int(v)})")

        offsets, neighbors, edge_ids = _build_csr(num_vertices, e)
        ids = tuple(str(x) for x in original_ids) if original_ids is not None else None
        if ids is not None and len(ids) != num_vertices:
            raise InvalidInputError("original_ids must have one entry per vertex")
        return cls(
            num_vertices=num_vertices,
            edges=_frozen(e),
            weights=_frozen(w),
            adj_offsets=_frozen(offsets),
            adj_neighbors=_frozen(neighbors),
            adj_edges=_frozen(edge_ids),
            original_ids=ids,
        )

    @property
    def num_edges(self) -> int:
        return int(self.edges.shape[0])

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.adj_offsets)

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.num_vertices else 0

    @property
    def average_degree(self) -> float:
        return 2.0 * self.num_edges / self.num_vertices if self.num_vertices else 0.0

    def neighbors(self, v: int) -> List[Tuple[int, int]]:
        start, stop = self.adj_offsets[v], self.adj_offsets[v + 1]
        return [
            (int(u), int(e))
            for u, e in zip(self.adj_neighbors[start:stop], self.adj_edges[start:stop])
        ]

    def edge_list(self) -> List[Tuple[int, int]]:
        return [(int(u), int(v)) for u, v in self.edges]

    def induced_subgraph(
        self, keep: np.ndarray, weights: Optional[np.ndarray] = None
    ) -> Tuple["WeightedGraph", np.ndarray, np.ndarray]:
        """Subgraph on the vertices where ``keep`` is true.

        Returns the subgraph plus the original ids of its vertices and of its
        edges (both in subgraph order). ``weights`` replaces ``self.weights``
        for the kept vertices when given (residual instances).
        """
        keep = np.asarray(keep, dtype=bool)
        vertex_ids = np.flatnonzero(keep)
        remap = np.full(self.num_vertices, -1, dtype=np.int64)
        remap[vertex_ids] = np.arange(vertex_ids.size, dtype=np.int64)
        edge_mask = keep[self.edges[:, 0]] & keep[self.edges[:, 1]] if self.num_edges else np.zeros(0, dtype=bool)
        edge_ids = np.flatnonzero(edge_mask)
        sub_edges = remap[self.edges[edge_ids]] if edge_ids.size else np.zeros((0, 2), dtype=np.int64)
        source = self.weights if weights is None else np.asarray(weights, dtype=np.float64)
        sub = WeightedGraph.from_edges(vertex_ids.size, sub_edges, source[vertex_ids])
        # remap preserves relative order, so edge order in sub matches edge_ids
        return sub, vertex_ids, edge_ids

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (
            self.num_vertices == other.num_vertices
            and np.array_equal(self.edges, other.edges)
            and np.array_equal(self.weights, other.weights)
        )

    def __hash__(self) -> int:
        return hash((self.num_vertices, self.edges.tobytes(), self.weights.tobytes()))


def _build_csr(n: int, edges: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    m = edges.shape[0]
    src = np.concatenate([edges[:, 0], edges[:, 1]])
    dst = np.concatenate([edges[:, 1], edges[:, 0]])
    eid = np.concatenate([np.arange(m, dtype=np.int64), np.arange(m, dtype=np.int64)])
    order = np.lexsort((dst, src))
    counts = np.bincount(src, minlength=n) if n else np.zeros(0, dtype=np.int64)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return offsets, dst[order].astype(np.int64), eid[order]


class WeightDist(BaseModel):
    """Vertex weight distribution: uniform(lo, hi), exponential(mean) or degree-proportional."""

    kind: WeightKind = "uniform"
    lo: float = 1.0
    hi: float = 1.0
    mean: float = 1.0
    scale: float = 1.0

    @classmethod
    def parse(cls, text: str) -> "WeightDist":
        """Parse ``uniform:LO:HI``, ``exponential:MEAN`` or ``degree:SCALE``."""
        parts = text.strip().split(":")
        head = parts[0].lower()
        try:
            if head == "uniform" and len(parts) == 3:
                return cls(kind="uniform", lo=float(parts[1]), hi=float(parts[2]))
            if head in ("exponential", "exp") and len(parts) == 2:
                return cls(kind="exponential", mean=float(parts[1]))
            if head in ("degree", "degree-proportional") and len(parts) in (1, 2):
                scale = float(parts[1]) if len(parts) == 2 else 1.0
                return cls(kind="degree-proportional", scale=scale)
        except ValueError as exc:
            raise GenSpecError("weight_dist", f"cannot parse '{text}': {exc}") from exc
        raise GenSpecError("weight_dist", f"cannot parse '{text}'")

    def describe(self) -> str:
        if self.kind == "uniform":
            return f"uniform:{self.lo}:{self.hi}"
        if self.kind == "exponential":
            return f"exponential:{self.mean}"
        return f"degree:{self.scale}"


class GenSpec(BaseModel):
    """Deterministic generator input: identical specs yield identical graphs."""

    model: GraphModel
    num_vertices: int = Field(ge=0)
    target_avg_degree: Optional[float] = None
    weight_dist: WeightDist = Field(default_factory=WeightDist)
    seed: int = 0
    center_weight: Optional[float] = None
    leaf_weight: Optional[float] = None

    def check(self) -> None:
        """Raise GenSpecError naming the first offending field."""
        n = self.num_vertices
        if self.model == "triangle" and n != 3:
            raise GenSpecError("num_vertices", "triangle model requires exactly 3 vertices")
        if self.model in ("gnp", "power-law"):
            if self.target_avg_degree is None:
                raise GenSpecError("target_avg_degree", f"required for model {self.model}")
            if self.target_avg_degree < 0:
                raise GenSpecError("target_avg_degree", "must be nonnegative")
            if n > 0 and self.target_avg_degree >= n:
                raise GenSpecError("target_avg_degree", f"must be < num_vertices ({n})")
        if not -(1 << 63) <= self.seed < (1 << 64):
            raise GenSpecError("seed", "must fit in 64 bits")
        dist = self.weight_dist
        if dist.kind == "uniform" and not (0.0 < dist.lo <= dist.hi):
            raise GenSpecError("weight_dist", "uniform bounds must satisfy 0 < lo <= hi")
        if dist.kind == "exponential" and dist.mean <= 0.0:
            raise GenSpecError("weight_dist", "exponential mean must be positive")
        if dist.kind == "degree-proportional" and dist.scale <= 0.0:
            raise GenSpecError("weight_dist", "degree scale must be positive")
        for name in ("center_weight", "leaf_weight"):
            value = getattr(self, name)
            if value is not None and value <= 0.0:
                raise GenSpecError(name, "must be positive")


__all__ = ["WeightedGraph", "WeightDist", "GenSpec", "GraphModel", "WeightKind"]
