from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator

from mwvc_sim.graph.models import WeightedGraph
from mwvc_sim.protocols.presets import PRESETS, PresetName, StopRule


class VertexClass(IntEnum):
    FROZEN = 0
    HIGH = 1
    INACTIVE = 2


class MpcConfig(BaseModel):
    """Constants of one MPC simulation run.

    Built from a preset with :meth:`from_preset`; any field can be overridden
    for sensitivity experiments.
    """

    epsilon: float = Field(default=0.1, gt=0.0, lt=0.5)
    preset: PresetName = "practical"
    alpha: float = Field(default=0.75, gt=0.0, le=1.0)
    iter_coeff: float = Field(gt=0.0)
    bias_base: float = Field(default=2.0, ge=0.0)
    bias_growth: float = Field(default=15.0, ge=1.0)
    bias_exponent: float = -0.2
    stop_rule: StopRule = "fixed"
    stop_degree: float = Field(default=32.0, ge=1.0)
    stop_log_power: float = 30.0
    mem_cap_words: Optional[int] = Field(default=None, ge=1)
    enforce_mem: bool = False
    phase_cap: int = Field(default=200, ge=1)
    repetitions: int = Field(default=1, ge=1)
    seed: int = 0

    @field_validator("seed")
    @classmethod
    def validate_seed(cls, v: int) -> int:
        if not -(1 << 63) <= v < (1 << 64):
            raise ValueError("seed must fit in 64 bits")
        return v

    @classmethod
    def from_preset(
        cls,
        preset: PresetName = "practical",
        epsilon: float = 0.1,
        seed: int = 0,
        **overrides: object,
    ) -> "MpcConfig":
        from mwvc_sim.config import get_settings

        settings = get_settings()
        constants = PRESETS.get(preset)
        values: Dict[str, object] = {
            "epsilon": epsilon,
            "preset": preset,
            "alpha": constants.alpha,
            "iter_coeff": constants.resolve_iter_coeff(epsilon),
            "bias_base": constants.bias_base,
            "bias_growth": constants.bias_growth,
            "bias_exponent": constants.bias_exponent,
            "stop_rule": constants.stop_rule,
            "stop_degree": settings.mpc.STOP_DEGREE,
            "stop_log_power": constants.stop_log_power,
            "enforce_mem": settings.mpc.ENFORCE_MEM,
            "phase_cap": settings.mpc.PHASE_CAP,
            "repetitions": settings.mpc.REPETITIONS,
            "seed": seed,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def resolved_stop_degree(self, n: int) -> float:
        if self.stop_rule == "log-power":
            return math.log(max(n, 2)) ** self.stop_log_power
        return self.stop_degree

    def machines(self, d: float) -> int:
        return max(1, int(math.floor(math.sqrt(d))))

    def iterations(self, m: int) -> int:
        return max(1, int(math.floor(self.iter_coeff * math.log(m)))) if m > 1 else 1

    def bias_factor(self, t: int, m: int) -> float:
        """Bias per unit of residual weight at local iteration t."""
        return self.bias_base * (m ** self.bias_exponent) * (self.bias_growth**t)

    def resolved_mem_cap(self, n: int, factor: int) -> int:
        return self.mem_cap_words if self.mem_cap_words is not None else factor * max(n, 1)


@dataclass
class MpcState:
    """Inter-phase state; only mutated between phases."""

    vertex_frozen: np.ndarray
    residual_weight: np.ndarray
    residual_degree: np.ndarray
    vertex_class: np.ndarray
    edge_frozen: np.ndarray
    x_final: np.ndarray
    freeze_phase: np.ndarray
    phase: int = 0

    @classmethod
    def initial(cls, graph: WeightedGraph) -> "MpcState":
        n, m = graph.num_vertices, graph.num_edges
        return cls(
            vertex_frozen=np.zeros(n, dtype=bool),
            residual_weight=graph.weights.astype(np.float64).copy(),
            residual_degree=graph.degrees.astype(np.int64).copy(),
            vertex_class=np.full(n, VertexClass.INACTIVE, dtype=np.int8),
            edge_frozen=np.zeros(m, dtype=bool),
            x_final=np.full(m, np.nan, dtype=np.float64),
            freeze_phase=np.full(n, -1, dtype=np.int64),
        )

    def residual_average_degree(self) -> float:
        """d = (1/n) * sum of residual degrees over nonfrozen vertices."""
        n = self.vertex_frozen.shape[0]
        if n == 0:
            return 0.0
        return float(self.residual_degree[~self.vertex_frozen].sum()) / n

    def nonfrozen_edge_count(self, graph: WeightedGraph) -> int:
        if graph.num_edges == 0:
            return 0
        alive = ~self.vertex_frozen
        return int((alive[graph.edges[:, 0]] & alive[graph.edges[:, 1]]).sum())


@dataclass(frozen=True)
class MachineSubgraph:
    """Induced subgraph E[V_i] held by one machine for one phase."""

    machine: int
    vertex_ids: np.ndarray
    edge_ids: np.ndarray
    local_edges: np.ndarray
    x0: np.ndarray
    residual_weight: np.ndarray

    @property
    def num_vertices(self) -> int:
        return int(self.vertex_ids.shape[0])

    @property
    def num_edges(self) -> int:
        return int(self.edge_ids.shape[0])

    @property
    def words(self) -> int:
        # endpoints per edge, one id and one weight per vertex
        return 2 * self.num_edges + 2 * self.num_vertices


class SparsificationCheck(BaseModel):
    out_degree_ok: bool
    max_active_out_degree_excess: float
    worst_vertex: Optional[int] = None
    nonfrozen_edges_after: int
    sparsification_bound: float
    total_ok: bool

    @property
    def passed(self) -> bool:
        return self.out_degree_ok and self.total_ok


class PhaseRecord(BaseModel):
    phase: int
    d: float
    m: int
    iterations: int
    high_count: int
    inactive_count: int
    per_machine_edges: List[int] = Field(default_factory=list)
    per_machine_words: List[int] = Field(default_factory=list)
    frozen_local: int = 0
    frozen_saturated: int = 0
    zeroed_cross_edges: int = 0
    nonfrozen_edges_after: int = 0
    sparsification_bound: float = 0.0
    max_active_out_degree_excess: float = 0.0
    checks: Dict[str, bool] = Field(default_factory=dict)

    @property
    def max_machine_edges(self) -> int:
        return max(self.per_machine_edges, default=0)

    @property
    def max_machine_words(self) -> int:
        return max(self.per_machine_words, default=0)


class SaturationCertificate(BaseModel):
    """Per-vertex load report of a finished MPC run."""

    epsilon: float
    cover_size: int
    min_cover_load_ratio: Optional[float] = None
    max_load_ratio: Optional[float] = None
    below_lower_count: int = 0
    above_upper_count: int = 0
    below_lower_vertices: List[int] = Field(default_factory=list)
    above_upper_vertices: List[int] = Field(default_factory=list)
    ratio_certificate_ok: bool = True

    @property
    def saturation_ok(self) -> bool:
        return self.below_lower_count == 0

    @property
    def near_feasible(self) -> bool:
        return self.above_upper_count == 0


@dataclass
class MpcResult:
    cover: Tuple[int, ...]
    cover_weight: float
    matching_value: float
    phases: int
    mpc_rounds: int
    phase_records: List[PhaseRecord]
    certificate: SaturationCertificate
    x: np.ndarray
    config: MpcConfig
    central_iterations: int = 0
    freeze_phase: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    # best-of-k bookkeeping; a single run is copy 0 of 1
    repetition: int = 0
    repetition_weights: List[Optional[float]] = field(default_factory=list)

    @property
    def epsilon(self) -> float:
        return self.config.epsilon

    @property
    def max_machine_edges(self) -> int:
        return max((r.max_machine_edges for r in self.phase_records), default=0)

    @property
    def max_machine_words(self) -> int:
        return max((r.max_machine_words for r in self.phase_records), default=0)

    @property
    def sparsification_ok(self) -> bool:
        return all(
            r.checks.get("out_degree", True) and r.checks.get("total_nonfrozen", True)
            for r in self.phase_records
        )


__all__ = [
    "VertexClass",
    "MpcConfig",
    "MpcState",
    "MachineSubgraph",
    "SparsificationCheck",
    "PhaseRecord",
    "SaturationCertificate",
    "MpcResult",
]
