from __future__ import annotations

from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator

from mwvc_sim.utils.rng import Stream, uniform_per_vertex

ThresholdMode = Literal["fixed-midpoint", "uniform-random"]


class ThresholdPolicy(BaseModel):
    """Freeze thresholds T_{v,t}, always inside [1-4eps, 1-2eps]."""

    mode: ThresholdMode = "fixed-midpoint"
    epsilon: float = Field(default=0.1, gt=0.0, lt=0.5)
    seed: int = 0

    @field_validator("seed")
    @classmethod
    def validate_seed(cls, v: int) -> int:
        if not -(1 << 63) <= v < (1 << 64):
            raise ValueError("seed must fit in 64 bits")
        return v

    @property
    def low(self) -> float:
        return 1.0 - 4.0 * self.epsilon

    @property
    def high(self) -> float:
        return 1.0 - 2.0 * self.epsilon

    def thresholds(self, n: int, t: int, vertex_keys: Optional[np.ndarray] = None) -> np.ndarray:
        """Thresholds for every vertex at iteration ``t``.

        ``vertex_keys`` maps local vertex ids to the ids that key the random
        stream, so a solve on an induced subgraph draws the same values the
        full graph would.
        """
        if self.mode == "fixed-midpoint":
            return np.full(n, 1.0 - 3.0 * self.epsilon)
        if vertex_keys is None:
            return uniform_per_vertex(self.seed, Stream.CENTRAL_THRESHOLD, n, self.low, self.high, t)
        keys = np.asarray(vertex_keys, dtype=np.int64)
        size = int(keys.max()) + 1 if keys.size else 0
        draws = uniform_per_vertex(self.seed, Stream.CENTRAL_THRESHOLD, size, self.low, self.high, t)
        return draws[keys]

    def threshold_for(self, vertex: int, t: int) -> float:
        """Single-vertex lookup, consistent with :meth:`thresholds`."""
        if self.mode == "fixed-midpoint":
            return 1.0 - 3.0 * self.epsilon
        return float(self.thresholds(vertex + 1, t)[vertex])


__all__ = ["ThresholdPolicy", "ThresholdMode"]
