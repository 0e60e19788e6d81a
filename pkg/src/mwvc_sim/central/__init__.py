"""Centralized primal-dual minimum-weight vertex cover."""

from .solver import (
    CentralResult,
    CentralState,
    IterationSnapshot,
    init_edge_weights,
    iteration_guard,
    run_centralized,
    solve_residual,
    vertex_loads,
)
from .thresholds import ThresholdMode, ThresholdPolicy

__all__ = [
    "CentralResult",
    "CentralState",
    "IterationSnapshot",
    "ThresholdMode",
    "ThresholdPolicy",
    "init_edge_weights",
    "iteration_guard",
    "run_centralized",
    "solve_residual",
    "vertex_loads",
]
