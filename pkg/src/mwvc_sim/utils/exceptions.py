from __future__ import annotations

from typing import Any


class MwvcSimError(Exception):
    """Base class for all mwvc-sim errors."""


class InvalidInputError(MwvcSimError, ValueError):
    """A caller passed arguments that violate an operation's preconditions."""


class GenSpecError(InvalidInputError):
    def __init__(self, field: str, message: str) -> None:
        super().__init__(f"invalid generator spec field '{field}': {message}")
        self.field = field


class GraphFormatError(MwvcSimError):
    def __init__(self, message: str, line: int | None = None) -> None:
        where = f" at line {line}" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line


class InvariantViolationError(MwvcSimError):
    def __init__(self, invariant: str, message: str, witness: Any = None) -> None:
        super().__init__(f"invariant '{invariant}' violated: {message}")
        self.invariant = invariant
        self.witness = witness


class IterationLimitExceededError(MwvcSimError):
    def __init__(self, max_iters: int, active_edges: int) -> None:
        super().__init__(
            f"centralized solver exceeded max_iters={max_iters} with {active_edges} active edges"
        )
        self.max_iters = max_iters
        self.active_edges = active_edges


class PhaseCapExceededError(MwvcSimError):
    def __init__(self, phase_cap: int, residual_degree: float) -> None:
        super().__init__(
            f"MPC simulation exceeded phase cap {phase_cap} (residual average degree {residual_degree:.3f})"
        )
        self.phase_cap = phase_cap
        self.residual_degree = residual_degree


class MemoryCapExceededError(MwvcSimError):
    def __init__(self, phase: int, machine: int, words: int, cap: int) -> None:
        super().__init__(
            f"machine {machine} in phase {phase} holds {words} words, cap is {cap}"
        )
        self.phase = phase
        self.machine = machine
        self.words = words
        self.cap = cap


class OracleCapExceededError(MwvcSimError):
    def __init__(self, node_cap: int) -> None:
        super().__init__(f"instance too large for oracle: node cap {node_cap} exceeded")
        self.node_cap = node_cap


class ReportSchemaError(MwvcSimError):
    """A stored report does not match the expected schema."""


__all__ = [
    "MwvcSimError",
    "InvalidInputError",
    "GenSpecError",
    "GraphFormatError",
    "InvariantViolationError",
    "IterationLimitExceededError",
    "PhaseCapExceededError",
    "MemoryCapExceededError",
    "OracleCapExceededError",
    "ReportSchemaError",
]
