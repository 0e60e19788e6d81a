"""Sequential simulation of the phase-based MPC vertex cover algorithm."""

from .checks import check_sparsification, orient_edges, saturation_certificate
from .driver import run_mpc, run_phase, run_single
from .memory import MachineMemoryLedger, machine_loads
from .models import (
    MachineSubgraph,
    MpcConfig,
    MpcResult,
    MpcState,
    PhaseRecord,
    SaturationCertificate,
    SparsificationCheck,
    VertexClass,
)
from .phase import (
    PostPhaseSummary,
    build_machine_subgraphs,
    compute_residual_weights,
    finalize_edge_weights,
    high_edges,
    initial_high_weights,
    local_simulate,
    partition_vertices,
    phase_thresholds,
    post_phase_freeze,
    select_high,
)

__all__ = [
    "MachineMemoryLedger",
    "MachineSubgraph",
    "MpcConfig",
    "MpcResult",
    "MpcState",
    "PhaseRecord",
    "PostPhaseSummary",
    "SaturationCertificate",
    "SparsificationCheck",
    "VertexClass",
    "build_machine_subgraphs",
    "check_sparsification",
    "compute_residual_weights",
    "finalize_edge_weights",
    "high_edges",
    "initial_high_weights",
    "local_simulate",
    "machine_loads",
    "orient_edges",
    "partition_vertices",
    "phase_thresholds",
    "post_phase_freeze",
    "run_mpc",
    "run_single",
    "run_phase",
    "saturation_certificate",
    "select_high",
]
