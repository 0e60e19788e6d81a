"""
mwvc-sim

A desk-scale simulator of the Massively Parallel Computation model for
(2+eps)-approximate minimum-weight vertex cover. It pairs a centralized
primal-dual solver with a phase-based MPC simulation that compresses many
primal-dual iterations into one round through a random vertex partition, and
ships an exact oracle plus validators for every certificate the algorithms
produce.
"""

__version__ = "0.1.0"
__license__ = "AGPL-3.0"
__description__ = "MPC simulator for approximate minimum-weight vertex cover"

# Core exports
from mwvc_sim.config import settings

# Graph exports
from mwvc_sim.graph import GenSpec, WeightDist, WeightedGraph, generate, load_graph, save_graph

# Solver exports
from mwvc_sim.central import CentralResult, ThresholdPolicy, run_centralized
from mwvc_sim.mpc import MpcConfig, MpcResult, run_mpc

# Oracle exports
from mwvc_sim.oracle import (
    ExactResult,
    exact_mwvc,
    ratio_report,
    validate_cover,
    validate_fractional_matching,
)

# Preset exports
from mwvc_sim.protocols.presets import PRESETS

__all__ = [
    # Package metadata
    "__version__",
    "__license__",
    "__description__",

    # Core
    "settings",

    # Graph
    "GenSpec",
    "WeightDist",
    "WeightedGraph",
    "generate",
    "load_graph",
    "save_graph",

    # Solvers
    "CentralResult",
    "ThresholdPolicy",
    "run_centralized",
    "MpcConfig",
    "MpcResult",
    "run_mpc",

    # Oracle
    "ExactResult",
    "exact_mwvc",
    "ratio_report",
    "validate_cover",
    "validate_fractional_matching",

    # Presets
    "PRESETS",
]
