"""Vertex-weighted graphs, deterministic generators and the graph text format."""

from .generators import generate
from .io import load_graph, save_graph
from .models import GenSpec, WeightDist, WeightedGraph

__all__ = [
    "GenSpec",
    "WeightDist",
    "WeightedGraph",
    "generate",
    "load_graph",
    "save_graph",
]
