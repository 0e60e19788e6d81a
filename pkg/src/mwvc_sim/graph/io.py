"""Line-oriented graph text format.

::

    # comment
    p <n> <m>
    v <id> <weight>     (exactly n lines)
    e <u> <v>           (exactly m lines)

Vertex ids in a file are arbitrary tokens; loading remaps them to dense ids in
order of their ``v`` lines and keeps the originals on ``graph.original_ids``.
Saving always writes dense ids, edges sorted with ``u < v``.
"""

from __future__ import annotations

import math
from typing import Dict, List, Optional, TextIO, Tuple

from mwvc_sim.graph.models import WeightedGraph
from mwvc_sim.utils.exceptions import GraphFormatError, InvalidInputError


def load_graph(stream: TextIO) -> WeightedGraph:
    header: Optional[Tuple[int, int]] = None
    header_line = 0
    ids: Dict[str, int] = {}
    original_ids: List[str] = []
    weights: List[float] = []
    raw_edges: List[Tuple[str, str, int]] = []

    for lineno, raw in enumerate(stream, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "p":
            if header is not None:
                raise GraphFormatError("duplicate header", lineno)
            if len(tokens) != 3:
                raise GraphFormatError("malformed header, expected 'p <n> <m>'", lineno)
            try:
                n, m = int(tokens[1]), int(tokens[2])
            except ValueError:
                raise GraphFormatError("malformed header, counts must be integers", lineno) from None
            if n < 0 or m < 0:
                raise GraphFormatError("malformed header, counts must be nonnegative", lineno)
            header, header_line = (n, m), lineno
            continue
        if header is None:
            raise GraphFormatError("missing header before data", lineno)
        if kind == "v":
            if len(tokens) != 3:
                raise GraphFormatError("malformed vertex line, expected 'v <id> <weight>'", lineno)
            vid = tokens[1]
            if vid in ids:
                raise GraphFormatError(f"duplicate vertex id {vid}", lineno)
            try:
                weight = float(tokens[2])
            except ValueError:
                raise GraphFormatError(f"malformed weight '{tokens[2]}'", lineno) from None
            if not math.isfinite(weight) or weight <= 0.0:
                raise GraphFormatError(f"weight must be positive, got {tokens[2]}", lineno)
            ids[vid] = len(original_ids)
            original_ids.append(vid)
            weights.append(weight)
        elif kind == "e":
            if len(tokens) != 3:
                raise GraphFormatError("malformed edge line, expected 'e <u> <v>'", lineno)
            if tokens[1] == tokens[2]:
                raise GraphFormatError("self-loop", lineno)
            raw_edges.append((tokens[1], tokens[2], lineno))
        else:
            raise GraphFormatError(f"unknown line type '{kind}'", lineno)

    if header is None:
        raise GraphFormatError("missing header 'p <n> <m>'")
    n, m = header
    if len(original_ids) != n:
        raise GraphFormatError(f"header declares {n} vertices, found {len(original_ids)}", header_line)
    if len(raw_edges) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(raw_edges)}", header_line)

    seen: set[Tuple[int, int]] = set()
    edges: List[Tuple[int, int]] = []
    for a, b, lineno in raw_edges:
        if a not in ids or b not in ids:
            missing = a if a not in ids else b
            raise GraphFormatError(f"dangling vertex id {missing}", lineno)
        u, v = ids[a], ids[b]
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge ({a}, {b})", lineno)
        seen.add(key)
        edges.append(key)

    try:
        return WeightedGraph.from_edges(n, edges, weights, original_ids=original_ids)
    except InvalidInputError as exc:  # pragma: no cover - parse checks above are stricter
        raise GraphFormatError(str(exc)) from exc


def save_graph(graph: WeightedGraph, stream: TextIO) -> None:
    stream.write(f"p {graph.num_vertices} {graph.num_edges}\n")
    for vid, weight in enumerate(graph.weights):
        stream.write(f"v {vid} {float(weight)!r}\n")
    for u, v in graph.edges:
        stream.write(f"e {int(u)} {int(v)}\n")


__all__ = ["load_graph", "save_graph"]
