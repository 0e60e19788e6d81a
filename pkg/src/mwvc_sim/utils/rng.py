"""Counter-based keyed random streams.

Every random quantity in a run is addressed by a key (seed, stream, phase[, t]).
The key seeds a Philox generator, and per-vertex values are drawn as a full
length-n array indexed by vertex id, so the value a vertex sees never depends
on which machine or worker asks for it.
"""

from __future__ import annotations

from enum import IntEnum

import numpy as np

_SEED_MASK = (1 << 64) - 1


class Stream(IntEnum):
    """Stream tags keep independent uses of the same seed apart."""

    GENERATOR = 1
    WEIGHTS = 2
    CENTRAL_THRESHOLD = 3
    MPC_THRESHOLD = 4
    PARTITION = 5
    REPETITION = 6


def keyed_generator(seed: int, stream: Stream, *counters: int) -> np.random.Generator:
    """Return an independent generator for the key (seed, stream, *counters)."""
    entropy = [int(seed) & _SEED_MASK, int(stream), *(int(c) for c in counters)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def uniform_per_vertex(
    seed: int, stream: Stream, n: int, low: float, high: float, *counters: int
) -> np.ndarray:
    """One uniform draw in [low, high] per vertex id for the given key."""
    rng = keyed_generator(seed, stream, *counters)
    return rng.uniform(low, high, size=n)


def integers_per_vertex(seed: int, stream: Stream, n: int, high: int, *counters: int) -> np.ndarray:
    """One integer draw in [0, high) per vertex id for the given key."""
    rng = keyed_generator(seed, stream, *counters)
    return rng.integers(0, high, size=n, dtype=np.int64)


def derive_seed(seed: int, stream: Stream, *counters: int) -> int:
    """A fresh nonnegative 62-bit seed for the key (seed, stream, *counters)."""
    rng = keyed_generator(seed, stream, *counters)
    return int(rng.integers(0, 1 << 62, dtype=np.int64))


__all__ = ["Stream", "derive_seed", "keyed_generator", "uniform_per_vertex", "integers_per_vertex"]
