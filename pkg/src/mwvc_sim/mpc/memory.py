from __future__ import annotations

from typing import Any, Dict, Iterable, List, Optional, Sequence

from mwvc_sim.config import get_settings
from mwvc_sim.mpc.models import MachineSubgraph
from mwvc_sim.utils.exceptions import MemoryCapExceededError
from mwvc_sim.utils.logging import get_logger


def machine_loads(subgraphs: Iterable[MachineSubgraph]) -> List[int]:
    """Words held by each machine: two per local edge, two per vertex."""
    return [sub.words for sub in subgraphs]


class MachineMemoryLedger:
    """Per-machine word accounting with a soft warning level and a hard cap."""

    def __init__(
        self,
        n: int,
        cap_words: Optional[int] = None,
        enforce: Optional[bool] = None,
        warn_ratio: Optional[float] = None,
    ) -> None:
        self.settings = get_settings()
        self.logger = get_logger("mpc.memory")
        self.n = max(n, 1)
        self.cap = cap_words if cap_words is not None else self.settings.mpc.MEM_CAP_FACTOR * self.n
        self.enforce = self.settings.mpc.ENFORCE_MEM if enforce is None else enforce
        self.warn = self.settings.mpc.MEM_WARN_RATIO if warn_ratio is None else warn_ratio
        self.peak_words = 0
        self.peak_machine: Optional[int] = None
        self.peak_phase: Optional[int] = None
        self.phases: List[Dict[str, Any]] = []

    def record(self, phase: int, words: Sequence[int]) -> bool:
        """Record one phase's per-machine loads; returns whether all fit the cap."""
        top = max(words, default=0)
        top_machine = int(max(range(len(words)), key=lambda i: words[i])) if words else None
        self.phases.append({"phase": phase, "max_words": top, "machine": top_machine})
        if top > self.peak_words:
            self.peak_words = top
            self.peak_machine = top_machine
            self.peak_phase = phase

        if top > self.cap:
            if self.enforce:
                raise MemoryCapExceededError(phase, top_machine or 0, top, self.cap)
            self.logger.warning(
                "machine_over_cap", phase=phase, machine=top_machine, words=top, cap=self.cap
            )
            return False
        if top >= self.warn * self.cap:
            self.logger.info(
                "machine_near_cap", phase=phase, machine=top_machine, words=top, cap=self.cap
            )
        return True

    def health_state(self) -> str:
        if self.peak_words > self.cap:
            return "critical"
        if self.peak_words >= self.warn * self.cap:
            return "warning"
        return "ok"

    def summary(self) -> Dict[str, Any]:
        return {
            "cap_words": self.cap,
            "peak_words": self.peak_words,
            "peak_words_per_n": self.peak_words / self.n,
            "peak_machine": self.peak_machine,
            "peak_phase": self.peak_phase,
            "warn_ratio": self.warn,
            "state": self.health_state(),
        }


__all__ = ["MachineMemoryLedger", "machine_loads"]
