from __future__ import annotations

import math
from typing import Dict, Literal, Optional

from pydantic import BaseModel

PresetName = Literal["paper", "practical"]
StopRule = Literal["fixed", "log-power"]


class PresetConstants(BaseModel):
    """Analysis constants of the phase-based simulation.

    ``iter_coeff=None`` means theta = 1 / (2 ln(1/(1-eps))), which gives
    (1/(1-eps))^I close to sqrt(m).
    """

    alpha: float
    iter_coeff: Optional[float]
    bias_base: float = 2.0
    bias_growth: float = 15.0
    bias_exponent: float = -0.2
    stop_rule: StopRule = "fixed"
    stop_log_power: float = 30.0

    def resolve_iter_coeff(self, epsilon: float) -> float:
        if self.iter_coeff is not None:
            return self.iter_coeff
        return 1.0 / (2.0 * math.log(1.0 / (1.0 - epsilon)))


class PresetTable(BaseModel):
    presets: Dict[str, PresetConstants] = {
        # (ln n)^30 stop rule: the phase loop never runs at desk scale
        "paper": PresetConstants(
            alpha=0.95,
            iter_coeff=1.0 / (10.0 * math.log(15.0)),
            stop_rule="log-power",
        ),
        "practical": PresetConstants(alpha=0.75, iter_coeff=None),
    }

    def get(self, name: str) -> PresetConstants:
        try:
            return self.presets[name]
        except KeyError:
            raise ValueError(f"unknown preset '{name}', expected one of {sorted(self.presets)}") from None


PRESETS = PresetTable()


__all__ = ["PresetName", "StopRule", "PresetConstants", "PresetTable", "PRESETS"]
