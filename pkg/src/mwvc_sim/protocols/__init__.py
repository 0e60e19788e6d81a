"""Declarative constant tables shared across modules."""

from .presets import PRESETS, PresetConstants, PresetName, PresetTable, StopRule

__all__ = ["PRESETS", "PresetConstants", "PresetName", "PresetTable", "StopRule"]
