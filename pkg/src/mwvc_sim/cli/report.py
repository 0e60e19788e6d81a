"""Run reports: one self-describing JSON document per run."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, ValidationError

from mwvc_sim.config import get_settings
from mwvc_sim.mpc.models import PhaseRecord, SaturationCertificate
from mwvc_sim.oracle.validators import FeasibilityReport
from mwvc_sim.utils.exceptions import ReportSchemaError

Algorithm = Literal["central", "mpc", "exact"]

# fields left out of the reproducibility hash
_UNHASHED = {"wall_time", "reproducibility_hash"}


class InputDescriptor(BaseModel):
    path: Optional[str] = None
    gen_spec: Optional[Dict[str, Any]] = None
    num_vertices: int
    num_edges: int
    average_degree: float


class RunReport(BaseModel):
    schema_version: str = Field(default_factory=lambda: get_settings().report.SCHEMA_VERSION)
    algorithm: Algorithm
    input: InputDescriptor
    config: Dict[str, Any] = Field(default_factory=dict)
    seed: int = 0
    epsilon: float
    cover: List[int] = Field(default_factory=list)
    cover_size: int = 0
    cover_weight: float = 0.0
    matching_value: Optional[float] = None
    opt_weight: Optional[float] = None
    ratio_vs_matching: Optional[float] = None
    ratio_vs_opt: Optional[float] = None
    ratio_bound: Optional[float] = None
    iterations: Optional[int] = None
    phases: Optional[int] = None
    rounds: Optional[int] = None
    max_machine_words: Optional[int] = None
    max_machine_edges: Optional[int] = None
    max_words_per_n: Optional[float] = None
    phase_records: List[PhaseRecord] = Field(default_factory=list)
    certificate: Optional[SaturationCertificate] = None
    feasibility: Optional[FeasibilityReport] = None
    matching: Optional[List[float]] = None
    repetition: Optional[int] = None
    repetition_weights: Optional[List[Optional[float]]] = None
    checks: Dict[str, bool] = Field(default_factory=dict)
    failure: Optional[str] = None
    wall_time: Optional[float] = None
    reproducibility_hash: Optional[str] = None

    @property
    def checks_passed(self) -> bool:
        return all(self.checks.values())

    def seal(self) -> "RunReport":
        self.reproducibility_hash = reproducibility_hash(self)
        return self


def reproducibility_hash(report: RunReport) -> str:
    """sha256 over the canonical JSON of every field except wall time."""
    payload = report.model_dump(mode="json", exclude=_UNHASHED)
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def dump_report(report: RunReport) -> str:
    return report.model_dump_json(indent=2)


def write_report(report: RunReport, path: Path) -> None:
    path.write_text(dump_report(report) + "\n", encoding="utf-8")


def load_report(path: Path) -> RunReport:
    """Read a report, rejecting unknown schema versions and malformed payloads."""
    text = path.read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ReportSchemaError(f"report is not valid JSON: {exc}") from exc
    expected = get_settings().report.SCHEMA_VERSION
    if not isinstance(raw, dict) or raw.get("schema_version") != expected:
        found = raw.get("schema_version") if isinstance(raw, dict) else None
        raise ReportSchemaError(f"expected schema '{expected}', found '{found}'")
    try:
        return RunReport.model_validate(raw)
    except ValidationError as exc:
        raise ReportSchemaError(f"report does not match schema: {exc}") from exc


__all__ = [
    "Algorithm",
    "InputDescriptor",
    "RunReport",
    "dump_report",
    "load_report",
    "reproducibility_hash",
    "write_report",
]
