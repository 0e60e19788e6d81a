import json

import pytest

from mwvc_sim.cli.commands import CLICommands
from mwvc_sim.cli.report import load_report, reproducibility_hash, write_report
from mwvc_sim.utils.exceptions import ReportSchemaError


@pytest.fixture
def report(triangle_369):
    return CLICommands.run(triangle_369, CLICommands.describe_input(triangle_369), "central", 0.1, seed=0)


def test_report_roundtrip(tmp_path, report):
    path = tmp_path / "r.json"
    write_report(report, path)
    loaded = load_report(path)
    assert loaded.cover == [0, 1]
    assert loaded.reproducibility_hash == report.reproducibility_hash
    assert reproducibility_hash(loaded) == report.reproducibility_hash


def test_hash_ignores_wall_time(report):
    before = report.reproducibility_hash
    report.wall_time = 123.0
    assert reproducibility_hash(report) == before
    report.cover_weight += 1.0
    assert reproducibility_hash(report) != before


def test_load_rejects_garbage(tmp_path):
    path = tmp_path / "r.json"
    path.write_text("{not json")
    with pytest.raises(ReportSchemaError):
        load_report(path)


def test_load_rejects_missing_fields(tmp_path, report):
    path = tmp_path / "r.json"
    payload = json.loads(report.model_dump_json())
    del payload["input"]
    path.write_text(json.dumps(payload))
    with pytest.raises(ReportSchemaError, match="does not match schema"):
        load_report(path)


def test_verify_detects_graph_mismatch(report, single_edge):
    failures = CLICommands.verify(single_edge, report)
    assert failures and failures[0].startswith("graph mismatch")


def test_attach_oracle_modes(triangle_369, fresh_settings):
    assert CLICommands.attach_oracle(triangle_369, "off") is None
    assert CLICommands.attach_oracle(triangle_369, "auto").opt_weight == 9.0
    fresh_settings(MWVC_AUTO_MAX_N=2)
    assert CLICommands.attach_oracle(triangle_369, "auto") is None
