import pytest
from pydantic import ValidationError

from mwvc_sim.config import describe_settings, get_settings


def test_defaults():
    settings = get_settings()
    assert settings.solver.DEFAULT_EPSILON == 0.1
    assert settings.mpc.PHASE_CAP == 200
    assert settings.mpc.STOP_DEGREE == 32.0
    assert settings.mpc.MEM_CAP_FACTOR == 16
    assert settings.oracle.AUTO_MAX_N == 40
    assert settings.report.SCHEMA_VERSION == "mwvc-report/1"


def test_env_override(fresh_settings):
    settings = fresh_settings(MWVC_PHASE_CAP=7, MWVC_LOG_LEVEL="debug")
    assert settings.mpc.PHASE_CAP == 7
    assert settings.logging.LOG_LEVEL == "DEBUG"
    assert get_settings() is settings


def test_invalid_epsilon_rejected(fresh_settings):
    with pytest.raises(ValidationError):
        fresh_settings(MWVC_DEFAULT_EPSILON=0.6)


def test_describe_settings_leaves_out_worker_count(fresh_settings):
    baseline = describe_settings()
    fresh_settings(MWVC_WORKERS=8)
    assert "WORKERS" not in describe_settings()["mpc"]
    assert describe_settings() == baseline


def test_dotenv_file_is_read(tmp_path, monkeypatch, fresh_settings):
    monkeypatch.delenv("MWVC_PHASE_CAP", raising=False)
    monkeypatch.delenv("MWVC_AUTO_MAX_N", raising=False)
    (tmp_path / ".env").write_text("MWVC_PHASE_CAP=9\nMWVC_AUTO_MAX_N=12\n")
    monkeypatch.chdir(tmp_path)
    settings = fresh_settings()
    assert settings.mpc.PHASE_CAP == 9
    assert settings.oracle.AUTO_MAX_N == 12


def test_environment_beats_dotenv(tmp_path, monkeypatch, fresh_settings):
    (tmp_path / ".env").write_text("MWVC_PHASE_CAP=9\n")
    monkeypatch.chdir(tmp_path)
    assert fresh_settings(MWVC_PHASE_CAP=11).mpc.PHASE_CAP == 11


def test_repetitions_setting(fresh_settings):
    assert get_settings().mpc.REPETITIONS == 1
    assert fresh_settings(MWVC_REPETITIONS=4).mpc.REPETITIONS == 4
    assert describe_settings()["mpc"]["REPETITIONS"] == 4
    with pytest.raises(ValidationError):
        fresh_settings(MWVC_REPETITIONS=0)
