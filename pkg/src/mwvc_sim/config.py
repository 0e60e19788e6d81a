"""
Configuration management for mwvc-sim.

All runtime knobs come from environment variables (or a local ``.env``),
validated and type-converted with Pydantic Settings. Algorithm presets live in
``mwvc_sim.protocols.presets``; this module only holds the ambient settings
that surround a run.
"""

from __future__ import annotations

from typing import Any, Dict

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class LoggingSettings(BaseSettings):
    """Logging configuration settings"""

    model_config = SettingsConfigDict(
        env_prefix="MWVC_", env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )

    LOG_LEVEL: str = Field(default="WARNING", description="Logging level")
    LOG_FORMAT: str = Field(default="text", description="Log format (json or text)")

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(f"LOG_LEVEL must be one of: {valid_levels}")
        return v.upper()

    @field_validator("LOG_FORMAT")
    @classmethod
    def validate_log_format(cls, v: str) -> str:
        if v not in ("json", "text"):
            raise ValueError("LOG_FORMAT must be 'json' or 'text'")
        return v


class SolverSettings(BaseSettings):
    """Centralized primal-dual solver settings"""

    model_config = SettingsConfigDict(
        env_prefix="MWVC_", env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )

    DEFAULT_EPSILON: float = Field(default=0.1, description="Default epsilon for runs")
    FEASIBILITY_TOLERANCE: float = Field(
        default=1e-9,
        description="Relative tolerance for dual feasibility assertions",
    )
    CENTRAL_ITER_SLACK: int = Field(
        default=0,
        description="Extra iterations allowed past the log(Delta) termination guard",
    )

    @field_validator("DEFAULT_EPSILON")
    @classmethod
    def validate_epsilon(cls, v: float) -> float:
        if not 0.0 < v < 0.5:
            raise ValueError("DEFAULT_EPSILON must lie in (0, 0.5)")
        return v

    @field_validator("FEASIBILITY_TOLERANCE")
    @classmethod
    def validate_tolerance(cls, v: float) -> float:
        if v < 0.0:
            raise ValueError("FEASIBILITY_TOLERANCE must be nonnegative")
        return v


class MpcSettings(BaseSettings):
    """MPC simulation settings"""

    model_config = SettingsConfigDict(
        env_prefix="MWVC_", env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )

    PHASE_CAP: int = Field(default=200, description="Maximum number of phases before aborting")
    STOP_DEGREE: float = Field(default=32.0, description="Practical phase-loop stop threshold")
    MEM_CAP_FACTOR: int = Field(default=16, description="Per-machine word cap as a multiple of n")
    MEM_WARN_RATIO: float = Field(default=0.8, description="Fraction of the cap that triggers a warning")
    ENFORCE_MEM: bool = Field(default=False, description="Raise when a machine exceeds its cap")
    WORKERS: int = Field(default=1, description="Thread pool size for per-machine simulation")
    REPETITIONS: int = Field(default=1, description="Independent MPC copies per run; the lightest cover wins")

    @field_validator("PHASE_CAP", "MEM_CAP_FACTOR", "WORKERS", "REPETITIONS")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("value must be >= 1")
        return v

    @field_validator("STOP_DEGREE")
    @classmethod
    def validate_stop_degree(cls, v: float) -> float:
        if v < 1.0:
            raise ValueError("STOP_DEGREE must be >= 1")
        return v

    @field_validator("MEM_WARN_RATIO")
    @classmethod
    def validate_warn_ratio(cls, v: float) -> float:
        if not 0.0 < v <= 1.0:
            raise ValueError("MEM_WARN_RATIO must lie in (0, 1]")
        return v


class OracleSettings(BaseSettings):
    """Exact oracle and ratio reporting settings"""

    model_config = SettingsConfigDict(
        env_prefix="MWVC_", env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )

    NODE_CAP: int = Field(default=10_000_000, description="Branch-and-bound node cap")
    RATIO_SLACK: float = Field(default=1e-9, description="Absolute slack on ratio pass/fail")
    BRUTE_FORCE_MAX_N: int = Field(default=20, description="Largest n for 2^n enumeration")
    AUTO_MAX_N: int = Field(default=40, description="Largest n for which --oracle=auto attempts an exact solve")


class ReportSettings(BaseSettings):
    """Run report settings"""

    model_config = SettingsConfigDict(
        env_prefix="MWVC_", env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )

    SCHEMA_VERSION: str = Field(default="mwvc-report/1", description="Report schema tag")
    EMIT_MATCHING: bool = Field(default=False, description="Store x_e per edge in reports")


class Settings(BaseSettings):
    """Main settings class that combines all configuration sections"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    logging: LoggingSettings = Field(default_factory=LoggingSettings)
    solver: SolverSettings = Field(default_factory=SolverSettings)
    mpc: MpcSettings = Field(default_factory=MpcSettings)
    oracle: OracleSettings = Field(default_factory=OracleSettings)
    report: ReportSettings = Field(default_factory=ReportSettings)

    def __init__(self, **kwargs: Any) -> None:
        super().__init__(**kwargs)
        # Initialize subsections with environment variables
        self.logging = LoggingSettings()
        self.solver = SolverSettings()
        self.mpc = MpcSettings()
        self.oracle = OracleSettings()
        self.report = ReportSettings()


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get the global settings instance"""
    return settings


def reload_settings() -> Settings:
    """Reload settings from environment"""
    global settings
    settings = Settings()
    return settings


def describe_settings() -> Dict[str, Any]:
    """Flat view of the active settings, echoed into run reports."""
    current = get_settings()
    return {
        "solver": current.solver.model_dump(),
        "mpc": current.mpc.model_dump(exclude={"WORKERS"}),
        "oracle": current.oracle.model_dump(),
    }
