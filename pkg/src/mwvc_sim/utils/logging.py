from __future__ import annotations

import logging
import sys
from typing import Literal

import structlog

from mwvc_sim.config import get_settings


def _configure_logging(level: str, fmt: Literal["json", "text"]) -> None:
    """Configure stdlib + structlog logging according to settings."""
    log_level = getattr(logging, level.upper(), logging.WARNING)

    if fmt == "json":
        processors = [
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso", utc=True),
            structlog.processors.EventRenamer("message"),
            structlog.processors.dict_tracebacks,
            structlog.processors.JSONRenderer(),
        ]
    else:
        processors = [
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso", utc=True),
            structlog.dev.ConsoleRenderer(colors=False),
        ]

    # Logs go to stderr so report/CSV output on stdout stays machine-readable.
    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=log_level,
        force=True,
    )

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(log_level),
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )


def setup_logging(level: str | None = None) -> None:
    settings = get_settings()
    fmt = "json" if settings.logging.LOG_FORMAT == "json" else "text"
    _configure_logging(level or settings.logging.LOG_LEVEL, fmt)


def get_logger(name: str | None = None) -> structlog.stdlib.BoundLogger:
    """Lazy logger tagged with ``logger_name``; configuration is read on first use."""
    return structlog.get_logger(logger_name=name) if name else structlog.get_logger()


__all__ = ["setup_logging", "get_logger"]
