from __future__ import annotations

import json
import logging
from logging.config import dictConfig
from pathlib import Path
from typing import Any

from .index import AppConfig, LoggingConfig, get_config

_EXTRA_KEYS = ("event", "scenario", "step", "t", "config_hash", "path", "warning")


class JsonLogFormatter(logging.Formatter):
    """Structured JSON log formatter."""

    def format(self, record: logging.LogRecord) -> str:
        payload: dict[str, Any] = {
            "timestamp": self.formatTime(record, "%Y-%m-%dT%H:%M:%S"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        if record.exc_info:
            payload["exception"] = self.formatException(record.exc_info)
        for key in _EXTRA_KEYS:
            if hasattr(record, key):
                payload[key] = getattr(record, key)
        return json.dumps(payload, ensure_ascii=True, default=str)


def _rotating_handler(path: Path, settings: LoggingConfig, formatter_name: str) -> dict[str, Any]:
    return {
        "class": "logging.handlers.RotatingFileHandler",
        "formatter": formatter_name,
        "level": settings.log_level,
        "filename": str(path),
        "maxBytes": settings.log_max_bytes,
        "backupCount": settings.log_backup_count,
        "encoding": "utf-8",
    }


def setup_logging(config: AppConfig | None = None, force: bool = False) -> None:
    """Configure process logging once; later calls are no-ops unless forced."""
    root = logging.getLogger()
    if root.handlers and not force:
        return

    settings = (config or get_config()).logging
    formatter_name = "json" if settings.log_json else "standard"
    log_dir = Path(settings.log_dir)
    if settings.enable_file_logging:
        log_dir.mkdir(parents=True, exist_ok=True)

    dict_config: dict[str, Any] = {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "standard": {
                "format": "%(asctime)s %(levelname)s [%(name)s] %(message)s",
            },
            "json": {
                "()": "twomode.config.logging.JsonLogFormatter",
            },
        },
        "handlers": {
            "console": {
                "class": "logging.StreamHandler",
                "formatter": formatter_name,
                "level": settings.log_level,
                "stream": "ext://sys.stderr",
            },
        },
        "loggers": {
            "": {
                "handlers": ["console"],
                "level": settings.log_level,
            },
            "run_audit": {
                "handlers": ["console"],
                "level": settings.log_level,
                "propagate": False,
            },
        },
    }
    if settings.enable_file_logging:
        dict_config["handlers"]["app_file"] = _rotating_handler(log_dir / "twomode.log", settings, formatter_name)
        dict_config["handlers"]["audit_file"] = _rotating_handler(log_dir / "runs.log", settings, formatter_name)
        dict_config["loggers"][""]["handlers"].append("app_file")
        dict_config["loggers"]["run_audit"]["handlers"].append("audit_file")

    dictConfig(dict_config)
