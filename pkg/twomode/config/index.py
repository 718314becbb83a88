from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import os
from typing import Mapping

_TRUE_VALUES = {"1", "true", "yes", "on"}
_VALID_LOG_LEVELS = {"CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG", "NOTSET"}


def _get(env: Mapping[str, str], key: str, default: str = "") -> str:
    value = env.get(key)
    return value.strip() if value is not None else default


def _env_bool(env: Mapping[str, str], key: str, default: bool = False) -> bool:
    value = env.get(key)
    if value is None:
        return default
    return value.strip().lower() in _TRUE_VALUES


def _env_int(env: Mapping[str, str], key: str, default: int, minimum: int = 1) -> int:
    value = env.get(key)
    if value is None:
        return default
    try:
        parsed = int(value.strip())
    except Exception:
        return default
    return parsed if parsed >= minimum else default


@dataclass(frozen=True)
class LoggingConfig:
    log_level: str
    log_json: bool
    enable_file_logging: bool
    log_dir: str
    log_max_bytes: int
    log_backup_count: int


@dataclass(frozen=True)
class NumericsConfig:
    """Documented numeric defaults and thresholds.

    These are fixed for reproducibility; scenario files override the
    integration settings per run, never the environment.
    """

    default_dim: int = 10
    default_dt: float = 1e-3
    default_sample_every: int = 50
    truncation_guard: float = 1e-4
    imag_residue_tol: float = 1e-9
    eigenvalue_clamp: float = 1e-8
    pt_threshold: float = 1e-10
    hermitian_tol: float = 1e-12
    state_hermitian_tol: float = 1e-10


@dataclass(frozen=True)
class AppConfig:
    logging: LoggingConfig
    numerics: NumericsConfig


def load_config(environ: Mapping[str, str] | None = None) -> AppConfig:
    env = environ if environ is not None else os.environ
    log_level = _get(env, "LOG_LEVEL", "INFO").upper()
    if log_level not in _VALID_LOG_LEVELS:
        log_level = "INFO"
    logging_config = LoggingConfig(
        log_level=log_level,
        log_json=_env_bool(env, "LOG_JSON", True),
        enable_file_logging=_env_bool(env, "ENABLE_FILE_LOGGING", False),
        log_dir=_get(env, "LOG_DIR", "logs") or "logs",
        log_max_bytes=_env_int(env, "LOG_MAX_BYTES", 5 * 1024 * 1024, minimum=1024),
        log_backup_count=_env_int(env, "LOG_BACKUP_COUNT", 5, minimum=1),
    )
    return AppConfig(logging=logging_config, numerics=NumericsConfig())


@lru_cache(maxsize=1)
def get_config() -> AppConfig:
    return load_config()


NUMERICS = NumericsConfig()


def startup_snapshot(config: AppConfig) -> dict[str, object]:
    return {
        "log_level": config.logging.log_level,
        "log_json": config.logging.log_json,
        "enable_file_logging": config.logging.enable_file_logging,
        "log_dir": config.logging.log_dir,
        "default_dim": config.numerics.default_dim,
        "default_dt": config.numerics.default_dt,
        "default_sample_every": config.numerics.default_sample_every,
        "truncation_guard": config.numerics.truncation_guard,
        "pt_threshold": config.numerics.pt_threshold,
    }
