"""Configuration helpers, logging setup and run auditing."""

from .audit import build_run_snapshot, hash_scenario, log_run_snapshot
from .index import NUMERICS, AppConfig, LoggingConfig, NumericsConfig, get_config, load_config, startup_snapshot

__all__ = [
    "NUMERICS",
    "AppConfig",
    "LoggingConfig",
    "NumericsConfig",
    "build_run_snapshot",
    "get_config",
    "hash_scenario",
    "load_config",
    "log_run_snapshot",
    "startup_snapshot",
]
