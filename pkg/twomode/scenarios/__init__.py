"""Scenario files, presets and run orchestration."""

from .analysis import SeriesSummary, first_crossing, summarize, time_average
from .parser import apply_overrides, load_scenario, parse_scenario, serialize_scenario
from .presets import describe_presets, get_preset, preset_ids
from .runner import RunResult, SweepResult, resolve_scenario, run, run_scenario, sweep

__all__ = [
    "RunResult",
    "SeriesSummary",
    "SweepResult",
    "apply_overrides",
    "describe_presets",
    "first_crossing",
    "get_preset",
    "load_scenario",
    "parse_scenario",
    "preset_ids",
    "resolve_scenario",
    "run",
    "run_scenario",
    "serialize_scenario",
    "summarize",
    "sweep",
    "time_average",
]
