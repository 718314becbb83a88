"""
runner.py — Execute scenarios and write their CSV time series.

One CSV per run: header row of column names, then one row per sample with
every value written as the shortest round-tripping decimal (``repr``).
Files are UTF-8 with LF line endings, so identical scenarios produce
byte-identical output.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
import csv
from dataclasses import dataclass, field
import logging
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

from twomode.config import log_run_snapshot
from twomode.physics.propagator import PathMode, TimeSeries, evolve
from twomode.schemas.scenario import ScenarioFile
from twomode.shared.errors import ScenarioValidationError

from .analysis import SeriesSummary, summarize
from .parser import load_scenario, override_scenario, resolve_key, set_value, validate_document
from .presets import get_preset

logger = logging.getLogger(__name__)

SWEEP_INDEX_COLUMNS = ("value", "output", "status", "error")


@dataclass
class RunResult:
    scenario: ScenarioFile
    series: TimeSeries
    csv_path: Path
    summary: SeriesSummary

    @property
    def summary_line(self) -> str:
        return f"{self.summary.line(self.scenario.name)} -> {self.csv_path}"


@dataclass(frozen=True)
class SweepEntry:
    value: float
    output: Optional[str]
    status: str
    error: str = ""


@dataclass
class SweepResult:
    index_path: Path
    entries: list[SweepEntry] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(entry.status == "ok" for entry in self.entries)


def resolve_scenario(
    preset: Optional[str] = None,
    config_path: Optional[str | Path] = None,
    overrides: Iterable[str] = (),
) -> ScenarioFile:
    if (preset is None) == (config_path is None):
        raise ScenarioValidationError("scenario", "give exactly one of a preset id or a config file")
    if preset is not None:
        return override_scenario(get_preset(preset), overrides)
    text = Path(config_path).read_text(encoding="utf-8")
    return load_scenario(text, overrides)


def output_path(scenario: ScenarioFile, out_dir: str | Path) -> Path:
    target = Path(scenario.output) if scenario.output else Path(f"{scenario.name}.csv")
    return target if target.is_absolute() else Path(out_dir) / target


def format_value(value: float) -> str:
    return repr(float(value))


def write_csv(series: TimeSeries, columns: Sequence[str], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in series.rows:
            writer.writerow([format_value(row.value(column)) for column in columns])
    logger.info("csv written", extra={"event": "csv_written", "path": str(path)})
    return path


def with_path(scenario: ScenarioFile, path: Optional[PathMode | str]) -> ScenarioFile:
    if path is None:
        return scenario
    numerics = scenario.numerics.model_copy(update={"path": PathMode(path)})
    return scenario.model_copy(update={"numerics": numerics})


def run_scenario(
    scenario: ScenarioFile,
    out_dir: str | Path = ".",
    path: Optional[PathMode | str] = None,
) -> RunResult:
    scenario = with_path(scenario, path)
    target = output_path(scenario, out_dir)
    log_run_snapshot(scenario, str(target))
    series = evolve(scenario.to_simulation_config())
    for warning in series.warnings:
        logger.warning(
            "run produced a warning",
            extra={"event": "run_warning", "scenario": scenario.name, "warning": warning},
        )
    write_csv(series, scenario.outputs, target)
    return RunResult(scenario=scenario, series=series, csv_path=target, summary=summarize(series))


def run(
    preset: Optional[str] = None,
    config_path: Optional[str | Path] = None,
    overrides: Iterable[str] = (),
    out_dir: str | Path = ".",
    path: Optional[PathMode | str] = None,
) -> RunResult:
    """Resolve a preset or scenario file, apply overrides and run it."""
    return run_scenario(resolve_scenario(preset, config_path, overrides), out_dir, path)


def _run_point(document: dict[str, Any], out_dir: str) -> str:
    result = run_scenario(validate_document(document), out_dir)
    return str(result.csv_path)


def _point_document(base: ScenarioFile, key_path: tuple[str, ...], value: float) -> dict[str, Any]:
    document = base.model_dump(mode="json")
    set_value(document, key_path, value)
    name = f"{base.name}-{key_path[-1]}-{format_value(value)}"
    document["name"] = name
    document["output"] = f"{name}.csv"
    return document


def sweep(
    base: ScenarioFile,
    parameter: str,
    grid: Sequence[float],
    out_dir: str | Path = ".",
    workers: int = 1,
) -> SweepResult:
    """Run `base` once per grid value of `parameter`; failures are recorded, not raised."""
    key_path = resolve_key(parameter)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    documents = [_point_document(base, key_path, value) for value in grid]

    entries: list[SweepEntry] = []
    if workers > 1 and len(documents) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            submitted = [
                _outcome(lambda document=document: pool.submit(_run_point, document, str(out_dir)))
                for document in documents
            ]
            outcomes = [
                _outcome(future.result) if future is not None else (None, error) for future, error in submitted
            ]
    else:
        outcomes = [_outcome(lambda document=document: _run_point(document, str(out_dir))) for document in documents]

    for value, (csv_path, error) in zip(grid, outcomes):
        if error:
            logger.warning(
                "sweep point failed: %s=%s: %s",
                parameter,
                value,
                error,
                extra={"event": "sweep_point_failed", "scenario": base.name},
            )
            entries.append(SweepEntry(value=value, output=None, status="error", error=error))
        else:
            entries.append(SweepEntry(value=value, output=csv_path, status="ok"))

    index_path = out_dir / f"{base.name}-{key_path[-1]}-sweep.csv"
    with index_path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(SWEEP_INDEX_COLUMNS)
        for entry in entries:
            writer.writerow([format_value(entry.value), entry.output or "", entry.status, entry.error])
    logger.info("sweep index written", extra={"event": "sweep_done", "path": str(index_path)})
    return SweepResult(index_path=index_path, entries=entries)


def _outcome(call) -> tuple[Any, str]:
    # Any failure, a dead worker process included, stays local to its point.
    try:
        return call(), ""
    except Exception as exc:
        return None, f"{type(exc).__name__}: {exc}"
