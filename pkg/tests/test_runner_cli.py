"""
test_runner_cli.py — Tests for scenario runs, sweeps, summaries and the CLI.
"""

import csv
import json
import logging
import math
from pathlib import Path

import numpy as np
import pytest

from twomode.cli import build_parser, main
from twomode.physics.propagator import STANDARD_COLUMNS
from twomode.scenarios.analysis import first_crossing, summarize, time_average
from twomode.scenarios.parser import load_scenario
from twomode.scenarios import runner
from twomode.scenarios.runner import format_value, output_path, resolve_scenario, run, run_scenario, sweep
from twomode.shared.errors import ScenarioValidationError


def _rows(path):
    with path.open(encoding="utf-8", newline="") as handle:
        return list(csv.reader(handle))


@pytest.fixture
def tiny_config(tmp_path, tiny_scenario_text):
    path = tmp_path / "tiny.yaml"
    path.write_text(tiny_scenario_text, encoding="utf-8")
    return path


class TestRunScenario:
    """Single runs and their CSV output."""

    def test_writes_standard_csv(self, tmp_path, tiny_scenario_text):
        result = run_scenario(load_scenario(tiny_scenario_text), tmp_path / "out")
        assert result.csv_path == tmp_path / "out" / "tiny.csv"
        rows = _rows(result.csv_path)
        assert tuple(rows[0]) == STANDARD_COLUMNS
        assert len(rows) == 12
        assert [float(row[0]) for row in rows[1:]] == pytest.approx(np.linspace(0.0, 1.0, 11))
        assert result.summary.samples == 11
        assert result.summary_line.startswith("tiny: n_total min=")
        assert result.summary_line.endswith(str(result.csv_path))

    def test_output_is_byte_identical(self, tmp_path, tiny_scenario_text):
        scenario = load_scenario(tiny_scenario_text)
        first = run_scenario(scenario, tmp_path / "one").csv_path.read_bytes()
        second = run_scenario(scenario, tmp_path / "two").csv_path.read_bytes()
        assert first == second
        assert b"\r\n" not in first
        assert first.endswith(b"\n")

    def test_path_override_leaves_discrepancy_nan(self, tmp_path, tiny_scenario_text):
        result = run_scenario(load_scenario(tiny_scenario_text), tmp_path, path="vector")
        assert result.scenario.numerics.path.value == "vector"
        index = STANDARD_COLUMNS.index("path_discrepancy")
        assert all(row[index] == "nan" for row in _rows(result.csv_path)[1:])

    def test_selected_outputs(self, tmp_path, tiny_scenario_text):
        scenario = load_scenario(tiny_scenario_text, ["outputs=[n_total, entropy_b]"])
        result = run_scenario(scenario, tmp_path)
        assert _rows(result.csv_path)[0] == ["t", "n_total", "entropy_b"]

    def test_output_path(self, tmp_path, tiny_scenario_text):
        scenario = load_scenario(tiny_scenario_text, ["output=series/custom.csv"])
        assert output_path(scenario, tmp_path) == tmp_path / "series" / "custom.csv"
        absolute = load_scenario(tiny_scenario_text, [f"output={tmp_path / 'abs.csv'}"])
        assert output_path(absolute, "ignored") == tmp_path / "abs.csv"

    def test_format_value(self):
        assert format_value(0.1) == "0.1"
        assert format_value(2) == "2.0"
        assert format_value(math.nan) == "nan"

    def test_run_from_file(self, tmp_path, tiny_config):
        result = run(config_path=tiny_config, overrides=["r=0.5"], out_dir=tmp_path)
        assert result.scenario.model.r == 0.5
        assert result.csv_path.exists()

    def test_resolve_requires_one_source(self, tiny_config):
        with pytest.raises(ScenarioValidationError):
            resolve_scenario()
        with pytest.raises(ScenarioValidationError):
            resolve_scenario("fig1a", tiny_config)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            resolve_scenario(config_path=tmp_path / "missing.yaml")


class TestSweep:
    """Parameter sweeps and their index file."""

    def test_sweep_writes_one_csv_per_point(self, tmp_path, tiny_scenario_text):
        result = sweep(load_scenario(tiny_scenario_text), "r", [0.5, 1.0], tmp_path)
        assert result.ok
        assert result.index_path == tmp_path / "tiny-r-sweep.csv"
        assert (tmp_path / "tiny-r-0.5.csv").exists()
        assert (tmp_path / "tiny-r-1.0.csv").exists()
        rows = _rows(result.index_path)
        assert rows[0] == ["value", "output", "status", "error"]
        assert [row[2] for row in rows[1:]] == ["ok", "ok"]

    def test_failed_point_is_recorded(self, tmp_path, tiny_scenario_text):
        result = sweep(load_scenario(tiny_scenario_text), "numerics.dt", [0.0, 0.01], tmp_path)
        assert not result.ok
        failed, passed = result.entries
        assert failed.status == "error"
        assert "numerics.dt" in failed.error
        assert failed.output is None
        assert passed.status == "ok"
        rows = _rows(result.index_path)
        assert rows[1][1] == ""
        assert rows[2][2] == "ok"

    def test_empty_grid(self, tmp_path, tiny_scenario_text):
        result = sweep(load_scenario(tiny_scenario_text), "r", [], tmp_path)
        assert result.ok
        assert _rows(result.index_path) == [["value", "output", "status", "error"]]

    def test_worker_pool_matches_sequential(self, tmp_path, tiny_scenario_text):
        scenario = load_scenario(tiny_scenario_text)
        sequential = sweep(scenario, "r", [0.5, 2.0], tmp_path / "seq")
        pooled = sweep(scenario, "r", [0.5, 2.0], tmp_path / "pool", workers=2)
        assert pooled.ok
        for left, right in zip(sequential.entries, pooled.entries):
            assert Path(left.output).name == Path(right.output).name
            assert Path(left.output).read_bytes() == Path(right.output).read_bytes()

    def test_worker_pool_records_failures(self, tmp_path, tiny_scenario_text):
        result = sweep(load_scenario(tiny_scenario_text), "dt", [0.0, 0.01], tmp_path, workers=2)
        assert [entry.status for entry in result.entries] == ["error", "ok"]
        assert result.entries[0].error.startswith("ScenarioValidationError: numerics.dt")

    def test_close_grid_values_get_distinct_files(self, tmp_path, tiny_scenario_text):
        result = sweep(load_scenario(tiny_scenario_text), "r", [1.0, 1.0000001], tmp_path)
        assert result.ok
        outputs = [entry.output for entry in result.entries]
        assert len(set(outputs)) == 2
        assert all(Path(output).exists() for output in outputs)

    def test_unexpected_point_failure_is_recorded(self, tmp_path, tiny_scenario_text, monkeypatch):
        run_point = runner._run_point

        def flaky(document, out_dir):
            if document["model"]["r"] == 0.5:
                raise RuntimeError("worker died")
            return run_point(document, out_dir)

        monkeypatch.setattr(runner, "_run_point", flaky)
        result = sweep(load_scenario(tiny_scenario_text), "r", [0.5, 2.0], tmp_path)
        assert [entry.status for entry in result.entries] == ["error", "ok"]
        assert result.entries[0].error == "RuntimeError: worker died"
        assert (tmp_path / "tiny-r-2.0.csv").exists()

    def test_unknown_parameter(self, tmp_path, tiny_scenario_text):
        with pytest.raises(ScenarioValidationError):
            sweep(load_scenario(tiny_scenario_text), "bogus", [1.0], tmp_path)


class TestAnalysis:
    """Series summaries."""

    def test_first_crossing(self):
        t = np.array([0.0, 1.0, 2.0, 3.0])
        assert first_crossing(t, np.array([0.0, 0.005, 0.02, 0.5]), 1e-2) == 2.0
        assert first_crossing(t, np.zeros(4), 1e-2) is None

    def test_time_average(self):
        assert time_average(np.array([1.0, 2.0, 3.0])) == 2.0
        assert math.isnan(time_average(np.array([])))

    def test_summarize(self, tmp_path, tiny_scenario_text):
        series = run_scenario(load_scenario(tiny_scenario_text), tmp_path).series
        summary = summarize(series)
        assert summary.samples == len(series)
        # |alpha|=1 truncated to four levels and renormalized.
        assert summary.n_total_min == pytest.approx(0.9375, abs=1e-9)
        assert summary.n_total_max > summary.n_total_min
        assert summary.entropy_max >= 0.0
        assert summary.max_path_discrepancy < 1e-6
        payload = summary.as_dict()
        assert isinstance(payload["warnings"], list)
        json.dumps(payload, default=str)


@pytest.mark.usefixtures("restore_logging")
class TestCli:
    """The twomode command-line surface."""

    def test_parser_requires_source(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["run"])
        with pytest.raises(SystemExit):
            build_parser().parse_args(["run", "--preset", "fig1a", "--config", "x.yaml"])

    def test_presets(self, capsys):
        assert main(["presets"]) == 0
        out = capsys.readouterr().out
        assert "fig1a" in out
        assert "fock-control" in out

    def test_startup_snapshot_logged(self, caplog, capsys):
        caplog.set_level(logging.INFO, logger="twomode.cli")
        assert main(["presets"]) == 0
        startup = [record for record in caplog.records if getattr(record, "event", None) == "startup_checklist"]
        assert len(startup) == 1
        payload = json.loads(startup[0].getMessage())
        assert payload["verb"] == "presets"
        assert payload["default_dt"] == 1e-3

    def test_run_preset_with_overrides(self, tmp_path, capsys):
        argv = [
            "run", "--preset", "fig1a", "--out", str(tmp_path),
            "--set", "t_max=0.5", "--set", "dim_a=4", "--set", "dim_b=4", "--path", "vector",
        ]
        assert main(argv) == 0
        out = capsys.readouterr().out
        assert out.startswith("fig1a: n_total min=")
        rows = _rows(tmp_path / "fig1a.csv")
        assert len(rows) == 12

    def test_run_json(self, tmp_path, tiny_config, capsys):
        assert main(["run", "--config", str(tiny_config), "--out", str(tmp_path), "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["scenario"] == "tiny"
        assert payload["samples"] == 11
        assert payload["csv"].endswith("tiny.csv")

    def test_validate_ok(self, tiny_config, capsys):
        assert main(["validate", "--config", str(tiny_config)]) == 0
        assert capsys.readouterr().out.startswith("ok: tiny (")

    def test_validate_reports_field(self, tmp_path, capsys):
        bad = tmp_path / "bad.yaml"
        bad.write_text("name: bad\nnumerics:\n  dt: 0\n", encoding="utf-8")
        assert main(["validate", "--config", str(bad)]) == 1
        assert "numerics.dt" in capsys.readouterr().err

    def test_unknown_preset(self, capsys):
        assert main(["validate", "--preset", "fig9"]) == 1
        assert "fig9" in capsys.readouterr().err

    def test_missing_config(self, tmp_path, capsys):
        assert main(["run", "--config", str(tmp_path / "nope.yaml"), "--out", str(tmp_path)]) == 1
        assert capsys.readouterr().err.startswith("error: ")

    def test_sweep_empty_grid(self, tmp_path, tiny_config, capsys):
        assert main(["sweep", "--config", str(tiny_config), "--param", "r", "--grid", "", "--out", str(tmp_path)]) == 0
        assert _rows(tmp_path / "tiny-r-sweep.csv") == [["value", "output", "status", "error"]]

    def test_sweep_failure_exit_code(self, tmp_path, tiny_config, capsys):
        argv = ["sweep", "--config", str(tiny_config), "--param", "dt", "--grid", "0,0.01", "--out", str(tmp_path)]
        assert main(argv) == 1
        out = capsys.readouterr().out
        assert "dt=0: error" in out
        assert "dt=0.01: ok" in out
