"""
convergence_report.py — Step-halving and truncation-doubling drift for a preset.

Runs the preset as given, with dt/2, and with both mode dimensions
doubled, then prints the largest absolute difference of every standard
column at the shared sample times.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from twomode.config import load_config  # noqa: E402
from twomode.config.logging import setup_logging  # noqa: E402
from twomode.physics.propagator import STANDARD_COLUMNS, TimeSeries, evolve  # noqa: E402
from twomode.scenarios.parser import override_scenario  # noqa: E402
from twomode.scenarios.presets import get_preset  # noqa: E402
from twomode.schemas.scenario import ScenarioFile  # noqa: E402

_COMPARED = tuple(column for column in STANDARD_COLUMNS if column not in ("t", "path_discrepancy"))


def column_drift(coarse: TimeSeries, fine: TimeSeries) -> dict[str, float]:
    """Max |coarse − fine| per column over the sample times both share."""
    t_coarse, t_fine = coarse.column("t"), fine.column("t")
    shared = np.intersect1d(np.round(t_coarse, 9), np.round(t_fine, 9))
    pick_coarse = np.isin(np.round(t_coarse, 9), shared)
    pick_fine = np.isin(np.round(t_fine, 9), shared)
    return {
        column: float(np.max(np.abs(coarse.column(column)[pick_coarse] - fine.column(column)[pick_fine])))
        for column in _COMPARED
    }


def step_halving_drift(base: ScenarioFile, reference: Optional[TimeSeries] = None) -> dict[str, float]:
    """Drift between `base` and the same run at dt/2, compared at the same sample times."""
    halved = override_scenario(
        base, [f"numerics.dt={base.numerics.dt / 2!r}", f"numerics.sample_every={2 * base.numerics.sample_every}"]
    )
    if reference is None:
        reference = evolve(base.to_simulation_config())
    return column_drift(reference, evolve(halved.to_simulation_config()))


def truncation_doubling_drift(base: ScenarioFile, reference: Optional[TimeSeries] = None) -> dict[str, float]:
    doubled = override_scenario(
        base, [f"dim_a={2 * base.numerics.dim_a}", f"dim_b={2 * base.numerics.dim_b}"]
    )
    if reference is None:
        reference = evolve(base.to_simulation_config())
    return column_drift(reference, evolve(doubled.to_simulation_config()))


def convergence_report(preset: str, overrides: list[str]) -> dict[str, dict[str, float]]:
    base = override_scenario(get_preset(preset), [*overrides, "path=vector"])
    reference = evolve(base.to_simulation_config())
    return {
        "dt_halved": step_halving_drift(base, reference),
        "dims_doubled": truncation_doubling_drift(base, reference),
    }


def main() -> int:
    parser = argparse.ArgumentParser(description="Report dt and truncation convergence for a preset.")
    parser.add_argument("preset", help="Preset id, e.g. fig1c.")
    parser.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE")
    parser.add_argument("--json", action="store_true", help="Print machine-readable JSON output.")
    args = parser.parse_args()

    setup_logging(load_config())
    report = convergence_report(args.preset, args.overrides)
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        for label, drifts in report.items():
            print(f"{label}:")
            for column, drift in drifts.items():
                print(f"  {column:<10} {drift:.3e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
