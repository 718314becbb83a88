from __future__ import annotations

import argparse
import json
import logging
from pathlib import Path
import sys
from typing import Optional, Sequence

from dotenv import load_dotenv

from twomode.config import hash_scenario, load_config, startup_snapshot
from twomode.config.logging import setup_logging
from twomode.physics.propagator import PathMode
from twomode.scenarios.presets import describe_presets
from twomode.scenarios.runner import resolve_scenario, run, sweep
from twomode.shared.errors import TwoModeError

logger = logging.getLogger(__name__)


def _load_dotenv_for_cli() -> None:
    # Only the LOG_* variables are read from the environment.
    load_dotenv(dotenv_path=Path.cwd() / ".env", override=False)


def _parse_grid(raw: str) -> list[float]:
    items = [item.strip() for item in raw.split(",") if item.strip()]
    try:
        return [float(item) for item in items]
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be comma-separated numbers, got {raw!r}") from None


def _add_scenario_args(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset", help="Built-in scenario id (see `presets`).")
    source.add_argument("--config", help="Path to a YAML scenario file.")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Override a scenario field, e.g. --set r=2 or --set numerics.dt=5e-4. Repeatable.",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twomode",
        description="Simulate two non-reciprocally coupled bosonic modes.",
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    run_parser = verbs.add_parser("run", help="Run one scenario and write its CSV.")
    _add_scenario_args(run_parser)
    run_parser.add_argument("--out", default=".", help="Output directory for CSV files.")
    run_parser.add_argument("--path", choices=[mode.value for mode in PathMode], help="Propagation path.")
    run_parser.add_argument("--json", action="store_true", help="Print the summary as JSON.")

    sweep_parser = verbs.add_parser("sweep", help="Run a scenario over a grid of one parameter.")
    _add_scenario_args(sweep_parser)
    sweep_parser.add_argument("--param", required=True, help="Scenario field to vary, e.g. r or numerics.dt.")
    sweep_parser.add_argument("--grid", type=_parse_grid, default=[], help="Comma-separated values.")
    sweep_parser.add_argument("--out", default=".", help="Output directory for CSV files.")
    sweep_parser.add_argument("--path", choices=[mode.value for mode in PathMode], help="Propagation path.")
    sweep_parser.add_argument("--workers", type=int, default=1, help="Parallel worker processes.")

    verbs.add_parser("presets", help="List built-in scenarios.")

    validate_parser = verbs.add_parser("validate", help="Parse and validate a scenario without running it.")
    _add_scenario_args(validate_parser)
    return parser


def _cmd_run(args: argparse.Namespace) -> int:
    result = run(args.preset, args.config, args.overrides, args.out, args.path)
    if args.json:
        payload = result.summary.as_dict()
        payload["scenario"] = result.scenario.name
        payload["csv"] = str(result.csv_path)
        print(json.dumps(payload, sort_keys=True, default=str))
    else:
        print(result.summary_line)
        for warning in result.series.warnings:
            print(f"warning: {warning}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    base = resolve_scenario(args.preset, args.config, args.overrides)
    if args.path:
        base = base.model_copy(
            update={"numerics": base.numerics.model_copy(update={"path": PathMode(args.path)})}
        )
    result = sweep(base, args.param, args.grid, args.out, workers=max(1, args.workers))
    for entry in result.entries:
        detail = entry.output if entry.status == "ok" else entry.error
        print(f"{args.param}={entry.value:g}: {entry.status} {detail}")
    print(f"index: {result.index_path}")
    return 0 if result.ok else 1


def _cmd_presets(_: argparse.Namespace) -> int:
    for preset_id, description in describe_presets():
        print(f"{preset_id:<14} {description}")
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    scenario = resolve_scenario(args.preset, args.config, args.overrides)
    scenario.to_simulation_config()
    print(f"ok: {scenario.name} ({hash_scenario(scenario)[:12]})")
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "sweep": _cmd_sweep,
    "presets": _cmd_presets,
    "validate": _cmd_validate,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _load_dotenv_for_cli()
    config = load_config()
    setup_logging(config)
    logger.info(
        json.dumps({"verb": args.verb, **startup_snapshot(config)}, sort_keys=True),
        extra={"event": "startup_checklist"},
    )
    try:
        return _COMMANDS[args.verb](args)
    except (TwoModeError, OSError) as exc:
        logger.error("command failed: %s", exc, extra={"event": "cli_error"})
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
