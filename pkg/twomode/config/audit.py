from __future__ import annotations

import hashlib
import json
import logging
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from twomode.schemas.scenario import ScenarioFile

_AUDIT_LOGGER = logging.getLogger("run_audit")


def hash_scenario(scenario: "ScenarioFile") -> str:
    """Hash the canonical JSON of a scenario; identical runs share a hash."""
    raw = json.dumps(
        scenario.model_dump(mode="json", exclude={"output"}),
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(raw.encode("utf-8")).hexdigest()


def build_run_snapshot(scenario: "ScenarioFile", output_path: str | None = None) -> dict[str, Any]:
    numerics = scenario.numerics
    return {
        "event": "run_snapshot",
        "scenario": scenario.name,
        "config_hash": hash_scenario(scenario),
        "path": numerics.path.value,
        "dims": [numerics.dim_a, numerics.dim_b],
        "dt": numerics.dt,
        "t_max": numerics.t_max,
        "output": output_path,
    }


def log_run_snapshot(scenario: "ScenarioFile", output_path: str | None = None) -> dict[str, Any]:
    payload = build_run_snapshot(scenario, output_path)
    _AUDIT_LOGGER.info(json.dumps(payload, ensure_ascii=True, sort_keys=True))
    return payload
