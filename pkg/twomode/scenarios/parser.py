"""
parser.py — Scenario text to validated ScenarioFile / SimulationConfig.

Scenario files are YAML. Sections may be nested (``model: {r: 2}``) or
written as flat dotted keys (``model.r: 2``); both spellings may be mixed.
Overrides use the same keys, or a bare field name when it is unique
across sections (``r=2`` is ``model.r=2``).
"""

from __future__ import annotations

import copy
import logging
from typing import Any, Iterable, Mapping

from pydantic import ValidationError
import yaml

from twomode.physics.propagator import SimulationConfig
from twomode.schemas.scenario import SECTION_MODELS, ScenarioFile
from twomode.shared.errors import ScenarioParseError, ScenarioValidationError

logger = logging.getLogger(__name__)

_TOP_LEVEL_FIELDS = tuple(name for name in ScenarioFile.model_fields if name not in SECTION_MODELS)


def _yaml_load(text: str) -> Any:
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        problem = getattr(exc, "problem", None) or str(exc)
        raise ScenarioParseError(problem, line) from exc


def expand_dotted(data: Mapping[str, Any]) -> dict[str, Any]:
    """Fold ``section.field`` keys into nested sections."""
    expanded: dict[str, Any] = {}
    for key, value in data.items():
        if not isinstance(key, str):
            raise ScenarioValidationError(str(key), "keys must be strings")
        if "." not in key:
            if isinstance(expanded.get(key), dict) and isinstance(value, dict):
                expanded[key].update(value)
            else:
                expanded[key] = copy.deepcopy(value)
            continue
        section, _, leaf = key.partition(".")
        if not leaf or "." in leaf:
            raise ScenarioValidationError(key, "dotted keys take the form section.field")
        target = expanded.setdefault(section, {})
        if not isinstance(target, dict):
            raise ScenarioValidationError(key, f"{section} is not a section")
        target[leaf] = value
    return expanded


def resolve_key(key: str) -> tuple[str, ...]:
    """Map an override key to its path in the nested scenario document."""
    key = key.strip()
    if "." in key:
        section, _, leaf = key.partition(".")
        if section not in SECTION_MODELS or leaf not in SECTION_MODELS[section].model_fields:
            raise ScenarioValidationError(key, "unknown field")
        return section, leaf
    if key in _TOP_LEVEL_FIELDS:
        return (key,)
    owners = [section for section, model in SECTION_MODELS.items() if key in model.model_fields]
    if not owners:
        raise ScenarioValidationError(key, "unknown field")
    if len(owners) > 1:
        raise ScenarioValidationError(key, f"ambiguous; use one of {', '.join(f'{s}.{key}' for s in owners)}")
    return owners[0], key


def set_value(data: dict[str, Any], path: tuple[str, ...], value: Any) -> None:
    target = data
    for part in path[:-1]:
        target = target.setdefault(part, {})
        if not isinstance(target, dict):
            raise ScenarioValidationError(part, "is not a section")
    target[path[-1]] = value


def apply_overrides(data: Mapping[str, Any], overrides: Iterable[str]) -> dict[str, Any]:
    """Apply ``key=value`` strings; values are read as YAML scalars."""
    result = expand_dotted(data)
    for item in overrides:
        key, sep, raw = item.partition("=")
        if not sep or not key.strip():
            raise ScenarioParseError(f"override {item!r} must be key=value")
        set_value(result, resolve_key(key), _yaml_load(raw.strip()))
    return result


def validate_document(data: Mapping[str, Any]) -> ScenarioFile:
    try:
        return ScenarioFile.model_validate(dict(data))
    except ValidationError as exc:
        first = exc.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or "scenario"
        message = first["msg"]
        if first["type"] == "extra_forbidden":
            message = "unknown key"
        raise ScenarioValidationError(field, message) from exc


def load_scenario(text: str, overrides: Iterable[str] = ()) -> ScenarioFile:
    data = _yaml_load(text)
    if data is None:
        raise ScenarioParseError("scenario is empty", 1)
    if not isinstance(data, dict):
        raise ScenarioParseError("scenario must be a mapping of keys to values", 1)
    scenario = validate_document(apply_overrides(data, overrides))
    logger.debug("scenario parsed", extra={"event": "scenario_parsed", "scenario": scenario.name})
    return scenario


def parse_scenario(text: str, overrides: Iterable[str] = ()) -> SimulationConfig:
    return load_scenario(text, overrides).to_simulation_config()


def override_scenario(scenario: ScenarioFile, overrides: Iterable[str]) -> ScenarioFile:
    overrides = list(overrides)
    if not overrides:
        return scenario
    return validate_document(apply_overrides(scenario.model_dump(mode="json"), overrides))


def serialize_scenario(scenario: ScenarioFile) -> str:
    return yaml.safe_dump(scenario.model_dump(mode="json"), sort_keys=False, allow_unicode=True)
