"""Cross-cutting helpers shared by the physics and scenario layers."""

from .errors import (
    ImaginaryResidueError,
    IntegrationBlowUpError,
    InvalidDimensionError,
    InvalidReducedStateError,
    ModelSpecError,
    ScenarioParseError,
    ScenarioValidationError,
    StateInvariantError,
    TwoModeError,
    UnknownPresetError,
)

__all__ = [
    "ImaginaryResidueError",
    "IntegrationBlowUpError",
    "InvalidDimensionError",
    "InvalidReducedStateError",
    "ModelSpecError",
    "ScenarioParseError",
    "ScenarioValidationError",
    "StateInvariantError",
    "TwoModeError",
    "UnknownPresetError",
]
