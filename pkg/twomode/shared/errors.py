"""
errors.py — Exception hierarchy for the simulation library and CLI.

Every error derives from TwoModeError and from the closest builtin, so
callers can catch either the library root or e.g. ValueError.
"""

from __future__ import annotations


class TwoModeError(Exception):
    """Root of all library errors."""


class InvalidDimensionError(TwoModeError, ValueError):
    """Truncation dimension, operator side or Fock index out of range."""


class ModelSpecError(TwoModeError, ValueError):
    """Physical parameters invalid, or a builder used outside its domain."""


class IntegrationBlowUpError(TwoModeError, ArithmeticError):
    """The integrated state became non-finite."""

    def __init__(self, step: int, dt: float, detail: str = "non-finite state"):
        self.step = step
        self.dt = dt
        self.detail = detail
        super().__init__(
            f"Integration blew up at step {step} (dt={dt:g}): {detail}. "
            f"Retry with a smaller dt, e.g. {dt / 2:g}."
        )

    def __reduce__(self):
        return type(self), (self.step, self.dt, self.detail)


class InvalidReducedStateError(TwoModeError, ValueError):
    """Reduced density matrix violates positivity, trace or Hermiticity."""


class StateInvariantError(TwoModeError, ValueError):
    """A propagated joint state lost unit trace, unit norm or Hermiticity."""


class ImaginaryResidueError(TwoModeError, ValueError):
    """An observable that must be real carries a significant imaginary part."""


class ScenarioParseError(TwoModeError, ValueError):
    """Scenario text could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")

    def __reduce__(self):
        # Pickled across sweep worker processes.
        return type(self), (self.message, self.line)


class ScenarioValidationError(TwoModeError, ValueError):
    """Scenario parsed but a field failed validation."""

    def __init__(self, field: str, message: str):
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}")

    def __reduce__(self):
        return type(self), (self.field, self.message)


class UnknownPresetError(TwoModeError, KeyError):
    """Preset id is not registered."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown preset"
