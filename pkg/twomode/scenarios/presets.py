"""
presets.py — Built-in scenarios.

The fig* presets follow the figure captions: α_A = 1, mode B in vacuum,
g = 0.1ω₀, g_AB = g·r, g_BA = g. fig1* use the linear chiral-mirror
coupling; fig2* and fig3 use the soliton-plasmon coupling with
f(a†a) = √(a†a) and u = −0.01ω₀.
"""

from __future__ import annotations

from typing import Any

from twomode.schemas.scenario import ScenarioFile
from twomode.shared.errors import UnknownPresetError

_ENTROPY_OUTPUTS = [
    "t",
    "n_a",
    "n_b",
    "n_total",
    "purity",
    "entropy_a",
    "log_trace",
    "trunc_tail",
    "path_discrepancy",
    "entropy_b",
]


def _chiral_mirror(name: str, r: float) -> dict[str, Any]:
    return {
        "name": name,
        "model": {"omega0": 1.0, "g": 0.1, "r": r, "u": 0.0, "deformation": "identity"},
        "initial": {"kind": "coherent", "alpha": 1.0},
        "numerics": {"t_max": 100.0},
    }


def _soliplasmon(name: str, r: float, **extra: Any) -> dict[str, Any]:
    data: dict[str, Any] = {
        "name": name,
        "model": {"omega0": 1.0, "g": 0.1, "r": r, "u": -0.01, "deformation": "sqrt_n"},
        "initial": {"kind": "coherent", "alpha": 1.0},
        "numerics": {"t_max": 200.0},
    }
    data.update(extra)
    return data


_PRESETS: dict[str, tuple[str, dict[str, Any]]] = {
    "fig1a": ("Chiral mirror, r=1 (Hermitian)", _chiral_mirror("fig1a", 1.0)),
    "fig1b": ("Chiral mirror, r=0.5 (loss)", _chiral_mirror("fig1b", 0.5)),
    "fig1c": ("Chiral mirror, r=2 (amplification)", _chiral_mirror("fig1c", 2.0)),
    "fig2a": ("Soliton-plasmon, r=1", _soliplasmon("fig2a", 1.0)),
    "fig2b": ("Soliton-plasmon, r=0.5", _soliplasmon("fig2b", 0.5)),
    "fig2c": ("Soliton-plasmon, r=2 (plasmon over-excitation)", _soliplasmon("fig2c", 2.0)),
    "fig3": (
        "Soliton-plasmon entanglement entropy, r=1",
        _soliplasmon("fig3", 1.0, outputs=_ENTROPY_OUTPUTS),
    ),
    "fock-control": (
        "Chiral mirror, r=2, initial |1,0>",
        {
            "name": "fock-control",
            "model": {"omega0": 1.0, "g": 0.1, "r": 2.0, "u": 0.0, "deformation": "identity"},
            "initial": {"kind": "fock", "n_a": 1, "n_b": 0},
            "numerics": {"t_max": 100.0},
        },
    ),
    "kerr-dimer": (
        "Local Kerr nonlinearity only, r=2",
        {
            "name": "kerr-dimer",
            "model": {"omega0": 1.0, "g": 0.1, "r": 2.0, "u": -0.01, "deformation": "identity"},
            "initial": {"kind": "coherent", "alpha": 1.0},
            "numerics": {"t_max": 200.0},
            "outputs": _ENTROPY_OUTPUTS,
        },
    ),
    "fock-soliton": (
        "Soliton-plasmon, r=2, initial |1,0>",
        _soliplasmon("fock-soliton", 2.0, initial={"kind": "fock", "n_a": 1, "n_b": 0}),
    ),
}


def preset_ids() -> list[str]:
    return list(_PRESETS)


def describe_presets() -> list[tuple[str, str]]:
    return [(preset_id, description) for preset_id, (description, _) in _PRESETS.items()]


def get_preset(preset_id: str) -> ScenarioFile:
    try:
        _, data = _PRESETS[preset_id]
    except KeyError:
        raise UnknownPresetError(
            f"unknown preset {preset_id!r}; available: {', '.join(_PRESETS)}"
        ) from None
    return ScenarioFile.model_validate(data)
