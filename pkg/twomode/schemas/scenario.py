from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from twomode.physics.fock_algebra import ModeDims
from twomode.physics.model import Deformation, ModelSpec
from twomode.physics.propagator import (
    ALL_COLUMNS,
    STANDARD_COLUMNS,
    InitialKind,
    InitialStateSpec,
    PathMode,
    SimulationConfig,
)


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)


class ModelSection(_Section):
    omega0: float = Field(default=1.0, gt=0)
    g: float = 0.1
    r: float = 1.0
    u: float = 0.0
    deformation: Deformation = Deformation.IDENTITY


class InitialSection(_Section):
    kind: Literal["coherent", "fock", "vacuum"] = "coherent"
    alpha: float = 1.0
    alpha_imag: float = 0.0
    n_a: int = Field(default=0, ge=0)
    n_b: int = Field(default=0, ge=0)


class NumericsSection(_Section):
    dim_a: int = Field(default=10, ge=2)
    dim_b: int = Field(default=10, ge=2)
    dt: float = Field(default=1e-3, gt=0)
    t_max: float = Field(default=100.0, gt=0)
    sample_every: int = Field(default=50, ge=1)
    path: PathMode = PathMode.BOTH


class ScenarioFile(_Section):
    """One simulation run as written in a scenario file.

    Couplings use the (g, r) parameterization: g_AB = g·r, g_BA = g.
    """

    name: str = Field(min_length=1)
    model: ModelSection = Field(default_factory=ModelSection)
    initial: InitialSection = Field(default_factory=InitialSection)
    numerics: NumericsSection = Field(default_factory=NumericsSection)
    outputs: list[str] = Field(default_factory=lambda: list(STANDARD_COLUMNS))
    output: Optional[str] = None

    @field_validator("outputs")
    @classmethod
    def _known_columns(cls, value: list[str]) -> list[str]:
        unknown = [column for column in value if column not in ALL_COLUMNS]
        if unknown:
            raise ValueError(
                f"unknown column(s) {', '.join(unknown)}; expected any of {', '.join(ALL_COLUMNS)}"
            )
        ordered = ["t"]
        for column in value:
            if column not in ordered:
                ordered.append(column)
        return ordered

    @model_validator(mode="after")
    def _occupations_fit(self) -> "ScenarioFile":
        if self.initial.kind == "fock":
            if self.initial.n_a >= self.numerics.dim_a:
                raise ValueError(
                    f"initial.n_a={self.initial.n_a} must be below numerics.dim_a={self.numerics.dim_a}"
                )
            if self.initial.n_b >= self.numerics.dim_b:
                raise ValueError(
                    f"initial.n_b={self.initial.n_b} must be below numerics.dim_b={self.numerics.dim_b}"
                )
        return self

    def model_spec(self) -> ModelSpec:
        return ModelSpec.from_asymmetry(
            g=self.model.g,
            r=self.model.r,
            omega0=self.model.omega0,
            u=self.model.u,
            deformation=self.model.deformation,
        )

    def to_simulation_config(self) -> SimulationConfig:
        initial = InitialStateSpec(
            kind=InitialKind(self.initial.kind),
            alpha=complex(self.initial.alpha, self.initial.alpha_imag),
            n_a=self.initial.n_a,
            n_b=self.initial.n_b,
        )
        return SimulationConfig(
            model=self.model_spec(),
            initial=initial,
            dims=ModeDims(self.numerics.dim_a, self.numerics.dim_b),
            dt=self.numerics.dt,
            t_max=self.numerics.t_max,
            sample_every=self.numerics.sample_every,
            path=self.numerics.path,
            observables=tuple(self.outputs),
        )


SECTION_MODELS: dict[str, type[_Section]] = {
    "model": ModelSection,
    "initial": InitialSection,
    "numerics": NumericsSection,
}
