"""
propagator.py — Time evolution under the non-Hermitian generator.

Two independent fixed-step RK4 paths:
  * density matrix:  dρ/dt = −i[H₊, ρ] − i{H₋, ρ}  (= −i(Hρ − ρH†))
  * state vector:    d|Ψ>/dt = −iH|Ψ>

Both store the state renormalized and accumulate the discarded
normalization in log_trace.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
import logging
import math
import time

import numpy as np

from twomode.config import NUMERICS
from twomode.shared.errors import IntegrationBlowUpError, InvalidDimensionError, ModelSpecError

from .entanglement import ReducedState, partial_trace, purity, von_neumann_entropy
from .fock_algebra import (
    Mode,
    ModeDims,
    Operator,
    StateVector,
    coherent_state,
    fock_state,
    number_operators,
    tensor_state,
)
from .model import Deformation, HamiltonianParts, ModelSpec, build_hamiltonian, decompose
from .observables import heisenberg_rhs, number_rate_rhs, real_part, record
from .states import QuantumState, StateKind

logger = logging.getLogger(__name__)

__all__ = [
    "ALL_COLUMNS",
    "InitialKind",
    "InitialStateSpec",
    "PathMode",
    "QuantumState",
    "SampleRow",
    "SimulationConfig",
    "STANDARD_COLUMNS",
    "StateKind",
    "TimeSeries",
    "evolve",
    "master_rhs",
    "step_density",
    "step_vector",
]


class PathMode(str, Enum):
    DENSITY = "density"
    VECTOR = "vector"
    BOTH = "both"


class InitialKind(str, Enum):
    COHERENT = "coherent"
    FOCK = "fock"
    VACUUM = "vacuum"
    EXPLICIT = "explicit"


STANDARD_COLUMNS: tuple[str, ...] = (
    "t",
    "n_a",
    "n_b",
    "n_total",
    "purity",
    "entropy_a",
    "log_trace",
    "trunc_tail",
    "path_discrepancy",
)
EXTRA_COLUMNS: tuple[str, ...] = ("entropy_b", "rate_fd", "rate_heisenberg", "rate_number")
ALL_COLUMNS: tuple[str, ...] = STANDARD_COLUMNS + EXTRA_COLUMNS

# Normalized observables compared between the two paths.
_COMPARED = ("n_a", "n_b", "n_total", "purity", "entropy_a")


@dataclass(frozen=True)
class InitialStateSpec:
    kind: InitialKind = InitialKind.COHERENT
    alpha: complex = 1.0
    n_a: int = 0
    n_b: int = 0
    amplitudes: tuple[complex, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", InitialKind(self.kind))
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "amplitudes", tuple(complex(x) for x in self.amplitudes))

    def prepare(self, dims: ModeDims) -> StateVector:
        if self.kind == InitialKind.COHERENT:
            return tensor_state(coherent_state(self.alpha, dims.dim_a), fock_state(0, dims.dim_b))
        if self.kind == InitialKind.FOCK:
            return tensor_state(fock_state(self.n_a, dims.dim_a), fock_state(self.n_b, dims.dim_b))
        if self.kind == InitialKind.VACUUM:
            return tensor_state(fock_state(0, dims.dim_a), fock_state(0, dims.dim_b))
        return StateVector(np.asarray(self.amplitudes, dtype=complex), dims)


@dataclass(frozen=True)
class SimulationConfig:
    model: ModelSpec
    initial: InitialStateSpec = field(default_factory=InitialStateSpec)
    dims: ModeDims = field(
        default_factory=lambda: ModeDims(NUMERICS.default_dim, NUMERICS.default_dim)
    )
    dt: float = NUMERICS.default_dt
    t_max: float = 100.0
    sample_every: int = NUMERICS.default_sample_every
    path: PathMode = PathMode.BOTH
    observables: tuple[str, ...] = STANDARD_COLUMNS

    def __post_init__(self) -> None:
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise ModelSpecError(f"dt must be > 0, got {self.dt}")
        if not (math.isfinite(self.t_max) and self.t_max > 0):
            raise ModelSpecError(f"t_max must be > 0, got {self.t_max}")
        if int(self.sample_every) != self.sample_every or self.sample_every < 1:
            raise ModelSpecError(f"sample_every must be an integer >= 1, got {self.sample_every}")
        unknown = [name for name in self.observables if name not in ALL_COLUMNS]
        if unknown:
            raise ModelSpecError(f"unknown observables: {', '.join(unknown)}")
        object.__setattr__(self, "path", PathMode(self.path))
        object.__setattr__(self, "observables", tuple(self.observables))

    @property
    def n_steps(self) -> int:
        # Slack absorbs t_max/dt landing a hair below an integer.
        return int(math.floor(self.t_max / self.dt + 1e-9))


@dataclass(frozen=True)
class SampleRow:
    t: float
    n_a: float
    n_b: float
    n_total: float
    purity: float
    entropy_a: float
    log_trace: float
    trunc_tail: float
    path_discrepancy: float = math.nan
    entropy_b: float = math.nan
    rate_fd: float = math.nan
    rate_heisenberg: float = math.nan
    rate_number: float = math.nan

    def value(self, column: str) -> float:
        return getattr(self, column)


@dataclass
class TimeSeries:
    config: SimulationConfig
    rows: list[SampleRow] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    initial_tail_weight: float = 0.0
    max_path_discrepancy: float = math.nan

    def column(self, name: str) -> np.ndarray:
        if name not in ALL_COLUMNS:
            raise KeyError(name)
        return np.array([row.value(name) for row in self.rows], dtype=float)

    def __len__(self) -> int:
        return len(self.rows)


def master_rhs(rho: np.ndarray, parts: HamiltonianParts) -> np.ndarray:
    """−i[H₊, ρ] − i{H₋, ρ} evaluated literally."""
    hp = parts.h_plus.matrix
    hm = parts.h_minus.matrix
    return -1j * (hp @ rho - rho @ hp) - 1j * (hm @ rho + rho @ hm)


def _density_rhs(h: np.ndarray, rho: np.ndarray) -> np.ndarray:
    # ρ Hermitian ⇒ ρH† = (Hρ)†, so one product per stage.
    x = h @ rho
    return -1j * (x - x.conj().T)


def _renormalized(
    kind: StateKind, data: np.ndarray, scale: float, state: QuantumState, step: int, dt: float, log_increment: float
) -> QuantumState:
    if not math.isfinite(scale) or not np.all(np.isfinite(data)):
        logger.error(
            "integration blow-up at step %d", step, extra={"event": "blow_up", "step": step}
        )
        raise IntegrationBlowUpError(step, dt)
    if scale <= 0.0:
        raise IntegrationBlowUpError(step, dt, f"normalization became non-positive ({scale:g})")
    return QuantumState(kind, data / scale, state.dims, state.log_trace + log_increment)


def step_density(state: QuantumState, parts: HamiltonianParts, dt: float, step: int = 0) -> QuantumState:
    """One RK4 step of the master equation, then symmetrize and trace-renormalize."""
    if not state.is_density:
        raise InvalidDimensionError("step_density requires a density-matrix state")
    if not dt > 0:
        raise ModelSpecError(f"dt must be > 0, got {dt}")
    h = parts.h.matrix
    rho = state.data
    k1 = _density_rhs(h, rho)
    k2 = _density_rhs(h, rho + (0.5 * dt) * k1)
    k3 = _density_rhs(h, rho + (0.5 * dt) * k2)
    k4 = _density_rhs(h, rho + dt * k3)
    new = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    new = 0.5 * (new + new.conj().T)
    trace = float(np.trace(new).real)
    log_increment = math.log(trace) if math.isfinite(trace) and trace > 0.0 else math.nan
    return _renormalized(StateKind.DENSITY_MATRIX, new, trace, state, step, dt, log_increment)


def step_vector(state: QuantumState, h: Operator, dt: float, step: int = 0) -> QuantumState:
    """One RK4 step of −iH|Ψ>, then renormalize; 2·ln(norm) goes into log_trace."""
    if state.is_density:
        raise InvalidDimensionError("step_vector requires a pure-vector state")
    if not dt > 0:
        raise ModelSpecError(f"dt must be > 0, got {dt}")
    m = h.matrix
    psi = state.data
    k1 = -1j * (m @ psi)
    k2 = -1j * (m @ (psi + (0.5 * dt) * k1))
    k3 = -1j * (m @ (psi + (0.5 * dt) * k2))
    k4 = -1j * (m @ (psi + dt * k3))
    new = psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    norm = float(np.linalg.norm(new))
    log_increment = 2.0 * math.log(norm) if math.isfinite(norm) and norm > 0.0 else math.nan
    return _renormalized(StateKind.PURE_VECTOR, new, norm, state, step, dt, log_increment)


@dataclass(frozen=True)
class _Observers:
    parts: HamiltonianParts
    n_a: Operator
    n_b: Operator
    total: Operator


def _core_values(
    t: float, state: QuantumState, observers: _Observers
) -> tuple[dict[str, float], ReducedState, ReducedState]:
    state.check_invariants()
    reduced_a = partial_trace(state, Mode.A)
    reduced_b = partial_trace(state, Mode.B)
    numbers = (("n_a", observers.n_a), ("n_b", observers.n_b), ("n_total", observers.total))
    values = {name: record(name, op, state, t).real_value() for name, op in numbers}
    values["purity"] = purity(state)
    values["entropy_a"] = von_neumann_entropy(reduced_a)
    return values, reduced_a, reduced_b


def _sample(t: float, state: QuantumState, config: SimulationConfig, observers: _Observers) -> SampleRow:
    values, reduced_a, reduced_b = _core_values(t, state, observers)
    extras: dict[str, float] = {}
    if "entropy_b" in config.observables:
        extras["entropy_b"] = von_neumann_entropy(reduced_b)
    if "rate_heisenberg" in config.observables:
        extras["rate_heisenberg"] = real_part(
            heisenberg_rhs(observers.total, state, observers.parts), "rate_heisenberg"
        )
    if "rate_number" in config.observables and config.model.deformation == Deformation.IDENTITY:
        # The explicit rate assumes the linear coupling's anti-Hermitian part.
        extras["rate_number"] = number_rate_rhs(state, config.model.g_ab, config.model.g_ba)
    trunc_tail = max(float(reduced_a.matrix[-1, -1].real), float(reduced_b.matrix[-1, -1].real))
    return SampleRow(
        t=t,
        log_trace=state.log_trace,
        trunc_tail=trunc_tail,
        **values,
        **extras,
    )


def _total_number(state: QuantumState, n_diag: np.ndarray) -> float:
    if state.is_density:
        return float(np.real(np.diag(state.data)) @ n_diag)
    return float((np.abs(state.data) ** 2) @ n_diag)


def evolve(config: SimulationConfig) -> TimeSeries:
    """Integrate from t=0 to t_max, sampling every `sample_every` steps."""
    parts = decompose(build_hamiltonian(config.model, config.dims))
    n_a, n_b, total = number_operators(config.dims)
    observers = _Observers(parts=parts, n_a=n_a, n_b=n_b, total=total)
    n_diag = np.real(np.diag(total.matrix))

    initial = config.initial.prepare(config.dims)
    both = config.path == PathMode.BOTH
    density = (
        QuantumState.from_vector(initial, StateKind.DENSITY_MATRIX)
        if config.path in (PathMode.DENSITY, PathMode.BOTH)
        else None
    )
    vector = (
        QuantumState.from_vector(initial)
        if config.path in (PathMode.VECTOR, PathMode.BOTH)
        else None
    )

    series = TimeSeries(config=config, initial_tail_weight=initial.tail_weight)
    stride = config.sample_every
    n_steps = config.n_steps
    want_fd = "rate_fd" in config.observables
    neighbours: dict[int, float] = {}
    max_discrepancy = 0.0 if both else math.nan
    guard_tripped = False

    def take_sample(step: int) -> None:
        nonlocal max_discrepancy, guard_tripped
        t = step * config.dt
        primary = density if density is not None else vector
        row = _sample(t, primary, config, observers)
        if both:
            other, _, _ = _core_values(t, vector, observers)
            discrepancy = max(abs(row.value(key) - other[key]) for key in _COMPARED)
            max_discrepancy = max(max_discrepancy, discrepancy)
            row = replace(row, path_discrepancy=discrepancy)
        if row.trunc_tail > NUMERICS.truncation_guard and not guard_tripped:
            guard_tripped = True
            message = (
                f"top Fock level population {row.trunc_tail:.3e} exceeds "
                f"{NUMERICS.truncation_guard:g} at t={t:g}; increase the truncation"
            )
            series.warnings.append(message)
            logger.warning(message, extra={"event": "truncation_guard", "t": t})
        series.rows.append(row)

    logger.info(
        "evolution started: %d steps",
        n_steps,
        extra={"event": "evolve_start", "path": config.path.value},
    )
    started = time.perf_counter()
    take_sample(0)
    for step in range(1, n_steps + 1):
        if density is not None:
            density = step_density(density, parts, config.dt, step)
        if vector is not None:
            vector = step_vector(vector, parts.h, config.dt, step)
        if want_fd and ((step + 1) % stride == 0 or (step - 1) % stride == 0):
            neighbours[step] = _total_number(density if density is not None else vector, n_diag)
        if step % stride == 0:
            take_sample(step)

    if want_fd:
        series.rows = [
            _with_finite_difference(index * stride, row, neighbours, config.dt)
            for index, row in enumerate(series.rows)
        ]
    series.max_path_discrepancy = max_discrepancy
    logger.info(
        "evolution finished in %.2fs (%d samples)",
        time.perf_counter() - started,
        len(series.rows),
        extra={"event": "evolve_done", "step": n_steps},
    )
    return series


def _with_finite_difference(step: int, row: SampleRow, neighbours: dict[int, float], dt: float) -> SampleRow:
    """Centered d<N>/dt from the steps either side of a sample."""
    before, after = neighbours.get(step - 1), neighbours.get(step + 1)
    if before is None or after is None:
        return row
    return replace(row, rate_fd=(after - before) / (2.0 * dt))
