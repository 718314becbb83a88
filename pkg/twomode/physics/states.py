"""
states.py — Normalized joint states carried by the propagator.

A QuantumState stores either a unit-norm vector or a unit-trace density
matrix; the discarded normalization accumulates in log_trace so the raw,
unnormalized trace stays recoverable as exp(log_trace).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from twomode.config import NUMERICS
from twomode.shared.errors import InvalidDimensionError, StateInvariantError

from .fock_algebra import ModeDims, StateVector


class StateKind(str, Enum):
    PURE_VECTOR = "pure_vector"
    DENSITY_MATRIX = "density_matrix"


@dataclass(frozen=True, eq=False)
class QuantumState:
    kind: StateKind
    data: np.ndarray
    dims: ModeDims
    log_trace: float = 0.0

    def __post_init__(self) -> None:
        kind = StateKind(self.kind)
        data = np.array(self.data, dtype=complex, copy=True)
        data.flags.writeable = False
        joint = self.dims.joint
        if kind == StateKind.PURE_VECTOR and data.shape != (joint,):
            raise InvalidDimensionError(f"vector state must have shape ({joint},), got {data.shape}")
        if kind == StateKind.DENSITY_MATRIX and data.shape != (joint, joint):
            raise InvalidDimensionError(
                f"density state must have shape ({joint}, {joint}), got {data.shape}"
            )
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "data", data)

    @classmethod
    def from_vector(cls, psi: StateVector, kind: StateKind = StateKind.PURE_VECTOR) -> "QuantumState":
        """Normalize a joint vector; its log-norm² goes into log_trace."""
        if psi.dims is None:
            raise InvalidDimensionError("joint state required; use tensor_state first")
        norm_sq = float(np.vdot(psi.amplitudes, psi.amplitudes).real)
        normalized = psi.amplitudes / math.sqrt(norm_sq)
        if StateKind(kind) == StateKind.DENSITY_MATRIX:
            data = np.outer(normalized, normalized.conj())
        else:
            data = normalized
        return cls(kind, data, psi.dims, math.log(norm_sq))

    @classmethod
    def from_density(cls, rho: np.ndarray, dims: ModeDims) -> "QuantumState":
        """Wrap a (possibly mixed, unnormalized) density matrix."""
        rho = np.asarray(rho, dtype=complex)
        trace = float(np.trace(rho).real)
        if not math.isfinite(trace) or trace <= 0.0:
            raise InvalidDimensionError(f"density matrix trace must be positive, got {trace}")
        return cls(StateKind.DENSITY_MATRIX, rho / trace, dims, math.log(trace))

    @property
    def is_density(self) -> bool:
        return self.kind == StateKind.DENSITY_MATRIX

    def density_matrix(self) -> np.ndarray:
        """Normalized ρ′ whatever the storage kind."""
        if self.is_density:
            return self.data / np.trace(self.data).real
        psi = self.data / np.linalg.norm(self.data)
        return np.outer(psi, psi.conj())

    def check_invariants(self, atol: float = NUMERICS.state_hermitian_tol) -> None:
        if self.is_density:
            if np.max(np.abs(self.data - self.data.conj().T)) > atol:
                raise StateInvariantError("density matrix is not Hermitian")
            if abs(np.trace(self.data) - 1.0) > atol:
                raise StateInvariantError("density matrix trace is not 1")
        elif abs(np.linalg.norm(self.data) - 1.0) > atol:
            raise StateInvariantError("state vector is not unit norm")
