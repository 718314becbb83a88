"""
entanglement.py — Reduced single-mode states, von Neumann entropy (bits)
and purity.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from twomode.config import NUMERICS
from twomode.shared.errors import InvalidReducedStateError

from .fock_algebra import Mode
from .states import QuantumState


@dataclass(frozen=True, eq=False)
class ReducedState:
    matrix: np.ndarray
    kept: Mode

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=complex, copy=True)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InvalidReducedStateError(f"reduced state must be square, got {matrix.shape}")
        tol = NUMERICS.state_hermitian_tol
        if np.max(np.abs(matrix - matrix.conj().T)) > tol:
            raise InvalidReducedStateError("reduced state is not Hermitian")
        if abs(np.trace(matrix) - 1.0) > tol:
            raise InvalidReducedStateError(f"reduced state trace {np.trace(matrix).real:.12f} is not 1")
        matrix.flags.writeable = False
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "kept", Mode(self.kept))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def purity(self) -> float:
        return float(np.sum(np.abs(self.matrix) ** 2))


def partial_trace(state: QuantumState, keep: Mode) -> ReducedState:
    """Trace out the other mode under the joint |n_A>⊗|n_B> ordering."""
    keep = Mode(keep)
    dims = state.dims
    if state.is_density:
        rho = state.density_matrix().reshape(dims.dim_a, dims.dim_b, dims.dim_a, dims.dim_b)
        if keep == Mode.A:
            reduced = np.einsum("ijkj->ik", rho)
        else:
            reduced = np.einsum("ijil->jl", rho)
    else:
        psi = state.data / np.linalg.norm(state.data)
        amplitudes = psi.reshape(dims.dim_a, dims.dim_b)
        if keep == Mode.A:
            reduced = amplitudes @ amplitudes.conj().T
        else:
            reduced = amplitudes.T @ amplitudes.conj()
    # Hermitian part only; the discarded piece is round-off.
    reduced = 0.5 * (reduced + reduced.conj().T)
    return ReducedState(reduced, keep)


def von_neumann_entropy(rho: ReducedState) -> float:
    """S = −Σ λ log₂ λ over the clamped spectrum, 0·log 0 ≡ 0."""
    eigenvalues = np.linalg.eigvalsh(rho.matrix)
    floor = -NUMERICS.eigenvalue_clamp
    if eigenvalues.min() < floor:
        raise InvalidReducedStateError(
            f"reduced state has eigenvalue {eigenvalues.min():.3e} below {floor:g}"
        )
    eigenvalues = np.clip(eigenvalues, 0.0, 1.0)
    positive = eigenvalues[eigenvalues > 0.0]
    entropy = float(-np.sum(positive * np.log2(positive)))
    return min(max(entropy, 0.0), math.log2(rho.dim))


def purity(state: QuantumState) -> float:
    """Tr(ρ′²) of the joint state."""
    if state.is_density:
        rho = state.density_matrix()
        # Tr(ρ²) = Σ|ρ_ij|² for Hermitian ρ.
        return float(np.sum(np.abs(rho) ** 2))
    return 1.0
