"""
spectral.py — Nonlocal-mode analysis of the linear model.

In the single-excitation manifold the local block is written in the
ordered basis (|0_A 1_B>, |1_A 0_B>) and the nonlocal block in
(c†|0>, d†|0>), with c = (a + ib)/√2 and d = (a − ib)/√2.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from twomode.config import NUMERICS
from twomode.shared.errors import InvalidDimensionError, ModelSpecError

from .fock_algebra import ModeDims, Operator, joint_index, mode_operators, number_operators
from .model import HamiltonianParts, ModelSpec

__all__ = [
    "BlockPair",
    "PTPhase",
    "block_eigenvalues",
    "classify_pt_phase",
    "nonlocal_basis",
    "nonlocal_mode_operators",
    "nonlocal_parts",
    "project_single_excitation",
    "single_excitation_blocks",
    "to_nonlocal",
]

_SQRT_HALF = 1.0 / math.sqrt(2.0)


class PTPhase(str, Enum):
    UNBROKEN = "unbroken"
    BROKEN = "broken"
    EXCEPTIONAL = "exceptional"


@dataclass(frozen=True, eq=False)
class BlockPair:
    h_local: np.ndarray
    h_nonlocal: np.ndarray
    gamma_rate: float
    g_eff: float


def _require_linear(spec: ModelSpec) -> None:
    if not spec.is_linear:
        raise ModelSpecError(
            "single-excitation blocks require u = 0 and the identity deformation, "
            f"got u={spec.u}, deformation={spec.deformation.value}"
        )


def single_excitation_blocks(spec: ModelSpec) -> BlockPair:
    _require_linear(spec)
    omega0, gamma, g_eff = spec.omega0, spec.gamma_rate, spec.g_eff
    h_local = np.array([[omega0, spec.g_ab], [spec.g_ba, omega0]], dtype=complex)
    h_nonlocal = np.array(
        [[omega0 + 1j * gamma, 1j * g_eff], [-1j * g_eff, omega0 - 1j * gamma]],
        dtype=complex,
    )
    return BlockPair(h_local=h_local, h_nonlocal=h_nonlocal, gamma_rate=gamma, g_eff=g_eff)


def nonlocal_basis() -> np.ndarray:
    """Columns are c†|0> and d†|0> in the local single-excitation basis."""
    return _SQRT_HALF * np.array([[-1j, 1j], [1.0, 1.0]], dtype=complex)


def to_nonlocal(block: np.ndarray) -> np.ndarray:
    v = nonlocal_basis()
    return v.conj().T @ _as_block(block) @ v


def project_single_excitation(op: Operator) -> np.ndarray:
    """Restriction of a joint operator to span{|0,1>, |1,0>}."""
    if op.dims is None:
        raise InvalidDimensionError("project_single_excitation expects a joint operator")
    indices = [joint_index(0, 1, op.dims), joint_index(1, 0, op.dims)]
    return np.array(op.matrix[np.ix_(indices, indices)], dtype=complex)


def _as_block(block: np.ndarray) -> np.ndarray:
    block = np.asarray(block, dtype=complex)
    if block.shape != (2, 2):
        raise InvalidDimensionError(f"expected a 2×2 block, got shape {block.shape}")
    return block


def _discriminant(block: np.ndarray) -> complex:
    a, b = complex(block[0, 0]), complex(block[0, 1])
    c, d = complex(block[1, 0]), complex(block[1, 1])
    half_diff = (a - d) / 2
    return half_diff * half_diff + b * c


def block_eigenvalues(block: np.ndarray) -> tuple[complex, complex]:
    """Closed-form roots, sorted by real part then imaginary part."""
    block = _as_block(block)
    centre = (complex(block[0, 0]) + complex(block[1, 1])) / 2
    root = cmath.sqrt(_discriminant(block))
    first, second = sorted((centre - root, centre + root), key=lambda z: (z.real, z.imag))
    return first, second


def classify_pt_phase(block: np.ndarray, tol: float = NUMERICS.pt_threshold) -> PTPhase:
    block = _as_block(block)
    if abs(_discriminant(block)) < tol:
        return PTPhase.EXCEPTIONAL
    eigenvalues = block_eigenvalues(block)
    if max(abs(z.imag) for z in eigenvalues) < tol:
        return PTPhase.UNBROKEN
    return PTPhase.BROKEN


def nonlocal_mode_operators(dims: ModeDims) -> tuple[Operator, Operator]:
    """Joint (c, d) on the truncated space."""
    a, b = mode_operators(dims)
    c = (a + b * 1j) * _SQRT_HALF
    d = (a - b * 1j) * _SQRT_HALF
    return c, d


def nonlocal_parts(spec: ModelSpec, dims: ModeDims) -> HamiltonianParts:
    """H₊ = ω₀N + iG(c†d − d†c) and H₋ = iΓ(c†c − d†d) for the linear model."""
    _require_linear(spec)
    c, d = nonlocal_mode_operators(dims)
    c_dag, d_dag = c.dagger(), d.dagger()
    _, _, total = number_operators(dims)
    h_plus = total * spec.omega0 + (c_dag @ d - d_dag @ c) * (1j * spec.g_eff)
    h_minus = (c_dag @ c - d_dag @ d) * (1j * spec.gamma_rate)
    return HamiltonianParts(h=h_plus + h_minus, h_plus=h_plus, h_minus=h_minus)
