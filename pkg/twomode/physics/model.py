"""
model.py — The generic resonant two-mode Hamiltonian, its Hermitian /
anti-Hermitian split, and the Schwinger-boson spin mapping.

H = ω₀(a†a + b†b) + u a†a†aa + g_AB a b† + g_BA f(a†a) a† b

The deformed coupling is applied in the written order f(a†a)·a†·b; the
Kerr term acts on mode A only.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from twomode.shared.errors import ModelSpecError

from .fock_algebra import (
    Mode,
    ModeDims,
    Operator,
    embed,
    mode_operators,
    number_operators,
)


class Deformation(str, Enum):
    IDENTITY = "identity"
    SQRT_N = "sqrt_n"


@dataclass(frozen=True)
class ModelSpec:
    omega0: float = 1.0
    u: float = 0.0
    g_ab: float = 0.0
    g_ba: float = 0.0
    deformation: Deformation = Deformation.IDENTITY

    def __post_init__(self) -> None:
        for name in ("omega0", "u", "g_ab", "g_ba"):
            value = getattr(self, name)
            if isinstance(value, complex):
                raise ModelSpecError(f"{name} must be real, got {value!r}")
            if not math.isfinite(float(value)):
                raise ModelSpecError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.omega0 <= 0:
            raise ModelSpecError(f"omega0 must be > 0, got {self.omega0}")
        object.__setattr__(self, "deformation", Deformation(self.deformation))

    @classmethod
    def from_asymmetry(
        cls,
        g: float,
        r: float,
        omega0: float = 1.0,
        u: float = 0.0,
        deformation: Deformation = Deformation.IDENTITY,
    ) -> "ModelSpec":
        """Figure-caption parameterization: g_AB = g·r, g_BA = g."""
        return cls(omega0=omega0, u=u, g_ab=g * r, g_ba=g, deformation=deformation)

    @property
    def is_linear(self) -> bool:
        return self.u == 0.0 and self.deformation == Deformation.IDENTITY

    @property
    def gamma_rate(self) -> float:
        return (self.g_ab - self.g_ba) / 2.0

    @property
    def g_eff(self) -> float:
        return (self.g_ab + self.g_ba) / 2.0


@dataclass(frozen=True)
class BecModelSpec:
    gamma: float = 0.0
    v: float = 0.0
    c_int: float = 0.0

    def __post_init__(self) -> None:
        for name in ("gamma", "v", "c_int"):
            value = getattr(self, name)
            if isinstance(value, complex) or not math.isfinite(float(value)):
                raise ModelSpecError(f"{name} must be a finite real number, got {value!r}")
            object.__setattr__(self, name, float(value))


@dataclass(frozen=True)
class HamiltonianParts:
    h: Operator
    h_plus: Operator
    h_minus: Operator


def deformation_operator(deformation: Deformation, dims: ModeDims) -> Operator:
    """f(a†a) as a diagonal joint operator."""
    levels = np.arange(dims.dim_a, dtype=float)
    if Deformation(deformation) == Deformation.SQRT_N:
        diagonal = np.sqrt(levels)
    else:
        diagonal = np.ones_like(levels)
    return embed(Operator(np.diag(diagonal)), Mode.A, dims)


def build_hamiltonian(spec: ModelSpec, dims: ModeDims) -> Operator:
    a, b = mode_operators(dims)
    a_dag, b_dag = a.dagger(), b.dagger()
    _, _, total = number_operators(dims)
    f = deformation_operator(spec.deformation, dims)

    h = spec.omega0 * total
    if spec.u != 0.0:
        h = h + spec.u * (a_dag @ a_dag @ a @ a)
    h = h + spec.g_ab * (a @ b_dag)
    h = h + spec.g_ba * (f @ a_dag @ b)
    return h


def decompose(h: Operator) -> HamiltonianParts:
    h_dag = h.dagger()
    h_plus = 0.5 * (h + h_dag)
    h_minus = 0.5 * (h - h_dag)
    return HamiltonianParts(h=h, h_plus=h_plus, h_minus=h_minus)


def spin_operators(dims: ModeDims) -> tuple[Operator, Operator, Operator, Operator]:
    """Schwinger-boson (Lx, Ly, Lz, N) with L₊ = a†b, L_z = (a†a − b†b)/2."""
    a, b = mode_operators(dims)
    l_plus = a.dagger() @ b
    l_minus = l_plus.dagger()
    n_a, n_b, total = number_operators(dims)
    lx = 0.5 * (l_plus + l_minus)
    ly = (l_plus - l_minus) * (1.0 / 2j)
    lz = 0.5 * (n_a - n_b)
    return lx, ly, lz, total


def build_spin_form(spec: ModelSpec, dims: ModeDims) -> Operator:
    """ω₀N + g_x Lx − i g_y Ly with g_x = g_AB + g_BA, g_y = g_AB − g_BA."""
    if spec.u != 0.0:
        raise ModelSpecError(f"spin form requires u = 0, got u={spec.u}")
    if spec.deformation != Deformation.IDENTITY:
        raise ModelSpecError(
            f"spin form requires the identity deformation, got {spec.deformation.value}"
        )
    lx, ly, _, total = spin_operators(dims)
    g_x = spec.g_ab + spec.g_ba
    g_y = spec.g_ab - spec.g_ba
    return spec.omega0 * total + g_x * lx + (-1j * g_y) * ly


def build_bec_hamiltonian(spec: BecModelSpec, dims: ModeDims) -> Operator:
    """−2iγ L_z + 2v L_x + 2c L_z²."""
    lx, _, lz, _ = spin_operators(dims)
    return (-2j * spec.gamma) * lz + (2.0 * spec.v) * lx + (2.0 * spec.c_int) * (lz @ lz)
