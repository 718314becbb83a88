"""
fock_algebra.py — Operators and states on truncated single-mode and joint
two-mode Fock spaces.

Basis ordering: the joint basis is |n_A> ⊗ |n_B> with mode A as the slow
index, i.e. joint index = n_A * dim_b + n_B. embed, tensor_state and the
partial trace all share this convention.

Truncation: the lowering operator keeps levels 0..dim-1, so the truncated
commutator [a, a†] is the identity except at the top level, where it is
-(dim - 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
import math
from typing import Union

import numpy as np

from twomode.shared.errors import InvalidDimensionError

Scalar = Union[int, float, complex]


class Mode(str, Enum):
    A = "A"
    B = "B"


@dataclass(frozen=True)
class ModeDims:
    dim_a: int
    dim_b: int

    def __post_init__(self) -> None:
        for name, value in (("dim_a", self.dim_a), ("dim_b", self.dim_b)):
            if int(value) != value or value < 2:
                raise InvalidDimensionError(f"{name} must be an integer >= 2, got {value!r}")

    @property
    def joint(self) -> int:
        return self.dim_a * self.dim_b

    def of(self, mode: Mode) -> int:
        return self.dim_a if mode == Mode.A else self.dim_b


def _frozen(array: np.ndarray) -> np.ndarray:
    copied = np.array(array, dtype=complex, copy=True)
    copied.flags.writeable = False
    return copied


@dataclass(frozen=True, eq=False)
class Operator:
    """Dense complex square matrix, either single-mode (dims None) or joint."""

    matrix: np.ndarray
    dims: ModeDims | None = None

    def __post_init__(self) -> None:
        matrix = _frozen(self.matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InvalidDimensionError(f"operator matrix must be square, got shape {matrix.shape}")
        if matrix.shape[0] < 2:
            raise InvalidDimensionError("operator side must be >= 2")
        if self.dims is not None and matrix.shape[0] != self.dims.joint:
            raise InvalidDimensionError(
                f"operator side {matrix.shape[0]} does not match joint dimension {self.dims.joint}"
            )
        object.__setattr__(self, "matrix", matrix)

    @property
    def side(self) -> int:
        return self.matrix.shape[0]

    @property
    def is_joint(self) -> bool:
        return self.dims is not None

    def _check_compatible(self, other: "Operator") -> None:
        if self.dims != other.dims or self.side != other.side:
            raise InvalidDimensionError(
                f"incompatible operators: side {self.side} dims {self.dims} "
                f"vs side {other.side} dims {other.dims}"
            )

    def _like(self, matrix: np.ndarray) -> "Operator":
        return Operator(matrix, self.dims)

    def dagger(self) -> "Operator":
        return self._like(self.matrix.conj().T)

    def __matmul__(self, other: "Operator") -> "Operator":
        self._check_compatible(other)
        return self._like(self.matrix @ other.matrix)

    def __add__(self, other: "Operator") -> "Operator":
        self._check_compatible(other)
        return self._like(self.matrix + other.matrix)

    def __sub__(self, other: "Operator") -> "Operator":
        self._check_compatible(other)
        return self._like(self.matrix - other.matrix)

    def __neg__(self) -> "Operator":
        return self._like(-self.matrix)

    def __mul__(self, factor: Scalar) -> "Operator":
        if isinstance(factor, Operator):
            raise TypeError("use @ for operator products")
        return self._like(complex(factor) * self.matrix)

    __rmul__ = __mul__

    def scale(self, factor: Scalar) -> "Operator":
        return self * factor

    def is_hermitian(self, atol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.matrix - self.matrix.conj().T)) <= atol)

    def max_abs_diff(self, other: "Operator") -> float:
        self._check_compatible(other)
        return float(np.max(np.abs(self.matrix - other.matrix)))


def commutator(x: Operator, y: Operator) -> Operator:
    return x @ y - y @ x


def anticommutator(x: Operator, y: Operator) -> Operator:
    return x @ y + y @ x


def identity(dims: ModeDims) -> Operator:
    return Operator(np.eye(dims.joint, dtype=complex), dims)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitude vector; dims None marks a single-mode state.

    tail_weight is the probability discarded by truncation before
    renormalization (zero for exact states).
    """

    amplitudes: np.ndarray
    dims: ModeDims | None = None
    tail_weight: float = 0.0

    def __post_init__(self) -> None:
        amplitudes = _frozen(self.amplitudes)
        if amplitudes.ndim != 1:
            raise InvalidDimensionError("state amplitudes must be a vector")
        if self.dims is not None and amplitudes.shape[0] != self.dims.joint:
            raise InvalidDimensionError(
                f"state length {amplitudes.shape[0]} does not match joint dimension {self.dims.joint}"
            )
        norm = float(np.linalg.norm(amplitudes))
        if not math.isfinite(norm) or norm <= 0.0:
            raise InvalidDimensionError("state norm must be finite and positive")
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def size(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def _check_dim(dim: int) -> None:
    if int(dim) != dim or dim < 2:
        raise InvalidDimensionError(f"dimension must be an integer >= 2, got {dim!r}")


def lowering_op(dim: int) -> Operator:
    """Single-mode a with M[n-1, n] = sqrt(n)."""
    _check_dim(dim)
    return Operator(np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1))


def raising_op(dim: int) -> Operator:
    return lowering_op(dim).dagger()


def number_op(dim: int) -> Operator:
    _check_dim(dim)
    return Operator(np.diag(np.arange(dim, dtype=float)))


def embed(op: Operator, mode: Mode, dims: ModeDims) -> Operator:
    """Lift a single-mode operator to the joint space (op⊗I for A, I⊗op for B)."""
    if op.is_joint:
        raise InvalidDimensionError("embed expects a single-mode operator")
    mode = Mode(mode)
    expected = dims.of(mode)
    if op.side != expected:
        raise InvalidDimensionError(
            f"operator side {op.side} does not match mode {mode.value} dimension {expected}"
        )
    if mode == Mode.A:
        matrix = np.kron(op.matrix, np.eye(dims.dim_b))
    else:
        matrix = np.kron(np.eye(dims.dim_a), op.matrix)
    return Operator(matrix, dims)


def fock_state(n: int, dim: int) -> StateVector:
    _check_dim(dim)
    if int(n) != n or not 0 <= n < dim:
        raise InvalidDimensionError(f"Fock index {n!r} outside 0..{dim - 1}")
    amplitudes = np.zeros(dim, dtype=complex)
    amplitudes[n] = 1.0
    return StateVector(amplitudes)


def coherent_state(alpha: complex, dim: int) -> StateVector:
    """Truncated coherent state, renormalized; the discarded weight is kept."""
    _check_dim(dim)
    alpha = complex(alpha)
    amplitudes = np.zeros(dim, dtype=complex)
    amplitudes[0] = 1.0
    for n in range(1, dim):
        amplitudes[n] = amplitudes[n - 1] * alpha / math.sqrt(n)
    kept = math.exp(-abs(alpha) ** 2) * float(np.sum(np.abs(amplitudes) ** 2))
    tail = max(0.0, 1.0 - kept)
    amplitudes /= np.linalg.norm(amplitudes)
    return StateVector(amplitudes, tail_weight=tail)


def tensor_state(psi_a: StateVector, psi_b: StateVector) -> StateVector:
    if psi_a.dims is not None or psi_b.dims is not None:
        raise InvalidDimensionError("tensor_state expects two single-mode states")
    dims = ModeDims(psi_a.size, psi_b.size)
    tail = 1.0 - (1.0 - psi_a.tail_weight) * (1.0 - psi_b.tail_weight)
    return StateVector(np.kron(psi_a.amplitudes, psi_b.amplitudes), dims, tail_weight=tail)


def joint_index(n_a: int, n_b: int, dims: ModeDims) -> int:
    if not (0 <= n_a < dims.dim_a and 0 <= n_b < dims.dim_b):
        raise InvalidDimensionError(f"occupations ({n_a}, {n_b}) outside dims {dims}")
    return n_a * dims.dim_b + n_b


def mode_operators(dims: ModeDims) -> tuple[Operator, Operator]:
    """Joint lowering operators (a, b)."""
    a = embed(lowering_op(dims.dim_a), Mode.A, dims)
    b = embed(lowering_op(dims.dim_b), Mode.B, dims)
    return a, b


def number_operators(dims: ModeDims) -> tuple[Operator, Operator, Operator]:
    """Joint (n_A, n_B, N)."""
    n_a = embed(number_op(dims.dim_a), Mode.A, dims)
    n_b = embed(number_op(dims.dim_b), Mode.B, dims)
    return n_a, n_b, n_a + n_b
