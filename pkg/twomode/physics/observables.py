"""
observables.py — Normalized expectation values and rate diagnostics.

<A>_t = Tr(Aρ)/Tr(ρ). The two rate diagnostics are independent oracles
for d<N>/dt: the generalized Heisenberg equation evaluated for any
operator, and the explicit total-number rate of the linear coupling,
implemented term by term without normal-ordering simplification.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import math
from typing import Sequence

import numpy as np

from twomode.config import NUMERICS
from twomode.shared.errors import ImaginaryResidueError, InvalidDimensionError, ModelSpecError

from .fock_algebra import ModeDims, Operator, anticommutator, commutator, mode_operators, number_operators
from .model import HamiltonianParts
from .states import QuantumState


@dataclass(frozen=True)
class ExpectationRecord:
    name: str
    t: float
    value: complex

    @property
    def imag_residue(self) -> float:
        return abs(self.value.imag)

    def real_value(self, tol: float = NUMERICS.imag_residue_tol) -> float:
        return real_part(self.value, self.name, tol)


def _check_dims(op: Operator, state: QuantumState) -> None:
    if op.dims != state.dims:
        raise InvalidDimensionError(f"operator dims {op.dims} do not match state dims {state.dims}")


def expectation(op: Operator, state: QuantumState) -> complex:
    _check_dims(op, state)
    if state.is_density:
        rho = state.data
        # Tr(Aρ) without forming the product.
        return complex(np.sum(op.matrix * rho.T) / np.trace(rho))
    psi = state.data
    return complex(np.vdot(psi, op.matrix @ psi) / np.vdot(psi, psi))


def real_part(value: complex, name: str = "observable", tol: float = NUMERICS.imag_residue_tol) -> float:
    """Drop the imaginary part after checking it is numerical dust."""
    if abs(value.imag) > tol:
        raise ImaginaryResidueError(
            f"{name} has imaginary residue {value.imag:.3e} above tolerance {tol:g}"
        )
    return float(value.real)


def record(name: str, op: Operator, state: QuantumState, t: float) -> ExpectationRecord:
    return ExpectationRecord(name=name, t=t, value=expectation(op, state))


def heisenberg_rhs(op: Operator, state: QuantumState, parts: HamiltonianParts) -> complex:
    """−i<[A,H₊]> − i<{A,H₋}> + 2i<A><H₋>."""
    _check_dims(op, state)
    return (
        -1j * expectation(commutator(op, parts.h_plus), state)
        - 1j * expectation(anticommutator(op, parts.h_minus), state)
        + 2j * expectation(op, state) * expectation(parts.h_minus, state)
    )


def number_rate_rhs(state: QuantumState, g_ab: float, g_ba: float) -> float:
    """Total-number rate of the linear non-reciprocal coupling, term by term:

    i(g_AB − g_BA)[<(a†)²ab − a†a²b†> + <a†b − ab†>
                   + <b†b²a† − (b†)²ba> + <N><ab† − a†b>]
    """
    prefactor = g_ab - g_ba
    if prefactor == 0.0:
        return 0.0
    first_op, second_op, third_op, total, exchange = _rate_operators(state.dims)

    first = expectation(first_op, state)
    second = expectation(second_op, state)
    third = expectation(third_op, state)
    fourth = expectation(total, state) * expectation(exchange, state)
    value = 1j * prefactor * (first + second + third + fourth)
    return real_part(value, "number rate")


def centered_difference(values: Sequence[float], h: float) -> np.ndarray:
    """Second-order centered derivative; the end points are NaN."""
    data = np.asarray(values, dtype=float)
    result = np.full_like(data, math.nan)
    if data.size >= 3:
        result[1:-1] = (data[2:] - data[:-2]) / (2.0 * h)
    return result


def linear_populations_closed_form(
    alpha: complex, g_ab: float, g_ba: float, t: np.ndarray | float
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Exact <a†a>, <b†b>, <N> of the linear model started in |α>|0>.

    With Ω = sqrt(g_AB g_BA) the asymmetric coupling is similar to a
    symmetric beam splitter of strength Ω inside every number manifold, so
    <a†a> = |α|² cos²Ωt and <b†b> = |α|² (g_AB/g_BA) sin²Ωt.
    """
    if g_ba == 0.0 or g_ab * g_ba <= 0.0:
        raise ModelSpecError("closed form requires g_AB·g_BA > 0")
    times = np.asarray(t, dtype=float)
    omega = math.sqrt(g_ab * g_ba)
    intensity = abs(complex(alpha)) ** 2
    cos_sq = np.cos(omega * times) ** 2
    sin_sq = np.sin(omega * times) ** 2
    n_a = intensity * cos_sq
    n_b = intensity * (g_ab / g_ba) * sin_sq
    return n_a, n_b, n_a + n_b


@lru_cache(maxsize=8)
def _rate_operators(dims: ModeDims) -> tuple[Operator, Operator, Operator, Operator, Operator]:
    a, b = mode_operators(dims)
    ad, bd = a.dagger(), b.dagger()
    _, _, total = number_operators(dims)
    return (
        ad @ ad @ a @ b - ad @ a @ a @ bd,
        ad @ b - a @ bd,
        bd @ b @ b @ ad - bd @ bd @ b @ a,
        total,
        a @ bd - ad @ b,
    )
