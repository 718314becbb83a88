"""Truncated two-mode Fock-space physics: operators, model, evolution and analysis."""

from .entanglement import ReducedState, partial_trace, purity, von_neumann_entropy
from .fock_algebra import (
    Mode,
    ModeDims,
    Operator,
    StateVector,
    coherent_state,
    embed,
    fock_state,
    lowering_op,
    mode_operators,
    number_op,
    number_operators,
    raising_op,
    tensor_state,
)
from .model import (
    BecModelSpec,
    Deformation,
    HamiltonianParts,
    ModelSpec,
    build_bec_hamiltonian,
    build_hamiltonian,
    build_spin_form,
    decompose,
    spin_operators,
)
from .observables import expectation, heisenberg_rhs, linear_populations_closed_form, number_rate_rhs
from .propagator import (
    ALL_COLUMNS,
    STANDARD_COLUMNS,
    InitialKind,
    InitialStateSpec,
    PathMode,
    SimulationConfig,
    TimeSeries,
    evolve,
)
from .spectral import BlockPair, PTPhase, block_eigenvalues, classify_pt_phase, single_excitation_blocks
from .states import QuantumState, StateKind

__all__ = [
    "ALL_COLUMNS",
    "BecModelSpec",
    "BlockPair",
    "Deformation",
    "HamiltonianParts",
    "InitialKind",
    "InitialStateSpec",
    "Mode",
    "ModeDims",
    "ModelSpec",
    "Operator",
    "PTPhase",
    "PathMode",
    "QuantumState",
    "ReducedState",
    "STANDARD_COLUMNS",
    "SimulationConfig",
    "StateKind",
    "StateVector",
    "TimeSeries",
    "block_eigenvalues",
    "build_bec_hamiltonian",
    "build_hamiltonian",
    "build_spin_form",
    "classify_pt_phase",
    "coherent_state",
    "decompose",
    "embed",
    "evolve",
    "expectation",
    "fock_state",
    "heisenberg_rhs",
    "linear_populations_closed_form",
    "lowering_op",
    "mode_operators",
    "number_op",
    "number_operators",
    "number_rate_rhs",
    "partial_trace",
    "purity",
    "raising_op",
    "single_excitation_blocks",
    "spin_operators",
    "tensor_state",
    "von_neumann_entropy",
]
