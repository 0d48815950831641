"""Operator algebra on the sectors of the five representations."""
from .hamiltonians import (
    CHAIN,
    CIRCLE_TERMS,
    Parts,
    RepKind,
    build_circle_literal,
    build_hamiltonian,
    build_symmetric_hamiltonian,
    hamiltonian_parts,
    label_parts,
)
from .lattice import LabelOp, LeakError
from .numbers import NumberKind, ShiftOps, build_number, number_values, shift_ops
from .sparse import BasisMismatch, SparseOp, commutator
from .transport import (
    CHAIN_STEPS,
    ab_phase,
    compose_chain,
    gauge_rotation,
    permutation_between,
    representation_permutation,
    transport,
    transport_vector,
)
from .verify import verify_equivalences

__all__ = [
    "CHAIN",
    "CHAIN_STEPS",
    "CIRCLE_TERMS",
    "BasisMismatch",
    "LabelOp",
    "LeakError",
    "NumberKind",
    "Parts",
    "RepKind",
    "ShiftOps",
    "SparseOp",
    "ab_phase",
    "build_circle_literal",
    "build_hamiltonian",
    "build_number",
    "build_symmetric_hamiltonian",
    "commutator",
    "compose_chain",
    "gauge_rotation",
    "hamiltonian_parts",
    "label_parts",
    "number_values",
    "permutation_between",
    "representation_permutation",
    "shift_ops",
    "transport",
    "transport_vector",
    "verify_equivalences",
]
