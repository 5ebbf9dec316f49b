"""Fermion-to-qubit encodings from summation sets, including the multilayer segmented parity family."""

__version__ = "0.1.0"

from .catalog import (
    bk_tree, family_from_descriptor, jw, jw_variant, msp, msp_closed_form, msp_v1, msp_v2,
    parity, sbk, sets_from_descriptor, two_sp,
)
from .circuit import Circuit, CountReport, Gate, emit_qasm, gate_counts, trotter_circuit, trotter_step
from .errors import ParseError, SegmapError, SymmetryViolation, UnsupportedSize, ValidationError
from .fermion import FermionOperator, LadderFactor, parse_fermion_file, permute_modes
from .framework import (
    MappingSets, MappingTree, SummationFamily, build_tree, check_constraints, decode_state,
    derive_sets, encode_state, family_to_matrix, matrix_to_family, tree_to_family,
)
from .pauli import PauliString, QubitOperator
from .reduction import SymmetryAssignment, find_total_parity_qubit, spin_block_permutation, taper
from .transform import map_hamiltonian, map_ladder, mapping_pauli_weight
