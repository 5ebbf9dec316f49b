"""Dense-matrix oracle for checking encodings.

Basis convention, used everywhere in this module: the computational basis
index is ``b = sum_j n_j * 2**j`` (mode / qubit 0 is the least significant
bit), and bit value 0 means unoccupied. Fermionic matrices are built
straight from the occupation-basis action of ``a_j`` and ``a_j^``, with no
reference to any encoding, so they can check the mapped operators
independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

import numpy as np
import scipy.sparse as sp

from .errors import UnsupportedSize, ValidationError
from .fermion import FermionOperator
from .framework import MappingSets, SummationFamily, encode_state
from .pauli import PauliString, QubitOperator
from .transform import map_ladder

BIT_ORDER = "little"  # basis index = sum_j n_j 2**j
MAX_DENSE = 12
MAX_EXHAUSTIVE = 8
TOL = 1e-12


@dataclass(frozen=True)
class DenseOperator:
    matrix: np.ndarray
    bit_order: str = field(default=BIT_ORDER)

    def __post_init__(self):
        d = self.matrix.shape[0]
        if self.matrix.shape != (d, d) or d & (d - 1):
            raise ValidationError(f"dense operator must be square with power-of-two size, got {self.matrix.shape}")

    @property
    def n_qubits(self) -> int:
        return self.matrix.shape[0].bit_length() - 1

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


def _check_size(M, cap=MAX_DENSE):
    if M > cap:
        raise UnsupportedSize(f"dense oracle is limited to {cap} modes/qubits, got {M}")
    if M < 0:
        raise ValidationError("size must be non-negative")


def _sparse_ladder(j: int, dagger: bool, M: int) -> sp.csr_matrix:
    dim = 1 << M
    b = np.arange(dim)
    occupied = (b >> j) & 1
    src = b[occupied == (0 if dagger else 1)]
    dst = src ^ (1 << j)
    below = src & ((1 << j) - 1)
    parity = np.array([int(v).bit_count() & 1 for v in below], dtype=np.int64)
    vals = np.where(parity == 1, -1.0, 1.0).astype(complex)
    return sp.csr_matrix((vals, (dst, src)), shape=(dim, dim))


def dense_ladder(j: int, dagger: bool, M: int) -> DenseOperator:
    """Occupation-basis matrix of ``a_j`` (or ``a_j^``) with sign ``(-1)^(n_0+...+n_{j-1})``."""
    _check_size(M)
    if not 0 <= j < M:
        raise ValidationError(f"mode {j} out of range for {M} modes")
    return DenseOperator(_sparse_ladder(j, dagger, M).toarray())


def _sparse_fermion(op: FermionOperator) -> sp.csr_matrix:
    M = op.n_modes
    dim = 1 << M
    cache = {}
    total = sp.csr_matrix((dim, dim), dtype=complex)
    for term in op.terms:
        mats = []
        for f in term.factors:
            key = (f.mode, f.dagger)
            if key not in cache:
                cache[key] = _sparse_ladder(f.mode, f.dagger, M)
            mats.append(cache[key])
        prod = reduce(lambda a, b: a @ b, mats) if mats else sp.identity(dim, dtype=complex, format="csr")
        total = total + term.coefficient * prod
    return total


def dense_fermion(op: FermionOperator) -> np.ndarray:
    _check_size(op.n_modes)
    return _sparse_fermion(op).toarray()


def _parity(v: np.ndarray) -> np.ndarray:
    # bit parity of each entry, enough for indices below 2**16
    v = v.copy()
    for shift in (1, 2, 4, 8):
        v ^= v >> shift
    return v & 1


def _pauli_entries(p: PauliString, M: int):
    """Rows, columns and values of the nonzeros of ``p`` (one per column)."""
    flip = zmask = 0
    n_y = 0
    for q, axis in p.factors:
        if q >= M:
            raise ValidationError(f"string {p} acts on qubit {q} outside {M} qubits")
        if axis in "XY":
            flip |= 1 << q
        if axis in "YZ":
            zmask |= 1 << q
        n_y += axis == "Y"
    b = np.arange(1 << M)
    # Y = i X Z on each qubit: the Z acts first on the column bit.
    vals = (1j ** n_y) * (1.0 - 2.0 * _parity(b & zmask))
    return b ^ flip, b, vals


def dense_qubit(op: QubitOperator, M: int) -> DenseOperator:
    _check_size(M)
    if op.n_qubits > M:
        raise ValidationError(f"operator touches {op.n_qubits} qubits, more than {M}")
    total = np.zeros((1 << M, 1 << M), dtype=complex)
    for p, c in op.items():
        rows, cols, vals = _pauli_entries(p, M)
        total[rows, cols] += c * vals
    return DenseOperator(total)


def dense_pauli(p: PauliString, M: int) -> np.ndarray:
    _check_size(M)
    rows, cols, vals = _pauli_entries(p, M)
    out = np.zeros((1 << M, 1 << M), dtype=complex)
    out[rows, cols] = vals
    return out


def encoding_permutation(fam: SummationFamily) -> np.ndarray:
    """Permutation matrix sending ``|n>`` to ``|encode_state(n)>``."""
    M = fam.n_modes
    _check_size(M)
    dim = 1 << M
    perm = np.zeros((dim, dim))
    for b in range(dim):
        n = [(b >> k) & 1 for k in range(M)]
        x = encode_state(fam, n)
        perm[sum(bit << k for k, bit in enumerate(x)), b] = 1
    return perm


def _all_states(M):
    b = np.arange(1 << M)
    return ((b[:, None] >> np.arange(M)) & 1).astype(np.int64)


@dataclass
class VerificationReport:
    n_modes: int
    anticommutator_residual: float
    basis_equivalence_residual: float
    parity_identity: bool
    flip_identity: bool
    threshold: float = TOL

    @property
    def anticommutation_ok(self) -> bool:
        return self.anticommutator_residual < self.threshold

    @property
    def basis_equivalence_ok(self) -> bool:
        return self.basis_equivalence_residual < self.threshold

    @property
    def passed(self) -> bool:
        return (self.anticommutation_ok and self.basis_equivalence_ok
                and self.parity_identity and self.flip_identity)

    def to_dict(self) -> dict:
        return {
            "n_modes": self.n_modes,
            "anticommutator_residual": self.anticommutator_residual,
            "basis_equivalence_residual": self.basis_equivalence_residual,
            "parity_identity": self.parity_identity,
            "flip_identity": self.flip_identity,
            "threshold": self.threshold,
            "passed": self.passed,
        }

    def to_text(self) -> str:
        def mark(ok):
            return "PASS" if ok else "FAIL"

        return (
            f"modes: {self.n_modes}\n"
            f"anticommutation: {mark(self.anticommutation_ok)} (max residual {self.anticommutator_residual:.3e})\n"
            f"basis equivalence: {mark(self.basis_equivalence_ok)} (max residual {self.basis_equivalence_residual:.3e})\n"
            f"parity identity: {mark(self.parity_identity)}\n"
            f"flip identity: {mark(self.flip_identity)}\n"
            f"overall: {mark(self.passed)}\n"
        )


def anticommutator_residual(images: dict[tuple[int, bool], np.ndarray], M: int) -> float:
    """Max entry deviation of all ``{a, b}`` from the canonical relations."""
    eye = np.eye(1 << M)
    worst = 0.0
    for i in range(M):
        for j in range(M):
            ai, aj = images[(i, False)], images[(j, False)]
            ci, cj = images[(i, True)], images[(j, True)]
            worst = max(
                worst,
                np.abs(ai @ aj + aj @ ai).max(),
                np.abs(ci @ cj + cj @ ci).max(),
                np.abs(ai @ cj + cj @ ai - (eye if i == j else 0)).max(),
            )
    return float(worst)


def parity_and_flip_identities(sets: MappingSets) -> tuple[bool, bool]:
    """Check both identities over every basis state (``M <= 8``).

    Parity: ``sum_{k in P(j)} x_k == n_0 + ... + n_{j-1}``.
    Flip: ``x_j == n_j + sum_{k in F(j)} x_k``. All sums mod 2.
    """
    M = sets.n_modes
    _check_size(M, MAX_EXHAUSTIVE)
    n = _all_states(M)
    A = np.eye(M, dtype=np.int64)
    for j, s in enumerate(sets.S):
        A[j, list(s)] = 1
    x = (n @ A.T) & 1
    prefix = np.concatenate([np.zeros((n.shape[0], 1), dtype=np.int64), np.cumsum(n, axis=1)[:, :-1]], axis=1) & 1
    parity_ok = flip_ok = True
    for j in range(M):
        if not np.array_equal(x[:, list(sets.P[j])].sum(axis=1) & 1, prefix[:, j]):
            parity_ok = False
        if not np.array_equal((n[:, j] + x[:, list(sets.F[j])].sum(axis=1)) & 1, x[:, j]):
            flip_ok = False
    return parity_ok, flip_ok


def verify_mapping(sets: MappingSets, M: int | None = None) -> VerificationReport:
    M = sets.n_modes if M is None else M
    if M != sets.n_modes:
        raise ValidationError(f"sets cover {sets.n_modes} modes, asked to verify {M}")
    _check_size(M, MAX_EXHAUSTIVE)
    images = {
        (j, d): dense_qubit(map_ladder(j, d, sets), M).matrix
        for j in range(M) for d in (False, True)
    }
    anti = anticommutator_residual(images, M)
    perm = encoding_permutation(SummationFamily(M, sets.S))
    equiv = 0.0
    for (j, d), mat in images.items():
        direct = _sparse_ladder(j, d, M).toarray()
        equiv = max(equiv, float(np.abs(perm.T @ mat @ perm - direct).max()))
    parity_ok, flip_ok = parity_and_flip_identities(sets)
    return VerificationReport(M, anti, equiv, parity_ok, flip_ok)


def spectrum(op: QubitOperator, M: int, tol: float = 1e-10) -> np.ndarray:
    mat = dense_qubit(op, M).matrix
    if np.abs(mat - mat.conj().T).max() > tol:
        raise ValidationError("operator is not Hermitian")
    return np.linalg.eigvalsh(mat)


def spectra_equal(a: QubitOperator, b: QubitOperator, M: int, tol: float = 1e-9) -> tuple[bool, float]:
    """Compare sorted eigenvalues; returns ``(equal, max_deviation)``."""
    ea, eb = spectrum(a, M), spectrum(b, M)
    dev = float(np.abs(ea - eb).max()) if ea.size else 0.0
    return dev <= tol, dev
