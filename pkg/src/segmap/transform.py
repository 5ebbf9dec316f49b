"""Lowering of fermionic ladder operators and Hamiltonians to Pauli sums.

With flip, parity and update sets ``F``, ``P``, ``U``::

    a_j  -> (Z_P(j) X_j + i Z_{P(j)-F(j)} Y_j) X_U(j) / 2
    a_j^ -> (Z_P(j) X_j - i Z_{P(j)-F(j)} Y_j) X_U(j) / 2

Qubit ``|0>`` is the unoccupied state, so ``(X + iY)/2 = |0><1|``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .fermion import FermionOperator
from .framework import MappingSets
from .pauli import PauliString, QubitOperator


@dataclass(frozen=True)
class LadderImage:
    mode: int
    dagger: bool
    operator: QubitOperator

    @property
    def weight(self) -> int:
        return max(p.weight for p in self.operator)


def map_ladder(j: int, dagger: bool, sets: MappingSets) -> QubitOperator:
    if not 0 <= j < sets.n_modes:
        raise ValidationError(f"mode {j} out of range for {sets.n_modes} modes")
    P, F, U = sets.P[j], set(sets.F[j]), sets.U[j]
    x_part = [(k, "X") for k in U]
    real = PauliString([(k, "Z") for k in P] + [(j, "X")] + x_part)
    imag = PauliString([(k, "Z") for k in P if k not in F] + [(j, "Y")] + x_part)
    sign = -1 if dagger else 1
    return QubitOperator({real: 0.5, imag: sign * 0.5j})


def ladder_image(j: int, dagger: bool, sets: MappingSets) -> LadderImage:
    return LadderImage(j, dagger, map_ladder(j, dagger, sets))


def map_hamiltonian(H: FermionOperator, sets: MappingSets) -> QubitOperator:
    """Substitute every ladder factor and expand; the result is collected and pruned."""
    if H.n_modes != sets.n_modes:
        raise ValidationError(
            f"operator has {H.n_modes} modes but the mapping covers {sets.n_modes}"
        )
    cache: dict[tuple[int, bool], QubitOperator] = {}

    def image(f):
        key = (f.mode, f.dagger)
        if key not in cache:
            cache[key] = map_ladder(f.mode, f.dagger, sets)
        return cache[key]

    acc: dict[PauliString, complex] = {}
    for term in H.terms:
        prod = QubitOperator.identity(term.coefficient)
        for f in term.factors:
            prod = prod * image(f)
        for p, c in prod.items():
            acc[p] = acc.get(p, 0j) + c
    ordered = sorted(acc.items(), key=lambda kv: kv[0].sort_key())
    return QubitOperator(ordered)


def mapping_pauli_weight(sets: MappingSets) -> int:
    """Largest number of qubits any single mapped ladder operator touches."""
    best = 0
    for j in range(sets.n_modes):
        for dagger in (False, True):
            best = max(best, ladder_image(j, dagger, sets).weight)
    return best
