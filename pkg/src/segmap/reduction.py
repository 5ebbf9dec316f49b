"""Qubit tapering on parity qubits fixed by a conserved particle number.

A qubit that stores the parity of a conserved block of modes only ever sees
``I`` or ``Z`` in a number-conserving Hamiltonian. Its ``Z`` can then be
replaced by the eigenvalue ``(-1)**parity`` and the qubit dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import SymmetryViolation, ValidationError
from .framework import MappingSets
from .pauli import PauliString, QubitOperator


@dataclass(frozen=True)
class SymmetryAssignment:
    values: tuple[tuple[int, int], ...]
    note: str = "user"

    def __post_init__(self):
        vals = tuple((int(q), int(e)) for q, e in self.values)
        qubits = [q for q, _ in vals]
        if len(set(qubits)) != len(qubits):
            raise ValidationError(f"qubit listed twice in assignment: {qubits}")
        for q, e in vals:
            if e not in (1, -1):
                raise ValidationError(f"eigenvalue for qubit {q} must be +1 or -1, got {e}")
        object.__setattr__(self, "values", tuple(sorted(vals)))

    @classmethod
    def parse(cls, text: str, note: str = "user") -> "SymmetryAssignment":
        """Parse ``"1:-1,3:+1"`` (an optional leading ``q=`` is accepted)."""
        text = text.strip()
        if text.startswith("q="):
            text = text[2:]
        vals = []
        for part in filter(None, (p.strip() for p in text.split(","))):
            try:
                q, e = part.split(":")
                vals.append((int(q), int(e)))
            except ValueError:
                raise ValidationError(f"bad taper entry {part!r}; expected <qubit>:<+1|-1>") from None
        return cls(tuple(vals), note)

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.values)

    def as_dict(self) -> dict[int, int]:
        return dict(self.values)


def find_total_parity_qubit(sets: MappingSets) -> int | None:
    """Qubit storing the parity of all modes (and updated by no other qubit), if any."""
    return find_block_parity_qubit(sets, range(sets.n_modes), require_root=True)


def find_block_parity_qubit(sets: MappingSets, modes: Iterable[int], require_root: bool = False) -> int | None:
    """Qubit ``k`` with ``S(k) ∪ {k}`` equal to ``modes``, or None."""
    target = set(modes)
    for k in range(sets.n_modes):
        if set(sets.S[k]) | {k} == target and (not require_root or not sets.U[k]):
            return k
    return None


def spin_block_assignment(sets: MappingSets, electrons_up: int, electrons_down: int) -> SymmetryAssignment:
    """Eigenvalues for the qubits storing spin-up, spin-down or total parity.

    Assumes modes are spin-blocked: ``0..M/2-1`` spin-up, ``M/2..M-1`` spin-down.
    """
    M = sets.n_modes
    if M % 2:
        raise ValidationError("spin-blocked layout needs an even number of modes")
    half = M // 2
    blocks = [
        (range(half), electrons_up),
        (range(half, M), electrons_down),
        (range(M), electrons_up + electrons_down),
    ]
    vals = {}
    for modes, count in blocks:
        k = find_block_parity_qubit(sets, modes)
        if k is not None and k not in vals:
            vals[k] = -1 if count % 2 else 1
    return SymmetryAssignment(tuple(vals.items()), note="segment parity")


def taper(op: QubitOperator, assign: SymmetryAssignment, compact: bool = False) -> QubitOperator:
    """Replace ``Z`` on each assigned qubit by its eigenvalue and drop the qubit.

    Remaining qubits keep their labels unless ``compact`` is set, in which
    case they are renumbered ``0, 1, ...`` in ascending order.
    """
    fixed = assign.as_dict()
    acc: dict[PauliString, complex] = {}
    for p, c in op.items():
        kept = []
        for q, axis in p.factors:
            if q not in fixed:
                kept.append((q, axis))
            elif axis == "Z":
                c = c * fixed[q]
            else:
                raise SymmetryViolation(f"term {p} acts with {axis} on tapered qubit {q}")
        s = PauliString(kept)
        acc[s] = acc.get(s, 0j) + c
    out = QubitOperator(acc)
    return compact_qubits(out, assign.qubits) if compact else out


def compact_qubits(op: QubitOperator, removed: Sequence[int]) -> QubitOperator:
    """Relabel qubits so the survivors of ``removed`` are contiguous from 0."""
    gone = sorted(set(removed))

    def shift(q):
        return q - sum(1 for r in gone if r < q)

    return QubitOperator({PauliString([(shift(q), a) for q, a in p.factors]): c for p, c in op.items()})


def spin_block_permutation(n_modes: int) -> list[int]:
    """Interleaved (up, down, up, ...) to blocked (all up, then all down) relabeling.

    Entry ``j`` is the new label of mode ``j``.
    """
    if n_modes % 2:
        raise ValidationError(f"spin-block permutation needs an even mode count, got {n_modes}")
    half = n_modes // 2
    return [j // 2 if j % 2 == 0 else half + j // 2 for j in range(n_modes)]
