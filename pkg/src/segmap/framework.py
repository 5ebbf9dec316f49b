"""Summation-set description of fermion-to-qubit encodings.

An encoding of ``M`` modes is fixed by summation sets ``S(j) ⊆ {0..j-1}``:
qubit ``j`` stores ``n_j`` XOR the occupations of the modes in ``S(j)``.
From ``S`` we derive the flip set ``F(j)``, parity set ``P(j)`` and update
set ``U(j)`` that drive the ladder-operator images, the lower-triangular
GF(2) encoding matrix, and the mapping tree (children = ``F``,
descendants = ``S``, ancestors = ``U``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ValidationError


def _sets(raw, n_modes) -> tuple[tuple[int, ...], ...]:
    out = tuple(tuple(sorted(set(int(k) for k in s))) for s in raw)
    if len(out) != n_modes:
        raise ValidationError(f"expected {n_modes} sets, got {len(out)}")
    return out


@dataclass(frozen=True)
class SummationFamily:
    n_modes: int
    S: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n_modes < 1:
            raise ValidationError("n_modes must be >= 1")
        S = _sets(self.S, self.n_modes)
        for j, s in enumerate(S):
            if any(k < 0 or k >= j for k in s):
                raise ValidationError(f"S({j}) = {set(s)} must only hold indices below {j}")
        object.__setattr__(self, "S", S)

    @classmethod
    def from_sets(cls, sets: Sequence) -> "SummationFamily":
        return cls(len(sets), tuple(sets))


@dataclass(frozen=True)
class MappingSets:
    n_modes: int
    S: tuple[tuple[int, ...], ...]
    F: tuple[tuple[int, ...], ...]
    P: tuple[tuple[int, ...], ...]
    U: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for name in "SFPU":
            object.__setattr__(self, name, _sets(getattr(self, name), self.n_modes))

    @property
    def family(self) -> SummationFamily:
        return SummationFamily(self.n_modes, self.S)

    def check(self) -> list[str]:
        """Structural invariant violations, empty when the sets are consistent."""
        problems = []
        for j in range(self.n_modes):
            F, P, U = set(self.F[j]), set(self.P[j]), set(self.U[j])
            if not F <= P:
                problems.append(f"F({j}) not a subset of P({j})")
            if (F | P) & U:
                problems.append(f"F({j}) or P({j}) overlaps U({j})")
            if any(k >= j for k in P) or any(k <= j for k in U):
                problems.append(f"index ordering broken at mode {j}")
        return problems

    def describe(self) -> str:
        def fmt(s):
            return "{" + ",".join(map(str, s)) + "}"

        return "\n".join(
            f"{j}: S={fmt(self.S[j])} F={fmt(self.F[j])} P={fmt(self.P[j])} U={fmt(self.U[j])}"
            for j in range(self.n_modes)
        ) + "\n"

    def to_dict(self) -> dict:
        return {
            "n_modes": self.n_modes,
            "sets": [
                {"mode": j, "S": list(self.S[j]), "F": list(self.F[j]),
                 "P": list(self.P[j]), "U": list(self.U[j])}
                for j in range(self.n_modes)
            ],
        }


def check_constraints(fam: SummationFamily) -> list[tuple[str, int, int, int]]:
    """List every ``(constraint, i, j, k)`` triple with ``i<j<k`` that breaks i or ii.

    Constraint i: ``i∈S(j)`` and ``j∈S(k)`` imply ``i∈S(k)``.
    Constraint ii: ``i∈S(j)`` and ``j∉S(k)`` imply ``i∉S(k)``.
    """
    S = [set(s) for s in fam.S]
    out = []
    M = fam.n_modes
    for j in range(M):
        for i in S[j]:
            for k in range(j + 1, M):
                if j in S[k] and i not in S[k]:
                    out.append(("i", i, j, k))
                elif j not in S[k] and i in S[k]:
                    out.append(("ii", i, j, k))
    return out


def _require_valid(fam: SummationFamily):
    bad = check_constraints(fam)
    if bad:
        c, i, j, k = bad[0]
        raise ValidationError(
            f"summation sets violate constraint {c} at (i,j,k)=({i},{j},{k})"
            f" ({len(bad)} violation(s) total)"
        )


def derive_sets(fam: SummationFamily, method: str = "fast") -> MappingSets:
    """Derive ``F``, ``P``, ``U`` from the summation sets.

    ``method="fast"`` runs the O(M^2) sweep keyed on ``min U(k)``;
    ``method="definition"`` evaluates the set-builder definitions directly
    and exists as a cross-check.
    """
    _require_valid(fam)
    if method == "fast":
        return _derive_fast(fam)
    if method == "definition":
        return _derive_literal(fam)
    raise ValueError(f"unknown method {method!r}")


def _derive_fast(fam: SummationFamily) -> MappingSets:
    M = fam.n_modes
    member = [set(s) for s in fam.S]
    U = [[k for k in range(j + 1, M) if j in member[k]] for j in range(M)]
    P = [[k for k in range(j) if not U[k] or U[k][0] >= j] for j in range(M)]
    F = [[k for k in P[j] if U[k] and U[k][0] == j] for j in range(M)]
    return MappingSets(M, fam.S, tuple(F), tuple(P), tuple(U))


def _derive_literal(fam: SummationFamily) -> MappingSets:
    M = fam.n_modes
    S = [set(s) for s in fam.S]
    covered = set()  # union of S(i) for i < j
    F, P = [], []
    for j in range(M):
        P.append([k for k in range(j) if k not in covered])
        F.append([k for k in sorted(S[j]) if k not in covered])
        covered |= S[j]
    U = [[k for k in range(M) if j in S[k]] for j in range(M)]
    return MappingSets(M, fam.S, tuple(F), tuple(P), tuple(U))


# --- GF(2) matrix -----------------------------------------------------------

def family_to_matrix(fam: SummationFamily) -> np.ndarray:
    A = np.eye(fam.n_modes, dtype=np.uint8)
    for j, s in enumerate(fam.S):
        A[j, list(s)] = 1
    return A


def matrix_to_family(A) -> SummationFamily:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValidationError("matrix must be square")
    if not np.isin(A, (0, 1)).all():
        raise ValidationError("matrix entries must be 0 or 1")
    if not (np.diag(A) == 1).all():
        raise ValidationError("matrix diagonal must be all ones")
    if np.triu(A, 1).any():
        raise ValidationError("matrix must be lower triangular")
    M = A.shape[0]
    return SummationFamily(M, tuple(tuple(int(k) for k in np.flatnonzero(A[j, :j])) for j in range(M)))


def encode_state(fam: SummationFamily, n: Sequence[int]) -> tuple[int, ...]:
    """Occupation bits ``n`` to stored qubit bits ``x = A n (mod 2)``."""
    if len(n) != fam.n_modes:
        raise ValidationError(f"state has length {len(n)}, expected {fam.n_modes}")
    return tuple((int(n[j]) + sum(int(n[k]) for k in s)) & 1 for j, s in enumerate(fam.S))


def decode_state(fam: SummationFamily, x: Sequence[int]) -> tuple[int, ...]:
    """Inverse of :func:`encode_state` by forward substitution."""
    if len(x) != fam.n_modes:
        raise ValidationError(f"state has length {len(x)}, expected {fam.n_modes}")
    n = []
    for j, s in enumerate(fam.S):
        n.append((int(x[j]) + sum(n[k] for k in s)) & 1)
    return tuple(n)


# --- mapping tree -------------------------------------------------------------

@dataclass(frozen=True)
class MappingTree:
    n_modes: int
    parent: tuple[int | None, ...]
    children: tuple[tuple[int, ...], ...]

    @property
    def roots(self) -> tuple[int, ...]:
        return tuple(j for j, p in enumerate(self.parent) if p is None)

    def descendants(self, j: int) -> tuple[int, ...]:
        out, stack = [], list(self.children[j])
        while stack:
            k = stack.pop()
            out.append(k)
            stack.extend(self.children[k])
        return tuple(sorted(out))

    def ancestors(self, j: int) -> tuple[int, ...]:
        out = []
        p = self.parent[j]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return tuple(out)

    def edges(self) -> list[tuple[int, int]]:
        return sorted((p, c) for c, p in enumerate(self.parent) if p is not None)

    def to_ascii(self) -> str:
        lines = []

        def walk(j, depth):
            lines.append("  " * depth + str(j))
            for c in sorted(self.children[j]):
                walk(c, depth + 1)

        for r in sorted(self.roots, reverse=True):
            walk(r, 0)
        return "\n".join(lines) + "\n"

    def to_dot(self) -> str:
        lines = ["digraph mapping_tree {"]
        lines.extend(f"  {j};" for j in range(self.n_modes))
        lines.extend(f"  {p} -> {c};" for p, c in self.edges())
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_tree(sets: MappingSets) -> MappingTree:
    M = sets.n_modes
    parent = tuple(sets.U[j][0] if sets.U[j] else None for j in range(M))
    children = tuple(tuple(sets.F[j]) for j in range(M))
    for j in range(M):
        from_parent = tuple(k for k in range(M) if parent[k] == j)
        if from_parent != children[j]:
            raise ValidationError(f"F({j}) does not match the parent relation; sets are inconsistent")
    return MappingTree(M, parent, children)


def tree_to_family(tree: MappingTree) -> SummationFamily:
    return SummationFamily(tree.n_modes, tuple(tree.descendants(j) for j in range(tree.n_modes)))


def random_family(n_modes: int, rng: random.Random | None = None, root_prob: float = 0.3) -> SummationFamily:
    """Random constraint-satisfying family: a random forest with parents above children.

    Every node below the top picks either no parent (with ``root_prob``) or a
    uniformly random parent of higher index; ``S(j)`` is then ``j``'s subtree.
    """
    rng = rng or random.Random()
    parent = []
    for j in range(n_modes):
        if j == n_modes - 1 or rng.random() < root_prob:
            parent.append(None)
        else:
            parent.append(rng.randrange(j + 1, n_modes))
    children = [[] for _ in range(n_modes)]
    for c, p in enumerate(parent):
        if p is not None:
            children[p].append(c)
    tree = MappingTree(n_modes, tuple(parent), tuple(tuple(c) for c in children))
    return tree_to_family(tree)
