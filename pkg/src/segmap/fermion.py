"""Second-quantized fermionic operators and their text format.

File format::

    # comment
    modes 4
    -1.24728 0^ 0
    -0.18177 1^ 0^ 3 2

``k^`` is a creation operator on mode ``k``, a bare ``k`` an annihilation
operator. Factors are kept in the order written; nothing is normal-ordered.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import ParseError, ValidationError
from .pauli import format_coefficient, parse_coefficient


@dataclass(frozen=True)
class LadderFactor:
    mode: int
    dagger: bool

    def __str__(self):
        return f"{self.mode}^" if self.dagger else str(self.mode)


@dataclass(frozen=True)
class FermionTerm:
    coefficient: complex
    factors: tuple[LadderFactor, ...]

    def __str__(self):
        body = " ".join(str(f) for f in self.factors)
        return f"{format_coefficient(self.coefficient)} {body}".rstrip()


@dataclass(frozen=True)
class FermionOperator:
    n_modes: int
    terms: tuple[FermionTerm, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not isinstance(self.n_modes, int) or self.n_modes < 1:
            raise ValidationError(f"n_modes must be a positive int, got {self.n_modes!r}")
        terms = tuple(_as_term(t) for t in self.terms)
        for t in terms:
            for f in t.factors:
                if not 0 <= f.mode < self.n_modes:
                    raise ValidationError(f"mode {f.mode} out of range for {self.n_modes} modes")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_terms(cls, n_modes: int, terms) -> "FermionOperator":
        """Build from ``(coefficient, [(mode, dagger), ...])`` pairs."""
        return cls(n_modes, tuple(terms))

    def __len__(self):
        return len(self.terms)

    def dagger(self) -> "FermionOperator":
        out = []
        for t in self.terms:
            facs = tuple(LadderFactor(f.mode, not f.dagger) for f in reversed(t.factors))
            out.append(FermionTerm(complex(t.coefficient).conjugate(), facs))
        return FermionOperator(self.n_modes, tuple(out))

    def __add__(self, other):
        if not isinstance(other, FermionOperator):
            return NotImplemented
        if other.n_modes != self.n_modes:
            raise ValidationError("mode counts differ")
        return FermionOperator(self.n_modes, self.terms + other.terms)


def _as_term(t) -> FermionTerm:
    if isinstance(t, FermionTerm):
        return FermionTerm(complex(t.coefficient), tuple(t.factors))
    coeff, factors = t
    facs = []
    for f in factors:
        if isinstance(f, LadderFactor):
            facs.append(f)
        else:
            mode, dagger = f
            facs.append(LadderFactor(int(mode), bool(dagger)))
    return FermionTerm(complex(coeff), tuple(facs))


def parse_fermion_file(text: str) -> FermionOperator:
    n_modes = None
    terms = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if n_modes is None:
            if len(tokens) != 2 or tokens[0] != "modes":
                raise ParseError("expected header 'modes <M>'", lineno)
            try:
                n_modes = int(tokens[1])
            except ValueError:
                raise ParseError(f"bad mode count {tokens[1]!r}", lineno) from None
            if n_modes < 1:
                raise ParseError("mode count must be positive", lineno)
            continue
        try:
            coeff = parse_coefficient(tokens[0])
        except ValueError:
            raise ParseError(f"bad coefficient {tokens[0]!r}", lineno) from None
        factors = []
        for tok in tokens[1:]:
            dagger = tok.endswith("^")
            digits = tok[:-1] if dagger else tok
            if not digits.isdigit():
                raise ParseError(f"bad ladder factor {tok!r}", lineno)
            mode = int(digits)
            if mode >= n_modes:
                raise ValidationError(f"line {lineno}: mode {mode} >= n_modes {n_modes}")
            factors.append(LadderFactor(mode, dagger))
        terms.append(FermionTerm(coeff, tuple(factors)))
    if n_modes is None:
        raise ParseError("missing 'modes <M>' header")
    return FermionOperator(n_modes, tuple(terms))


def serialize_fermion(op: FermionOperator) -> str:
    lines = [f"modes {op.n_modes}"]
    lines.extend(str(t) for t in op.terms)
    return "\n".join(lines) + "\n"


def permute_modes(op: FermionOperator, perm: Sequence[int]) -> FermionOperator:
    """Relabel mode ``j`` as ``perm[j]``; factor order and signs are kept."""
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(op.n_modes)):
        raise ValidationError(f"not a permutation of range({op.n_modes}): {perm}")
    terms = tuple(
        FermionTerm(t.coefficient, tuple(LadderFactor(perm[f.mode], f.dagger) for f in t.factors))
        for t in op.terms
    )
    return FermionOperator(op.n_modes, terms)


def invert_permutation(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return inv


def hermiticity_check(op: FermionOperator, tol: float = 1e-10) -> bool:
    from .oracle import dense_fermion
    import numpy as np

    mat = dense_fermion(op)
    return bool(np.allclose(mat, mat.conj().T, atol=tol, rtol=0))
