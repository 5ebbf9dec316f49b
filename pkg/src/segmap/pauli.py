"""Pauli strings and weighted sums of them.

A :class:`PauliString` is an immutable, hashable product of single-qubit
Paulis keyed by qubit index; a :class:`QubitOperator` maps strings to
complex coefficients and is kept in collected form (no duplicate strings,
no coefficient below :data:`COLLECT_TOL`).
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping

from .errors import ParseError, ValidationError

COLLECT_TOL = 1e-12

AXES = ("X", "Y", "Z")

# (a, b) -> (phase, product) for single-qubit Paulis; None is identity.
_SINGLE = {
    ("X", "X"): (1, None),
    ("Y", "Y"): (1, None),
    ("Z", "Z"): (1, None),
    ("X", "Y"): (1j, "Z"),
    ("Y", "X"): (-1j, "Z"),
    ("Y", "Z"): (1j, "X"),
    ("Z", "Y"): (-1j, "X"),
    ("Z", "X"): (1j, "Y"),
    ("X", "Z"): (-1j, "Y"),
}


class PauliString:
    """Tensor product of X/Y/Z factors on distinct qubits; identity elsewhere."""

    __slots__ = ("_factors", "_hash")

    def __init__(self, factors: Iterable[tuple[int, str]] | Mapping[int, str] = ()):
        if isinstance(factors, Mapping):
            items = list(factors.items())
        else:
            items = list(factors)
        seen = set()
        for q, axis in items:
            if axis not in AXES:
                raise ValidationError(f"unknown Pauli axis {axis!r}")
            if not isinstance(q, int) or q < 0:
                raise ValidationError(f"qubit index must be a non-negative int, got {q!r}")
            if q in seen:
                raise ValidationError(f"qubit {q} appears twice")
            seen.add(q)
        self._factors = tuple(sorted(items))
        self._hash = hash(self._factors)

    @classmethod
    def from_str(cls, text: str) -> "PauliString":
        """Parse ``"X0 Y1 Z3"``; ``"I"`` or an empty string is the identity."""
        tokens = text.split()
        if tokens == ["I"] or not tokens:
            return cls()
        factors = []
        for tok in tokens:
            m = re.fullmatch(r"([XYZ])(\d+)", tok)
            if m is None:
                raise ValidationError(f"bad Pauli factor {tok!r}")
            factors.append((int(m.group(2)), m.group(1)))
        return cls(factors)

    @property
    def factors(self) -> tuple[tuple[int, str], ...]:
        return self._factors

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self._factors)

    def axis(self, qubit: int) -> str | None:
        for q, a in self._factors:
            if q == qubit:
                return a
        return None

    def as_dict(self) -> dict[int, str]:
        return dict(self._factors)

    @property
    def weight(self) -> int:
        return len(self._factors)

    def is_identity(self) -> bool:
        return not self._factors

    def sort_key(self):
        return (len(self._factors), self._factors)

    def commutes_with(self, other: "PauliString") -> bool:
        mine = self.as_dict()
        clashes = sum(1 for q, a in other._factors if q in mine and mine[q] != a)
        return clashes % 2 == 0

    def __mul__(self, other):
        if isinstance(other, PauliString):
            return multiply(self, other)
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, PauliString) and self._factors == other._factors

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        if not self._factors:
            return "I"
        return " ".join(f"{a}{q}" for q, a in self._factors)

    def __repr__(self):
        return f"PauliString({str(self)!r})"


IDENTITY = PauliString()


def multiply(a: PauliString, b: PauliString) -> tuple[complex, PauliString]:
    """Return ``(phase, product)`` with ``phase * product == a @ b``."""
    phase = 1 + 0j
    out = a.as_dict()
    for q, bx in b.factors:
        ax = out.get(q)
        if ax is None:
            out[q] = bx
            continue
        p, prod = _SINGLE[(ax, bx)]
        phase *= p
        if prod is None:
            del out[q]
        else:
            out[q] = prod
    return phase, PauliString(out.items())


def weight(p: PauliString) -> int:
    return p.weight


def _coerce_string(key) -> PauliString:
    if isinstance(key, PauliString):
        return key
    if isinstance(key, str):
        return PauliString.from_str(key)
    return PauliString(key)


class QubitOperator:
    """Collected linear combination of Pauli strings.

    Construct from a mapping or iterable of ``(string, coefficient)`` pairs;
    strings may be given as :class:`PauliString` or text like ``"X0 Z2"``.
    Instances are treated as immutable; arithmetic returns new operators.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        acc: dict[PauliString, complex] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for key, coeff in items:
                p = _coerce_string(key)
                acc[p] = acc.get(p, 0j) + complex(coeff)
        self._terms = {p: c for p, c in acc.items() if abs(c) >= COLLECT_TOL}

    @classmethod
    def _from_collected(cls, acc: dict) -> "QubitOperator":
        op = cls.__new__(cls)
        op._terms = {p: c for p, c in acc.items() if abs(c) >= COLLECT_TOL}
        return op

    @classmethod
    def identity(cls, coeff: complex = 1.0) -> "QubitOperator":
        return cls({IDENTITY: coeff})

    @property
    def terms(self) -> Mapping[PauliString, complex]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[PauliString]:
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __contains__(self, key):
        return _coerce_string(key) in self._terms

    def __getitem__(self, key) -> complex:
        return self._terms.get(_coerce_string(key), 0j)

    def sorted_terms(self) -> list[tuple[PauliString, complex]]:
        """Terms in canonical report order: by weight, then factor list."""
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    @property
    def n_qubits(self) -> int:
        """One past the highest qubit index touched (0 for a scalar)."""
        top = -1
        for p in self._terms:
            if p.factors:
                top = max(top, p.factors[-1][0])
        return top + 1

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return all(abs(c.imag) <= tol for c in self._terms.values())

    def __add__(self, other):
        if not isinstance(other, QubitOperator):
            if isinstance(other, (int, float, complex)):
                other = QubitOperator.identity(other)
            else:
                return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor: complex) -> "QubitOperator":
        return QubitOperator._from_collected({p: c * factor for p, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, QubitOperator):
            return operator_multiply(self, other)
        if isinstance(other, (int, float, complex)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, QubitOperator) and self._terms == other._terms

    def isclose(self, other: "QubitOperator", atol: float = 1e-12) -> bool:
        keys = set(self._terms) | set(other._terms)
        return all(abs(self[k] - other[k]) <= atol for k in keys)

    def dagger(self) -> "QubitOperator":
        return QubitOperator._from_collected({p: c.conjugate() for p, c in self._terms.items()})

    def __repr__(self):
        return f"QubitOperator({len(self._terms)} terms)"

    def __str__(self):
        return to_text(self)


def add(a: QubitOperator, b: QubitOperator) -> QubitOperator:
    acc = dict(a._terms)
    for p, c in b._terms.items():
        acc[p] = acc.get(p, 0j) + c
    return QubitOperator._from_collected(acc)


def scalar_multiply(a: QubitOperator, factor: complex) -> QubitOperator:
    return a.scale(factor)


def operator_multiply(a: QubitOperator, b: QubitOperator) -> QubitOperator:
    acc: dict[PauliString, complex] = {}
    for pa, ca in a._terms.items():
        for pb, cb in b._terms.items():
            phase, prod = multiply(pa, pb)
            acc[prod] = acc.get(prod, 0j) + phase * ca * cb
    return QubitOperator._from_collected(acc)


# --- text form -------------------------------------------------------------

def format_coefficient(c: complex, digits: int | None = None) -> str:
    """``re`` or ``re,im``; ``digits=None`` keeps full repr precision."""
    def fmt(x):
        x = float(x)
        if digits is None:
            return repr(x)
        s = f"{x:.{digits}f}"
        return "0." + "0" * digits if s == "-0." + "0" * digits else s

    if c.imag == 0:
        return fmt(c.real)
    return f"{fmt(c.real)},{fmt(c.imag)}"


def to_text(op: QubitOperator, digits: int | None = None) -> str:
    lines = [f"{format_coefficient(c, digits)} {p}" for p, c in op.sorted_terms()]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_coefficient(tok: str) -> complex:
    parts = tok.split(",")
    if len(parts) > 2:
        raise ValueError(tok)
    re_ = float(parts[0])
    im = float(parts[1]) if len(parts) == 2 else 0.0
    return complex(re_, im)


def parse_qubit_operator(text: str) -> QubitOperator:
    """Parse the one-term-per-line text form written by :func:`to_text`."""
    terms = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split(None, 1)
        try:
            coeff = parse_coefficient(head)
        except ValueError:
            raise ParseError(f"bad coefficient {head!r}", lineno) from None
        try:
            p = PauliString.from_str(rest[0] if rest else "I")
        except ValidationError as exc:
            raise ParseError(str(exc), lineno) from None
        terms.append((p, coeff))
    return QubitOperator(terms)
