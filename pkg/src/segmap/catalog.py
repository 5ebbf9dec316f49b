"""Named encodings expressed as summation families.

Covers Jordan-Wigner, parity, the Fenwick-tree (BK-tree) encoding and the
multilayer segmented parity (MSP) family with its variants and presets.
Descriptor strings such as ``"msp:2-3-2"`` or ``"2sp:w=4"`` are resolved by
:func:`family_from_descriptor`.
"""

from __future__ import annotations

import math
import re
from typing import Sequence

from .errors import ValidationError
from .framework import MappingSets, SummationFamily, derive_sets


def jw(n_modes: int) -> SummationFamily:
    _check_modes(n_modes)
    return SummationFamily(n_modes, ((),) * n_modes)


def parity(n_modes: int) -> SummationFamily:
    _check_modes(n_modes)
    return SummationFamily(n_modes, tuple(tuple(range(j)) for j in range(n_modes)))


def bk_tree(n_modes: int) -> SummationFamily:
    """Fenwick-tree encoding built by recursive bisection of ``[0, M-1]``.

    Matches the original Bravyi-Kitaev sets when ``M`` is a power of two.
    """
    _check_modes(n_modes)
    parent: list[int | None] = [None] * n_modes

    def fenwick(left, right, up):
        if left >= right:
            return
        pivot = (left + right) // 2
        parent[pivot] = up
        fenwick(left, pivot, pivot)
        fenwick(pivot + 1, right, up)

    fenwick(0, n_modes - 1, n_modes - 1)
    S = [[] for _ in range(n_modes)]
    for j in range(n_modes):
        p = parent[j]
        while p is not None:
            S[p].append(j)
            p = parent[p]
    return SummationFamily(n_modes, tuple(tuple(s) for s in S))


def _check_modes(n_modes):
    if not isinstance(n_modes, int) or n_modes < 1:
        raise ValidationError(f"number of modes must be a positive int, got {n_modes!r}")


def check_vector(n_modes: int, vector: Sequence[int]) -> tuple[int, ...]:
    """Validate an MSP parameter vector against ``n_modes``; return it as a tuple."""
    _check_modes(n_modes)
    vec = tuple(int(v) for v in vector)
    if not vec:
        raise ValidationError("MSP vector must have at least one entry")
    if any(v < 2 for v in vec):
        raise ValidationError(f"MSP vector entries must be >= 2, got {vec}")
    if math.prod(vec) < n_modes:
        raise ValidationError(
            f"MSP vector {vec} is too small: product {math.prod(vec)} < {n_modes} modes"
        )
    return vec


def _split(left: int, right: int, parts: int) -> list[tuple[int, int]]:
    """Near-equal division of ``[left, right]``; the front ``r`` pieces get one extra site."""
    size = right - left + 1
    u, r = divmod(size, parts)
    out = []
    for i in range(parts):
        width = u + 1 if i < r else u
        out.append((left, left + width - 1))
        left += width
    return out


def _segment_sets(n_modes: int, vec: tuple[int, ...]) -> list[list[int]]:
    S: list[list[int]] = [[] for _ in range(n_modes)]

    def segment(left, right, layer):
        if right <= left:
            return
        if not S[right]:
            S[right] = list(range(left, right))
        for lo, hi in _split(left, right, vec[layer]):
            segment(lo, hi, layer + 1)

    segment(0, n_modes - 1, 0)
    return S


def msp(n_modes: int, vector: Sequence[int]) -> SummationFamily:
    """Multilayer segmented parity encoding for any ``M`` with ``prod(V) >= M``."""
    vec = check_vector(n_modes, vector)
    return SummationFamily(n_modes, tuple(tuple(s) for s in _segment_sets(n_modes, vec)))


def _last_top_segment(n_modes: int, vec: tuple[int, ...]) -> tuple[int, int]:
    pieces = [p for p in _split(0, n_modes - 1, vec[0]) if p[1] >= p[0]]
    return pieces[-1]


def msp_v1(n_modes: int, vector: Sequence[int]) -> SummationFamily:
    """MSP with the last qubit holding the parity of the last top-layer segment only."""
    vec = check_vector(n_modes, vector)
    S = _segment_sets(n_modes, vec)
    lo, hi = _last_top_segment(n_modes, vec)
    S[-1] = list(range(lo, hi))
    return SummationFamily(n_modes, tuple(tuple(s) for s in S))


def msp_v2(n_modes: int, vector: Sequence[int]) -> SummationFamily:
    """MSP with the last qubit holding the last mode's own occupation."""
    vec = check_vector(n_modes, vector)
    S = _segment_sets(n_modes, vec)
    S[-1] = []
    return SummationFamily(n_modes, tuple(tuple(s) for s in S))


def two_sp_vector(n_modes: int, w: int) -> tuple[int, ...]:
    if w < 2:
        raise ValidationError(f"2SP segment count must be >= 2, got {w}")
    second = -(-n_modes // w)
    return (w, second) if second >= 2 else (w,)


def two_sp(n_modes: int, w: int) -> SummationFamily:
    """Two-layer segmented parity: MSP-V1 with ``V = (w, ceil(M/w))``."""
    return msp_v1(n_modes, two_sp_vector(n_modes, w))


def sbk_vector(n_modes: int, h: int | Sequence[int]) -> tuple[int, ...]:
    vec = [h] if isinstance(h, int) else list(h)
    if not vec or any(v < 2 for v in vec):
        raise ValidationError(f"SBK parameters must be >= 2, got {vec}")
    while math.prod(vec) < n_modes:
        vec.append(2)
    return tuple(vec)


def sbk(n_modes: int, h: int | Sequence[int]) -> SummationFamily:
    """Segmented BK: MSP-V1 with ``V = (h, 2, 2, ...)``, 2s appended until ``prod(V) >= M``."""
    return msp_v1(n_modes, sbk_vector(n_modes, h))


def jw_variant(n_modes: int) -> SummationFamily:
    """JW on the first ``M-1`` modes, total parity on the last qubit."""
    if n_modes < 2:
        raise ValidationError("jw-variant needs at least 2 modes")
    return msp(n_modes, (n_modes,))


def msp_weight_bound(vector: Sequence[int]) -> int:
    return sum(v - 1 for v in vector) + 1


# --- closed form for M = prod(V) ----------------------------------------------

def _coordinates(j: int, vec: tuple[int, ...]) -> tuple[int, ...]:
    digits = []
    for v in reversed(vec):
        j, d = divmod(j, v)
        digits.append(d)
    return tuple(reversed(digits))


def msp_closed_form(n_modes: int, vector: Sequence[int]) -> MappingSets:
    """All four MSP set families from mixed-radix site coordinates.

    Only valid when ``M`` equals the product of the vector; ``c[l]`` is the
    segment index of a site at layer ``l`` (layer 0 outermost).
    """
    vec = check_vector(n_modes, vector)
    if math.prod(vec) != n_modes:
        raise ValidationError(
            f"closed form needs M == prod(V); got M={n_modes}, prod={math.prod(vec)}; use msp()"
        )
    L = len(vec)
    C = [_coordinates(j, vec) for j in range(n_modes)]
    top = [v - 1 for v in vec]

    def is_top(c, start, stop=L):
        return all(c[l] == top[l] for l in range(start, stop))

    def in_S(k, j):  # k < j
        return any(C[k][:l0] == C[j][:l0] and is_top(C[j], l0) for l0 in range(L))

    def in_P(k, j):  # k < j
        return any(C[k][:l0] == C[j][:l0] and is_top(C[k], l0 + 1) for l0 in range(L))

    def in_F(k, j):  # k < j
        return any(
            C[k][:l0] == C[j][:l0] and C[j][l0] == top[l0]
            and is_top(C[k], l0 + 1) and is_top(C[j], l0 + 1)
            for l0 in range(L)
        )

    M = n_modes
    S = tuple(tuple(k for k in range(j) if in_S(k, j)) for j in range(M))
    U = tuple(tuple(k for k in range(j + 1, M) if in_S(j, k)) for j in range(M))
    P = tuple(tuple(k for k in range(j) if in_P(k, j)) for j in range(M))
    F = tuple(tuple(k for k in range(j) if in_F(k, j)) for j in range(M))
    return MappingSets(M, S, F, P, U)


# --- descriptors ----------------------------------------------------------------

_DESCRIPTOR_HELP = (
    "jw, parity, bk, bk-tree, jw-variant, msp:2-3-2, msp-v1:2-3-2, msp-v2:2-3-2, 2sp:w=4, sbk:h=4"
)


def _parse_vector(text: str) -> tuple[int, ...]:
    if not re.fullmatch(r"\d+(-\d+)*", text):
        raise ValidationError(f"bad MSP vector {text!r}; expected e.g. 2-3-2")
    return tuple(int(v) for v in text.split("-"))


def _parse_param(text: str, name: str) -> int:
    m = re.fullmatch(rf"(?:{name}=)?(\d+)", text)
    if m is None:
        raise ValidationError(f"bad parameter {text!r}; expected {name}=<int>")
    return int(m.group(1))


def family_from_descriptor(descriptor: str, n_modes: int) -> SummationFamily:
    """Resolve a CLI mapping descriptor for ``n_modes`` modes."""
    desc = descriptor.strip().lower()
    name, _, arg = desc.partition(":")
    if name == "jw" and not arg:
        return jw(n_modes)
    if name == "parity" and not arg:
        return parity(n_modes)
    if name in ("bk", "bk-tree") and not arg:
        return bk_tree(n_modes)
    if name == "jw-variant" and not arg:
        return jw_variant(n_modes)
    if name in ("msp", "msp-v1", "msp-v2") and arg:
        vec = _parse_vector(arg)
        return {"msp": msp, "msp-v1": msp_v1, "msp-v2": msp_v2}[name](n_modes, vec)
    if name == "2sp" and arg:
        return two_sp(n_modes, _parse_param(arg, "w"))
    if name == "sbk" and arg:
        return sbk(n_modes, _parse_param(arg, "h"))
    raise ValidationError(f"unknown mapping {descriptor!r}; known forms: {_DESCRIPTOR_HELP}")


def sets_from_descriptor(descriptor: str, n_modes: int) -> MappingSets:
    return derive_sets(family_from_descriptor(descriptor, n_modes))
