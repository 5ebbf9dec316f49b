"""First-order Trotter circuits for Pauli-sum Hamiltonians, gate counting and QASM output.

Each non-identity term ``h P`` becomes the usual parity-ladder circuit:
basis changes (``H`` for X, ``RX(pi/2)`` for Y), a CNOT chain up the
involved qubits in ascending order, ``RZ(2 h t)`` on the highest one, then
the mirror image. That costs ``2(w-1)`` CNOTs and ``1 + 2(n_x + n_y)``
single-qubit gates for a term of weight ``w``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ValidationError
from .pauli import QubitOperator

IMAG_TOL = 1e-10


class NonHermitianError(ValidationError):
    pass


@dataclass(frozen=True)
class Gate:
    kind: str  # "H", "RX", "RZ" or "CNOT"
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        arity = 2 if self.kind == "CNOT" else 1
        if self.kind not in ("H", "RX", "RZ", "CNOT"):
            raise ValidationError(f"unknown gate {self.kind!r}")
        if len(self.qubits) != arity:
            raise ValidationError(f"{self.kind} takes {arity} qubit(s)")
        if self.kind == "CNOT" and self.qubits[0] == self.qubits[1]:
            raise ValidationError("CNOT control and target must differ")
        if (self.angle is None) != (self.kind in ("H", "CNOT")):
            raise ValidationError(f"{self.kind} angle mismatch")


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple[Gate, ...]
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for g in self.gates:
            if any(q >= self.n_qubits or q < 0 for q in g.qubits):
                raise ValidationError(f"gate {g} outside {self.n_qubits} qubits")

    def __len__(self):
        return len(self.gates)


@dataclass(frozen=True)
class CountReport:
    n_x: int = 0
    n_y: int = 0
    n_z: int = 0
    cnot: int = 0
    single_qubit: int = 0

    @property
    def total_pauli(self) -> int:
        return self.n_x + self.n_y + self.n_z

    @property
    def total_gates(self) -> int:
        return self.cnot + self.single_qubit

    def to_dict(self) -> dict:
        d = asdict(self)
        d["total_pauli"] = self.total_pauli
        d["total_gates"] = self.total_gates
        return d


def _real_terms(op: QubitOperator):
    out = []
    for p, c in op.sorted_terms():
        if abs(c.imag) > IMAG_TOL:
            raise NonHermitianError(f"term {p} has complex coefficient {c}")
        if not p.is_identity():
            out.append((p, c.real))
    return out


def term_gates(p, coeff: float, t: float) -> list[Gate]:
    qubits = p.qubits
    pre, post = [], []
    for q, axis in p.factors:
        if axis == "X":
            pre.append(Gate("H", (q,)))
            post.append(Gate("H", (q,)))
        elif axis == "Y":
            pre.append(Gate("RX", (q,), math.pi / 2))
            post.append(Gate("RX", (q,), -math.pi / 2))
    ladder = [Gate("CNOT", (a, b)) for a, b in zip(qubits, qubits[1:])]
    rot = Gate("RZ", (qubits[-1],), 2.0 * coeff * t)
    return pre + ladder + [rot] + ladder[::-1] + post


def trotter_step(op: QubitOperator, t: float, n_qubits: int | None = None) -> Circuit:
    """One first-order step ``prod_l exp(-i h_l t P_l)`` in canonical term order.

    The identity term only contributes a global phase and emits nothing.
    """
    terms = _real_terms(op)
    width = max(op.n_qubits, n_qubits or 0)
    gates = []
    for p, c in terms:
        gates.extend(term_gates(p, c, t))
    return Circuit(width, tuple(gates), {"t": t, "steps": 1, "terms": [str(p) for p, _ in terms]})


def trotter_circuit(op: QubitOperator, t: float, steps: int = 1, n_qubits: int | None = None) -> Circuit:
    """``steps`` repetitions of :func:`trotter_step` at time ``t / steps``."""
    if steps < 1:
        raise ValidationError("steps must be >= 1")
    step = trotter_step(op, t / steps, n_qubits)
    meta = dict(step.metadata, t=t, steps=steps)
    return Circuit(step.n_qubits, step.gates * steps, meta)


def gate_counts(op: QubitOperator) -> CountReport:
    nx = ny = nz = cnot = sq = 0
    for p in op:
        if p.is_identity():
            continue
        axes = [a for _, a in p.factors]
        x, y, z = axes.count("X"), axes.count("Y"), axes.count("Z")
        nx, ny, nz = nx + x, ny + y, nz + z
        cnot += 2 * (len(axes) - 1)
        sq += 1 + 2 * (x + y)
    return CountReport(nx, ny, nz, cnot, sq)


def census(circuit: Circuit) -> tuple[int, int]:
    """``(cnot, single_qubit)`` counted directly from the gate list."""
    cnot = sum(1 for g in circuit.gates if g.kind == "CNOT")
    return cnot, len(circuit.gates) - cnot


def compare(H, descriptors) -> list[tuple[str, CountReport]]:
    """Gate/Pauli counts of ``H`` under each mapping descriptor."""
    from .catalog import sets_from_descriptor
    from .transform import map_hamiltonian

    rows = []
    for d in descriptors:
        sets = sets_from_descriptor(d, H.n_modes)
        rows.append((d, gate_counts(map_hamiltonian(H, sets))))
    return rows


def format_table(rows) -> str:
    head = ("Mapping", "X", "Y", "Z", "Total Pauli", "CNOT", "SQ", "Total gate")
    body = [
        (name, r.n_x, r.n_y, r.n_z, r.total_pauli, r.cnot, r.single_qubit, r.total_gates)
        for name, r in rows
    ]
    widths = [max(len(str(row[i])) for row in [head, *body]) for i in range(len(head))]
    lines = []
    for row in [head, *body]:
        cells = [str(row[0]).ljust(widths[0])] + [str(v).rjust(w) for v, w in zip(row[1:], widths[1:])]
        lines.append("  ".join(cells))
    return "\n".join(lines) + "\n"


# --- QASM ---------------------------------------------------------------------

def emit_qasm(circuit: Circuit) -> str:
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{circuit.n_qubits}];"]
    for g in circuit.gates:
        if g.kind == "CNOT":
            lines.append(f"cx q[{g.qubits[0]}],q[{g.qubits[1]}];")
        elif g.kind == "H":
            lines.append(f"h q[{g.qubits[0]}];")
        else:
            lines.append(f"{g.kind.lower()}({g.angle!r}) q[{g.qubits[0]}];")
    return "\n".join(lines) + "\n"


# --- dense simulation (little-endian: qubit 0 is the least significant bit) --------

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


def _rx(theta):
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def _rz(theta):
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    M = circuit.n_qubits
    dim = 1 << M
    # Columns of the identity are evolved together; axis M-1-q is qubit q.
    state = np.eye(dim, dtype=complex).reshape((2,) * M + (dim,))
    for g in circuit.gates:
        if g.kind == "CNOT":
            c, t = (M - 1 - q for q in g.qubits)
            idx = [slice(None)] * (M + 1)
            idx[c] = 1
            sub = state[tuple(idx)]
            t_axis = t if t < c else t - 1
            state[tuple(idx)] = np.flip(sub, axis=t_axis).copy()
            continue
        u = _H if g.kind == "H" else _rx(g.angle) if g.kind == "RX" else _rz(g.angle)
        ax = M - 1 - g.qubits[0]
        state = np.moveaxis(np.tensordot(u, state, axes=([1], [ax])), 0, ax)
    return state.reshape(dim, dim)
