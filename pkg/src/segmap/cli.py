"""Command-line entry point: ``segmap <subcommand> ...``.

Exit codes: 0 success, 2 parse/validation error, 3 symmetry violation,
4 unsupported size. Relative ``--output`` paths are resolved against
``$SEGMAP_OUTPUT_DIR`` when it is set.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

from . import __version__
from .catalog import family_from_descriptor
from .circuit import compare, emit_qasm, format_table, gate_counts, trotter_circuit
from .errors import SegmapError, ValidationError
from .fermion import FermionOperator, parse_fermion_file, permute_modes
from .framework import build_tree, derive_sets, random_family
from .oracle import verify_mapping
from .pauli import QubitOperator, parse_qubit_operator, to_text
from .reduction import SymmetryAssignment, spin_block_assignment, spin_block_permutation, taper
from .transform import map_hamiltonian

OUTPUT_DIR_ENV = "SEGMAP_OUTPUT_DIR"


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None


def _output_path(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _emit(args, text: str):
    if getattr(args, "output", None):
        p = _output_path(args.output)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _operator_json(op: QubitOperator) -> dict:
    return {
        "n_qubits": op.n_qubits,
        "terms": [{"pauli": str(p), "re": c.real, "im": c.imag} for p, c in op.sorted_terms()],
    }


def _load_fermion(args) -> FermionOperator:
    H = parse_fermion_file(_read(args.input))
    if getattr(args, "spin_block", False):
        H = permute_modes(H, spin_block_permutation(H.n_modes))
    return H


def _sets(descriptor: str, n_modes: int, seed=None):
    if descriptor == "random":
        return derive_sets(random_family(n_modes, random.Random(seed)))
    return derive_sets(family_from_descriptor(descriptor, n_modes))


def _mapped(args) -> QubitOperator:
    if getattr(args, "operator", None):
        return parse_qubit_operator(_read(args.operator))
    if not args.input or not args.mapping:
        raise ValidationError("need --input and --mapping (or --operator)")
    H = _load_fermion(args)
    return map_hamiltonian(H, _sets(args.mapping, H.n_modes))


# --- subcommands ---------------------------------------------------------------

def cmd_map(args):
    op = _mapped(args)
    _emit(args, _dump(_operator_json(op)) if args.json else to_text(op, args.digits))


def cmd_sets(args):
    sets = _sets(args.mapping, args.modes, args.seed)
    _emit(args, _dump(sets.to_dict()) if args.json else sets.describe())


def cmd_tree(args):
    tree = build_tree(_sets(args.mapping, args.modes, args.seed))
    if args.json:
        text = _dump({"n_modes": tree.n_modes, "roots": list(tree.roots),
                      "edges": [list(e) for e in tree.edges()]})
    elif args.dot:
        text = tree.to_dot()
    else:
        text = tree.to_ascii()
    _emit(args, text)


def cmd_count(args):
    report = gate_counts(_mapped(args))
    name = args.mapping or args.operator
    _emit(args, _dump({name: report.to_dict()}) if args.json else format_table([(name, report)]))


def cmd_compare(args):
    H = _load_fermion(args)
    names = [m.strip() for m in args.mappings.split(",") if m.strip()]
    rows = compare(H, names)
    if args.json:
        text = _dump([{"mapping": n, **r.to_dict()} for n, r in rows])
    else:
        text = format_table(rows)
    _emit(args, text)


def cmd_circuit(args):
    circ = trotter_circuit(_mapped(args), args.t, args.steps)
    if args.qasm:
        p = _output_path(args.qasm)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(emit_qasm(circ), encoding="utf-8")
    if args.json:
        text = _dump({
            "n_qubits": circ.n_qubits,
            "t": args.t,
            "steps": args.steps,
            "gates": [{"kind": g.kind, "qubits": list(g.qubits), "angle": g.angle} for g in circ.gates],
        })
    elif args.qasm:
        cnot = sum(g.kind == "CNOT" for g in circ.gates)
        text = f"wrote {len(circ.gates)} gates ({cnot} CNOT) on {circ.n_qubits} qubits\n"
    else:
        text = emit_qasm(circ)
    _emit(args, text)


def cmd_reduce(args):
    op = _mapped(args)
    if args.taper is not None:
        assign = SymmetryAssignment.parse(args.taper)
    elif args.electrons_up is not None and args.electrons_down is not None:
        if not args.mapping or not args.input:
            raise ValidationError("--electrons-up/--electrons-down need --input and --mapping")
        H = _load_fermion(args)
        assign = spin_block_assignment(_sets(args.mapping, H.n_modes), args.electrons_up, args.electrons_down)
    else:
        raise ValidationError("give --taper or both --electrons-up and --electrons-down")
    out = taper(op, assign, compact=args.compact)
    if args.json:
        payload = _operator_json(out)
        payload["tapered"] = [{"qubit": q, "eigenvalue": e} for q, e in assign.values]
        text = _dump(payload)
    else:
        text = to_text(out, args.digits)
    _emit(args, text)


def cmd_verify(args):
    sets = _sets(args.mapping, args.modes, args.seed)
    report = verify_mapping(sets, args.modes)
    _emit(args, _dump(report.to_dict()) if args.json else report.to_text())
    return 0 if report.passed else 1


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="segmap", description="Fermion-to-qubit encoding toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, operator_input=False, mapping=True):
        p.add_argument("-o", "--output", help="write to this file instead of stdout")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if operator_input:
            p.add_argument("-i", "--input", help="fermion operator file")
            p.add_argument("--operator", help="already-mapped qubit operator file")
            p.add_argument("--spin-block", action="store_true",
                           help="reorder interleaved spin orbitals into up/down blocks first")
        if mapping:
            p.add_argument("-m", "--mapping", help="mapping descriptor, e.g. jw, bk, msp:2-3-2, 2sp:w=4")

    def by_size(p):
        p.add_argument("-M", "--modes", type=int, required=True, help="number of modes")
        p.add_argument("--seed", type=int, default=0, help="seed for --mapping random")

    p = sub.add_parser("map", help="map a fermion operator to Pauli strings")
    common(p, operator_input=True)
    p.add_argument("--digits", type=int, default=None, help="round coefficients for display")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("sets", help="print S/F/P/U sets of a mapping")
    common(p)
    by_size(p)
    p.set_defaults(func=cmd_sets)

    p = sub.add_parser("tree", help="print the mapping tree")
    common(p)
    by_size(p)
    p.add_argument("--dot", action="store_true", help="Graphviz DOT output")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("count", help="Pauli and gate counts for one Trotter step")
    common(p, operator_input=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("compare", help="count table across several mappings")
    common(p, mapping=False)
    p.add_argument("-i", "--input", required=True, help="fermion operator file")
    p.add_argument("--spin-block", action="store_true")
    p.add_argument("--mappings", required=True, help="comma-separated descriptors")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("circuit", help="first-order Trotter circuit")
    common(p, operator_input=True)
    p.add_argument("--t", type=float, required=True, help="total evolution time")
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--qasm", help="write OpenQASM 2.0 to this file")
    p.set_defaults(func=cmd_circuit)

    p = sub.add_parser("reduce", help="taper parity qubits fixed by conserved particle numbers")
    common(p, operator_input=True)
    p.add_argument("--taper", help="assignments like q=1:-1,3:+1")
    p.add_argument("--electrons-up", type=int)
    p.add_argument("--electrons-down", type=int)
    p.add_argument("--compact", action="store_true", help="renumber remaining qubits from 0")
    p.add_argument("--digits", type=int, default=None)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="dense-matrix checks of a mapping")
    common(p)
    by_size(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "mapping", None) is None and args.command in ("sets", "tree", "verify"):
        print("error: --mapping is required", file=sys.stderr)
        return 2
    try:
        status = args.func(args)
    except SegmapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
