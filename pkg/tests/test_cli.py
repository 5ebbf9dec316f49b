import json

import pytest

from segmap.cli import main
from segmap.pauli import parse_qubit_operator

from conftest import H2_PATH, H_BK


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_map_text_round_trips(capsys):
    code, out, _ = run(capsys, "map", "-i", str(H2_PATH), "-m", "bk")
    assert code == 0
    op = parse_qubit_operator(out)
    assert len(op) == 15
    for k, v in H_BK.items():
        assert op[k] == pytest.approx(v, abs=1e-5)


def test_map_digits(capsys):
    _, out, _ = run(capsys, "map", "-i", str(H2_PATH), "-m", "jw", "--digits", "5")
    assert out.splitlines()[:2] == ["-0.81530 I", "0.16989 Z0"]


def test_map_json_full_precision(capsys):
    code, out, _ = run(capsys, "map", "-i", str(H2_PATH), "-m", "jw", "--json")
    data = json.loads(out)
    assert code == 0 and data["n_qubits"] == 4 and len(data["terms"]) == 15
    assert data["terms"][0]["pauli"] == "I"


def test_map_empty_hamiltonian(tmp_path, capsys):
    src = tmp_path / "empty.ferm"
    src.write_text("modes 3\n")
    out = tmp_path / "out.txt"
    code, _, _ = run(capsys, "map", "-i", str(src), "-m", "jw", "-o", str(out))
    assert code == 0 and out.read_text() == ""


def test_map_is_byte_identical(capsys):
    a = run(capsys, "map", "-i", str(H2_PATH), "-m", "2sp:w=2")[1]
    b = run(capsys, "map", "-i", str(H2_PATH), "-m", "2sp:w=2")[1]
    assert a == b and a


def test_sets(capsys):
    code, out, _ = run(capsys, "sets", "-m", "bk", "-M", "4")
    assert code == 0
    assert "3: S={0,1,2} F={1,2} P={1,2} U={}" in out
    data = json.loads(run(capsys, "sets", "-m", "bk", "-M", "4", "--json")[1])
    assert data["sets"][0] == {"mode": 0, "S": [], "F": [], "P": [], "U": [1, 3]}


def test_sets_random_is_seeded(capsys):
    a = run(capsys, "sets", "-m", "random", "-M", "9", "--seed", "4")[1]
    b = run(capsys, "sets", "-m", "random", "-M", "9", "--seed", "4")[1]
    assert a == b


def test_tree_dot_msp(capsys):
    code, out, _ = run(capsys, "tree", "-m", "msp:2-3-2", "-M", "12", "--dot")
    assert code == 0
    edges = {tuple(map(int, line.strip().rstrip(";").split(" -> "))) for line in out.splitlines() if "->" in line}
    assert edges == {(11, 5), (11, 7), (11, 9), (11, 10), (5, 1), (5, 3), (5, 4),
                     (1, 0), (3, 2), (7, 6), (9, 8)}
    data = json.loads(run(capsys, "tree", "-m", "msp:2-3-2", "-M", "12", "--json")[1])
    assert data["roots"] == [11]
    assert run(capsys, "tree", "-m", "bk", "-M", "4")[1] == "3\n  1\n    0\n  2\n"


def test_count_and_compare(capsys):
    code, out, _ = run(capsys, "count", "-i", str(H2_PATH), "-m", "jw", "--json")
    assert code == 0 and json.loads(out)["jw"]["total_gates"] == 82
    code, out, _ = run(capsys, "compare", "-i", str(H2_PATH), "--mappings", "jw,2sp:w=2,bk")
    rows = [line.split() for line in out.splitlines()[1:]]
    assert rows == [
        ["jw", "8", "8", "16", "32", "36", "46", "82"],
        ["2sp:w=2", "4", "4", "24", "32", "36", "30", "66"],
        ["bk", "4", "4", "28", "36", "44", "30", "74"],
    ]
    data = json.loads(run(capsys, "compare", "-i", str(H2_PATH), "--mappings", "bk", "--json")[1])
    assert data[0]["mapping"] == "bk" and data[0]["cnot"] == 44


def test_circuit_qasm_file(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SEGMAP_OUTPUT_DIR", str(tmp_path))
    code, out, _ = run(capsys, "circuit", "-i", str(H2_PATH), "-m", "bk", "--t", "0.1", "--qasm", "bk.qasm")
    assert code == 0 and "44 CNOT" in out
    text = (tmp_path / "bk.qasm").read_text()
    assert text.startswith("OPENQASM 2.0;") and text.count("cx ") == 44


def test_circuit_json_and_stdout(capsys):
    data = json.loads(run(capsys, "circuit", "-i", str(H2_PATH), "-m", "jw", "--t", "1", "--steps", "2", "--json")[1])
    assert data["steps"] == 2 and sum(g["kind"] == "CNOT" for g in data["gates"]) == 72
    out = run(capsys, "circuit", "-i", str(H2_PATH), "-m", "jw", "--t", "1")[1]
    assert out.startswith("OPENQASM 2.0;")


def test_output_dir_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SEGMAP_OUTPUT_DIR", str(tmp_path))
    assert run(capsys, "sets", "-m", "jw", "-M", "2", "-o", "sub/s.txt")[0] == 0
    assert (tmp_path / "sub" / "s.txt").read_text().startswith("0:")


def test_reduce_taper(capsys):
    code, out, _ = run(capsys, "reduce", "-i", str(H2_PATH), "-m", "bk", "--taper", "q=1:-1,3:+1", "--digits", "5")
    assert code == 0
    op = parse_qubit_operator(out)
    assert op["I"] == pytest.approx(-1.15746, abs=1e-5)
    assert op["X0 X2"] == pytest.approx(-0.09088, abs=1e-5)


def test_reduce_electron_counts_json(capsys):
    code, out, _ = run(capsys, "reduce", "-i", str(H2_PATH), "-m", "bk", "--spin-block",
                       "--electrons-up", "1", "--electrons-down", "1", "--compact", "--json")
    data = json.loads(out)
    assert code == 0 and data["n_qubits"] == 2
    assert data["tapered"] == [{"qubit": 1, "eigenvalue": -1}, {"qubit": 3, "eigenvalue": 1}]


def test_reduce_symmetry_violation_exit(capsys):
    code, _, err = run(capsys, "reduce", "-i", str(H2_PATH), "-m", "jw", "--taper", "1:-1")
    assert code == 3 and "tapered qubit" in err


def test_reduce_needs_assignment(capsys):
    assert run(capsys, "reduce", "-i", str(H2_PATH), "-m", "bk")[0] == 2


def test_reduce_from_operator_file(tmp_path, capsys):
    op = tmp_path / "op.txt"
    op.write_text("1.0 Z0 Z1\n0.5 X0\n")
    code, out, _ = run(capsys, "reduce", "--operator", str(op), "--taper", "1:-1")
    assert code == 0 and parse_qubit_operator(out)["Z0"] == -1.0


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "-m", "msp:3-2", "-M", "6")
    assert code == 0 and "PASS" in out
    data = json.loads(run(capsys, "verify", "-m", "random", "-M", "5", "--seed", "1", "--json")[1])
    assert data["passed"] is True


@pytest.mark.parametrize("argv, code", [
    (["verify", "-m", "jw", "-M", "13"], 4),
    (["sets", "-m", "msp:2-2", "-M", "5"], 2),
    (["sets", "-m", "nope", "-M", "3"], 2),
    (["map", "-i", "/nonexistent.ferm", "-m", "jw"], 2),
    (["map", "-m", "jw"], 2),
    (["sets", "-M", "3"], 2),
])
def test_error_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_parse_error_reports_line(tmp_path, capsys):
    bad = tmp_path / "bad.ferm"
    bad.write_text("modes 2\n1.0 0^ 0\nbroken\n")
    code, _, err = run(capsys, "map", "-i", str(bad), "-m", "jw")
    assert code == 2 and "line 3" in err


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["sets", "-m", "jw"])
    assert exc.value.code == 2
