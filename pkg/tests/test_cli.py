import csv

import pytest

from trios.cli import main, parse_factors
from trios.qasm import load, parse


def _rows(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def test_compile_bench_input(tmp_path):
    out, rep = tmp_path / "out.qasm", tmp_path / "r.csv"
    args = ["compile", "--input", "bench:cnx_dirty", "--topology", "johannesburg",
            "--router", "trios", "--out", str(out), "--report", str(rep)]
    assert main(args) == 0
    assert main(args) == 0
    rows = _rows(rep)
    assert len(rows) == 2 and rows[0] == rows[1]
    assert rows[0]["benchmark"] == "cnx_dirty" and rows[0]["toffoli_in"] == "16"
    assert load(out).n_qubits == 20


def test_compile_file_input(tmp_path, capsys):
    src = tmp_path / "tof.qasm"
    src.write_text('OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[20];\nccx q[2],q[6],q[19];\n')
    assert main(["compile", "--input", str(src), "--toffoli", "8cnot"]) == 0
    lines = capsys.readouterr().out.splitlines()
    row = dict(zip(lines[0].split(","), lines[1].split(",")))
    assert row["benchmark"] == "tof" and row["swaps_added"] == "7" and row["two_qubit_total"] == "29"


def test_compile_errors(tmp_path, capsys):
    bad = tmp_path / "bad.qasm"
    bad.write_text("OPENQASM 2.0;\nqreg q[2];\nfoo q[0];\n")
    assert main(["compile", "--input", str(bad)]) == 1
    assert "line 3" in capsys.readouterr().err
    assert main(["compile", "--input", "bench:nope"]) == 1
    assert main(["compile", "--input", "bench:bv", "--topology", "line-5"]) == 1
    with pytest.raises(SystemExit):
        main(["compile", "--input", "bench:bv", "--router", "sabre"])


def test_gen_stdout(capsys):
    assert main(["gen", "bv", "--width", "3"]) == 0
    c = parse(capsys.readouterr().out)
    assert c.n_qubits == 3


def test_bench_writes_suite(tmp_path):
    assert main(["bench", "--suite", "table1", "--out-dir", str(tmp_path)]) == 0
    files = sorted(p.stem for p in tmp_path.glob("*.qasm"))
    assert len(files) == 11 and "grovers" in files
    assert load(tmp_path / "grovers.qasm").n_qubits == 9


def test_compare_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["compare", "--topologies", "johannesburg,line-20", "--benchmarks", "cnx_dirty,bv"]
    assert main(args + ["--report", str(a)]) == 0
    assert main(args + ["--report", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rows = _rows(a)
    assert [(r["topology"], r["benchmark"], r["router"]) for r in rows] == [
        ("johannesburg", "cnx_dirty", "trios"), ("johannesburg", "cnx_dirty", "baseline"),
        ("johannesburg", "bv", "trios"), ("johannesburg", "bv", "baseline"),
        ("johannesburg", "geomean", "trios/baseline"),
        ("line-20", "cnx_dirty", "trios"), ("line-20", "cnx_dirty", "baseline"),
        ("line-20", "bv", "trios"), ("line-20", "bv", "baseline"),
        ("line-20", "geomean", "trios/baseline"),
    ]
    assert float(rows[4]["two_qubit_total"]) < 1 and float(rows[4]["est_success"]) > 1


def test_compare_bad_topology(tmp_path):
    assert main(["compare", "--topologies", "mesh-9", "--benchmarks", "bv",
                 "--report", str(tmp_path / "r.csv")]) == 1


def test_sweep_labels(tmp_path):
    rep = tmp_path / "s.csv"
    assert main(["sweep", "--benchmarks", "cnx_dirty", "--factors", "1:100:log5", "--report", str(rep)]) == 0
    rows = _rows(rep)
    labels = {float(r["improvement"]): r["label"] for r in rows}
    assert labels[1.0] == "current-hardware" and labels[20.0] == "simulation-default"
    ratios = [float(r["success_ratio"]) for r in rows]
    assert all(x >= y for x, y in zip(ratios, ratios[1:])) and ratios[-1] >= 1


def test_parse_factors():
    assert parse_factors("1:100:log3") == [1.0, 10.0, 20.0, 100.0]
    assert parse_factors("5,50") == [1.0, 5.0, 20.0, 50.0]
    with pytest.raises(ValueError):
        parse_factors("1:100:lin3")
