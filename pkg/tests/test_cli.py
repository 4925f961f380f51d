import csv
import shlex
from pathlib import Path

import pytest

from tropdiff import LinearSystem, make_support, parse_solution_file, parse_system_file
from tropdiff.cli import BENCH_COLUMNS, main

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def _manifest():
    with open(CORPUS / "expected-exits.csv", newline="") as fh:
        return [(int(row["exit"]), row["command"]) for row in csv.DictReader(fh)]


@pytest.mark.parametrize("expected, command", _manifest(), ids=[c for _, c in _manifest()])
def test_corpus_exit_codes(expected, command, monkeypatch):
    monkeypatch.chdir(CORPUS)
    assert main(shlex.split(command)) == expected


def test_solve_writes_solution(tmp_path, capsys):
    out = tmp_path / "out.sol"
    assert main(["solve", str(CORPUS / "running-example.tde"), "--solution", str(out)]) == 0
    assert out.read_text() == "x1: fin 0 tail 2\n"
    assert "x1: fin 0 tail 2" in capsys.readouterr().out


def test_trace(capsys):
    main(["solve1", str(CORPUS / "running-example.tde"), "--trace"])
    assert "step 1: Jump x1 eq 1 [1, 2) p=1" in capsys.readouterr().out


def test_check_reports_first_violation(capsys):
    code = main(["check", str(CORPUS / "running-example.tde"), str(CORPUS / "naturals.sol")])
    assert code == 1
    assert "first violated equation 1" in capsys.readouterr().out


def test_oracle_prints_count(capsys):
    main(["oracle", str(CORPUS / "running-example.tde")])
    assert "solutions: 2" in capsys.readouterr().out


def test_from_cnf_then_solve(tmp_path, capsys):
    tde = tmp_path / "unit.tde"
    assert main(["from-cnf", str(CORPUS / "unit.cnf"), "-o", str(tde)]) == 0
    system = parse_system_file(tde.read_text())
    assert system.k == 4
    assert tde.read_text().startswith("# ")
    capsys.readouterr()
    assert main(["nlsolve", str(tde)]) == 0
    sol = tmp_path / "unit.sol"
    sol.write_text(capsys.readouterr().out.split("SAT\n", 1)[1])
    assert main(["nlverify", str(tde), str(sol)]) == 0
    assert main(["extract", str(CORPUS / "unit.cnf"), str(sol)]) == 0


def test_from_cnf_unsatisfiable(tmp_path):
    tde = tmp_path / "c.tde"
    assert main(["from-cnf", str(CORPUS / "contradiction.cnf"), "-o", str(tde)]) == 0
    assert main(["nlsolve", str(tde)]) == 1


def test_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a.tde", tmp_path / "b.tde"
    args = ["gen", "--n", "2", "--r", "3", "--k", "4", "--M", "9", "--seed", "7"]
    assert main(args + ["-o", str(a)]) == 0
    assert main(args + ["-o", str(b)]) == 0
    assert a.read_text() == b.read_text()
    assert parse_system_file(a.read_text()).k == 4


def test_bench_csv(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bench", "--suite", "univar-small", "--count", "20", "--csv", str(out)]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0]) == BENCH_COLUMNS
    assert len(rows) == 20
    for row in rows:
        assert int(row["steps"]) <= 2 * int(row["r"]) + 2
        assert int(row["finite_steps"]) <= int(row["r"])


def test_solve_and_solve1_agree_on_corpus(capsys):
    for path in sorted(CORPUS.glob("*.tde")):
        system = parse_system_file(path.read_text())
        if not isinstance(system, LinearSystem) or system.n != 1:
            continue
        a = main(["solve", str(path)])
        out_a = capsys.readouterr().out
        b = main(["solve1", str(path)])
        out_b = capsys.readouterr().out
        c = main(["oracle", str(path)])
        out_c = capsys.readouterr().out
        assert a == b == c
        if a == 0:
            sol_a = out_a.split("\n", 1)[1]
            assert sol_a == out_b.split("\n", 1)[1]
            assert sol_a in out_c


def test_corpus_solution_parses():
    assert parse_solution_file((CORPUS / "running-example.sol").read_text()) == (
        make_support({0}, 2),
    )
