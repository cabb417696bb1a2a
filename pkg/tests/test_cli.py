import io
import json
from itertools import permutations

import pytest

from slidebij.cli import EXIT_FAIL, EXIT_INVALID, EXIT_OK, EXIT_PARSE, SCHEMA_VERSION, main
from slidebij.patterns import PATTERN_23_1, contains_vincular

WORKED_CPF = "1:7,2:5,3:7,4:4,5:8,6:5,7:3,8:7"
WORKED_TREE = "(a,b,((c,((2,4),((3,5),8))),(1,(6,7))))"
WORKED_COMP = "0,0,1,1,2,0,3,1"
PERM_TREE = "(a,b,(((((c,1),2),(((3,4),(6,9)),7)),5),8))"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("method, want", [("recursion", "8"), ("multinomial", "12"),
                                          ("slide-omega", "8"), ("cpf", "8"), ("slide-psi", "12")])
def test_count(capsys, method, want):
    assert run(capsys, "count", "1,0,2,1", "--method", method) == (EXIT_OK, want + "\n", "")


def test_count_methods_agree(capsys):
    _, omega, _ = run(capsys, "count", "0,0,2,1,1,2", "--method", "slide-omega")
    _, cpf, _ = run(capsys, "count", "0,0,2,1,1,2", "--method", "cpf")
    assert omega == cpf


def test_count_errors(capsys):
    assert run(capsys, "count", "1,x")[0] == EXIT_PARSE
    assert run(capsys, "count", "1,2")[0] == EXIT_INVALID
    assert run(capsys, "count", "1,2", "--method", "multinomial")[:2] == (EXIT_OK, "3\n")
    assert run(capsys, "count", "1,0,2,1", "--method", "bogus")[0] == EXIT_PARSE


def test_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("1,0,2,1\n"))
    assert run(capsys, "count", "-")[:2] == (EXIT_OK, "8\n")


def test_enumerate_right_justified(capsys):
    code, out, _ = run(capsys, "enumerate", "0,0,0,4", "--set", "slide-omega")
    assert code == EXIT_OK and len(out.splitlines()) == 1


def test_enumerate_caterpillar_words(capsys):
    code, out, _ = run(capsys, "enumerate", "1,1,1", "--set", "cat-words-omega")
    want = {p for p in permutations((1, 2, 3)) if not contains_vincular(p, PATTERN_23_1)}
    assert code == EXIT_OK
    assert {tuple(map(int, line)) for line in out.split()} == want


@pytest.mark.parametrize("which", ["slide-omega", "slide-psi", "cpf", "cat-words-psi"])
def test_records_match_count(capsys, which):
    _, out, _ = run(capsys, "enumerate", "0,1,2,1", "--set", which, "--format", "records")
    records = [json.loads(line) for line in out.splitlines()]
    assert all(r["schema"] == SCHEMA_VERSION for r in records)
    assert [r["index"] for r in records] == list(range(len(records)))
    if which in ("slide-omega", "cpf"):
        _, count, _ = run(capsys, "count", "0,1,2,1")
        assert len(records) == int(count)


def test_enumerate_dot(capsys):
    code, out, _ = run(capsys, "enumerate", "0,1,2", "--set", "slide-omega", "--format", "dot")
    assert code == EXIT_OK and out.count("graph") == 3


def test_determinism(capsys):
    first = run(capsys, "enumerate", "0,1,1,2", "--set", "slide-psi", "--format", "records")
    second = run(capsys, "enumerate", "0,1,1,2", "--set", "slide-psi", "--format", "records")
    assert first == second


def test_psi_guard(capsys, monkeypatch):
    monkeypatch.setenv("SLIDEBIJ_MAX_N", "3")
    assert run(capsys, "enumerate", "0,1,1,2", "--set", "slide-psi")[0] == EXIT_INVALID
    assert run(capsys, "count", "0,1,1,2", "--method", "slide-psi")[0] == EXIT_INVALID
    assert run(capsys, "enumerate", "0,1,1,2", "--set", "slide-omega")[0] == EXIT_OK


def test_map_cpf_to_tree(capsys):
    assert run(capsys, "map", "--from", "cpf", "--to", "tree", "--input", WORKED_CPF)[:2] == (EXIT_OK, WORKED_TREE + "\n")
    code, out, _ = run(capsys, "map", "--from", "cpf", "--to", "tree", "--as-word", "--input", "75748537")
    assert out == WORKED_TREE + "\n"


def test_map_round_trip(capsys):
    _, tree, _ = run(capsys, "map", "--from", "word", "--to", "tree", "--input", "73584757")
    assert tree.strip() == WORKED_TREE
    code, out, _ = run(capsys, "map", "--from", "tree", "--to", "word", "--input", tree.strip(), "--comp", WORKED_COMP)
    assert (code, out) == (EXIT_OK, "73584757\n")
    _, out, _ = run(capsys, "map", "--from", "tree", "--to", "cpf", "--input", WORKED_TREE, "--comp", WORKED_COMP)
    assert out == WORKED_CPF + "\n"


def test_map_tree_needs_composition(capsys):
    assert run(capsys, "map", "--from", "tree", "--to", "word", "--input", WORKED_TREE)[0] == EXIT_INVALID
    assert run(capsys, "map", "--from", "tree", "--to", "word", "--input", WORKED_TREE,
               "--comp", "1,1,1,1,1,1,1,1")[0] == EXIT_INVALID


def test_map_permutations(capsys):
    assert run(capsys, "map", "--from", "perm", "--to", "tree", "--input", "853769421")[:2] == (EXIT_OK, PERM_TREE + "\n")
    assert run(capsys, "map", "--from", "tree", "--to", "perm", "--input", PERM_TREE)[:2] == (EXIT_OK, "853769421\n")
    assert run(capsys, "map", "--from", "perm", "--to", "tree", "--input", "1123")[0] == EXIT_INVALID
    assert run(capsys, "map", "--from", "word", "--to", "perm", "--input", "73584757")[0] == EXIT_INVALID


def test_map_invalid_sources(capsys):
    assert run(capsys, "map", "--from", "cpf", "--to", "tree", "--input", "1:1,2")[0] == EXIT_PARSE
    assert run(capsys, "map", "--from", "cpf", "--to", "tree", "--input", "1:1,2:1,3:1")[0] == EXIT_INVALID
    # a parking function that is not column-restricted
    assert run(capsys, "map", "--from", "cpf", "--to", "tree", "--as-word", "--input", "536266")[0] == EXIT_INVALID
    assert run(capsys, "map", "--from", "word", "--to", "tree", "--input", "11")[0] == EXIT_INVALID
    assert run(capsys, "map", "--from", "tree", "--to", "word", "--input", "(a,b", "--comp", "1")[0] == EXIT_PARSE


def test_label(capsys):
    code, out, _ = run(capsys, "label", "(a,b,c)", "")
    assert (code, out) == (EXIT_OK, "(a,b,c)\n")
    code, out, _ = run(capsys, "label", "(a,b,(c,1))", "1")
    assert code == EXIT_OK and out.splitlines()[1] == "1\tc,1"
    code, out, _ = run(capsys, "label", "(a,b,(c,1))", "1", "--format", "dot")
    assert code == EXIT_OK and out.startswith("graph")


def test_label_failure_reports_step(capsys):
    code, out, err = run(capsys, "label", "(a,b,((c,1),(2,3)))", "0,0,3")
    assert code == EXIT_FAIL
    assert out.startswith("failed at step")
    assert err


def test_label_errors(capsys):
    assert run(capsys, "label", "(a,b,(c,1)", "1")[0] == EXIT_PARSE
    assert run(capsys, "label", "(a,b,(c,1))", "1,1")[0] == EXIT_INVALID


def test_word_report(capsys):
    code, out, _ = run(capsys, "word", "666224")
    lines = dict(line.split("\t") for line in out.splitlines())
    assert code == EXIT_OK
    assert lines["content"] == "0,2,0,1,0,3"
    assert lines["caterpillar-psi"] == "true"
    assert lines["caterpillar-omega"] == "false"
    assert lines["avoids 2-1-2"] == "true"


def test_word_patterns(capsys):
    code, out, _ = run(capsys, "word", "32541", "--pattern", "23-1")
    assert "avoids 23-1\tfalse" in out
    assert run(capsys, "word", "321", "--pattern", "2--1")[0] == EXIT_PARSE
    assert run(capsys, "word", "39")[0] == EXIT_INVALID


def test_verify_counts(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "4", "--suite", "counts")
    assert code == EXIT_OK and out and all(line.startswith("PASS") for line in out.splitlines())


def test_verify_records(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "3", "--suite", "ones", "--format", "records")
    records = [json.loads(line) for line in out.splitlines()]
    assert code == EXIT_OK and all(r["passed"] and r["kind"] == "check" for r in records)


def test_verify_mutation_fails(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "4", "--suite", "counts", "--mutate")
    assert code == EXIT_FAIL
    assert "FAIL" in out and "counterexample" in out


def test_verify_bound(capsys, monkeypatch):
    monkeypatch.setenv("SLIDEBIJ_MAX_N", "4")
    assert run(capsys, "verify", "--max-n", "5")[0] == EXIT_INVALID
