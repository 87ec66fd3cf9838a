import json

import pytest

from pebblekit.cli import main
from pebblekit.graphs import Graph


def run(argv):
    return main(argv)


@pytest.fixture
def mc4(tmp_path):
    p = tmp_path / "mc4.json"
    assert run(["construct", "middle-cycle", "--n", "2", "--out", str(p)]) == 0
    return p


def dist_file(tmp_path, counts, name="d.json"):
    p = tmp_path / name
    p.write_text(json.dumps({"counts": counts}))
    return p


# -- construct ---------------------------------------------------------------

def test_construct_middle_cycle(mc4):
    g = Graph.from_json(mc4.read_text())
    assert g.n == 8 and g.m == 12


def test_construct_product(tmp_path, capsys):
    out = tmp_path / "prod.json"
    assert run(["construct", "product", "--left", "m-cycle:2",
                "--right", "m-cycle:2", "--out", str(out)]) == 0
    assert Graph.from_json(out.read_text()).n == 64


def test_construct_bad_param():
    assert run(["construct", "path", "--n", "0"]) == 3


def test_construct_unknown_family():
    assert run(["construct", "moebius", "--n", "3"]) == 3


def test_construct_dot(tmp_path):
    out = tmp_path / "g.json"
    dot = tmp_path / "g.dot"
    assert run(["construct", "path", "--n", "2",
                "--out", str(out), "--dot", str(dot)]) == 0
    assert '"v1" -- "v2"' in dot.read_text()


def test_construct_delete(tmp_path):
    mp = tmp_path / "mp.json"
    assert run(["construct", "middle-path", "--n", "4", "--out", str(mp)]) == 0
    out = tmp_path / "trimmed.json"
    assert run(["construct", "delete", "--graph", str(mp),
                "--delete", "v1,v4", "--out", str(out)]) == 0
    assert Graph.from_json(out.read_text()).n == 5


# -- solve -------------------------------------------------------------------

def test_solve_solvable_with_witness(mc4, tmp_path):
    d = dist_file(tmp_path, {"v2": 10})
    w = tmp_path / "w.json"
    assert run(["solve", "--graph", str(mc4), "--dist", str(d),
                "--target", "u(0,1)", "--witness-out", str(w)]) == 0
    # the emitted witness must replay
    assert run(["solve", "--graph", str(mc4), "--dist", str(d),
                "--target", "u(0,1)", "--replay", str(w)]) == 0


def test_solve_cor24_witness_unsolvable(tmp_path):
    g = tmp_path / "g.json"
    assert run(["construct", "m-path-trimmed", "--n", "4", "--out", str(g)]) == 0
    d = dist_file(tmp_path, {"v2": 1, "v3": 1, "u(3,4)": 3})
    assert run(["solve", "--graph", str(g), "--dist", str(d),
                "--target", "u(1,2)"]) == 1


def test_solve_empty_distribution(mc4, tmp_path):
    d = dist_file(tmp_path, {})
    assert run(["solve", "--graph", str(mc4), "--dist", str(d),
                "--target", "v0"]) == 1


def test_solve_parse_error(mc4, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["solve", "--graph", str(mc4), "--dist", str(bad),
                "--target", "v0"]) == 3


def test_solve_missing_file(mc4):
    assert run(["solve", "--graph", str(mc4), "--dist", "/nonexistent",
                "--target", "v0"]) == 3


# -- pebbling-number ---------------------------------------------------------

def test_pebbling_number_mc4(mc4, capsys):
    assert run(["pebbling-number", "--graph", str(mc4)]) == 0
    assert "f_1 = 10" in capsys.readouterr().out


def test_pebbling_number_budget_inconclusive(tmp_path, capsys):
    g = tmp_path / "mc6.json"
    assert run(["construct", "middle-cycle", "--n", "3", "--out", str(g)]) == 0
    assert run(["pebbling-number", "--graph", str(g),
                "--budget-nodes", "100000"]) == 2
    assert "inconclusive" in capsys.readouterr().out


def test_pebbling_number_restricted_targets(tmp_path, capsys):
    g = tmp_path / "p4.json"
    assert run(["construct", "path", "--n", "4", "--out", str(g)]) == 0
    assert run(["pebbling-number", "--graph", str(g), "--targets", "v4"]) == 0
    assert "f_1 = 8" in capsys.readouterr().out


# -- explain -----------------------------------------------------------------

def test_explain_middle_cycle(mc4, tmp_path, capsys):
    d = dist_file(tmp_path, {"v2": 10})
    assert run(["explain", "--strategy", "middle-cycle", "--graph", str(mc4),
                "--dist", str(d), "--target", "u(0,1)"]) == 0
    out = capsys.readouterr().out
    assert "case:" in out and "->" in out


def test_explain_collect_threshold(tmp_path, capsys):
    g = tmp_path / "p4.json"
    assert run(["construct", "path", "--n", "4", "--out", str(g)]) == 0
    d = dist_file(tmp_path, {"v1": 8})
    assert run(["explain", "--strategy", "collect", "--graph", str(g),
                "--dist", str(d), "--target", "v4"]) == 0
    assert "delivered 1" in capsys.readouterr().out


def test_explain_structural_error(tmp_path):
    g = tmp_path / "p4.json"
    assert run(["construct", "path", "--n", "4", "--out", str(g)]) == 0
    d = dist_file(tmp_path, {"v1": 8})
    assert run(["explain", "--strategy", "middle-cycle", "--graph", str(g),
                "--dist", str(d), "--target", "v4"]) == 3


def test_explain_hypothesis_not_met(mc4, tmp_path, capsys):
    d = dist_file(tmp_path, {"v2": 3})
    assert run(["explain", "--strategy", "middle-cycle", "--graph", str(mc4),
                "--dist", str(d), "--target", "u(0,1)"]) == 1
    assert "hypothesis" in capsys.readouterr().out


def test_explain_unknown_strategy(mc4, tmp_path):
    d = dist_file(tmp_path, {"v2": 10})
    assert run(["explain", "--strategy", "nope", "--graph", str(mc4),
                "--dist", str(d), "--target", "v0"]) == 3


# -- verify ------------------------------------------------------------------

def test_verify_ineq22_range(capsys):
    assert run(["verify", "ineq22", "--m", "5..30"]) == 0
    out = capsys.readouterr().out
    assert out.count("confirmed") == 26


def test_verify_ineq22_refuted_point():
    assert run(["verify", "ineq22", "--m", "4"]) == 1


def test_verify_cor24_range(capsys):
    assert run(["verify", "cor24", "--n", "3..5"]) == 0
    assert capsys.readouterr().out.count("confirmed") == 3


def test_verify_graham(capsys):
    assert run(["verify", "graham", "--left", "path:2", "--right", "path:3"]) == 0
    assert "holds" in capsys.readouterr().out


def test_verify_unknown_claim():
    assert run(["verify", "whatever", "--n", "3"]) == 3


def test_verify_missing_range():
    assert run(["verify", "cor24"]) == 3


def test_verify_writes_ledger(tmp_path):
    ledger = tmp_path / "ledger.jsonl"
    csv_out = tmp_path / "summary.csv"
    assert run(["verify", "kn", "--n", "2..4",
                "--ledger", str(ledger), "--csv", str(csv_out)]) == 0
    assert len(ledger.read_text().splitlines()) == 3
    assert "complete_graph" in csv_out.read_text()


# -- usage -------------------------------------------------------------------

def test_no_command_is_usage_error():
    assert run([]) == 3


def test_unknown_flag_is_usage_error():
    assert run(["solve", "--bogus"]) == 3
