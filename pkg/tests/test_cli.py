import json

import pytest

from moufang import cli, corpus, loopcore as lc


def run(argv, capsys):
    code = cli.run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture()
def cq8_table(tmp_path):
    path = tmp_path / "cq8.txt"
    lc.write_table(corpus.get("chein-Q8"), path)
    return str(path)


def test_corpus_list_and_emit(tmp_path, capsys):
    code, out, _ = run(["corpus", "list"], capsys)
    assert code == 0 and "chein-Q8" in out
    path = tmp_path / "t.txt"
    code, _, _ = run(["corpus", "emit", "--name", "chein-S3", "--out", str(path)], capsys)
    assert code == 0 and lc.read_table(path) == corpus.get("chein-S3")
    code, _, err = run(["corpus", "emit", "--name", "nope"], capsys)
    assert code == 2 and "UnknownName" in err


def test_loop_check(cq8_table, capsys):
    code, out, _ = run(["loop", "check", "--table", cq8_table, "--moufang", "--ip"], capsys)
    assert code == 0 and out == "moufang: pass\nip: pass\n"
    code, out, _ = run(["loop", "check", "--table", cq8_table, "--associative", "--json"], capsys)
    rep = json.loads(out)
    assert code == 1 and rep["checks"] == {"associative": False} and rep["schema"] == 1


def test_loop_series(cq8_table, capsys):
    code, out, _ = run(["loop", "series", "--table", cq8_table], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["class"] == 2 and rep["upper"]["orders"][-1] == 16


def test_algebra_omega(cq8_table, tmp_path, capsys):
    report = tmp_path / "r.json"
    code, _, _ = run(["algebra", "omega", "--table", cq8_table, "--field", "2^1",
                      "--report", str(report)], capsys)
    rep = json.loads(report.read_text())
    assert code == 0
    assert rep["nilpotency_index"] == 7 and rep["power_dims"][0] == 15
    assert all(rep["checks"].values())
    code, out, _ = run(["algebra", "omega", "--table", cq8_table, "--field", "2",
                        "--subloop", "4"], capsys)
    assert code == 0 and json.loads(out)["rank"] == 8  # 16 - |Q/<4>|, <4> = {1, 4}


def test_algebra_omega_reports_none(tmp_path, capsys):
    path = tmp_path / "z3.txt"
    lc.write_table(corpus.get("Z3"), path)
    code, out, _ = run(["algebra", "omega", "--table", str(path), "--field", "2"], capsys)
    assert json.loads(out)["nilpotency_index"] == "none"


def test_reports_are_deterministic(cq8_table, capsys):
    argv = ["algebra", "omega", "--table", cq8_table, "--field", "2"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second


def test_paige_commands(capsys):
    code, out, _ = run(["paige", "build", "--field", "2^1"], capsys)
    assert code == 0 and out.startswith("order 120\n")
    code, out, _ = run(["paige", "classify", "--field", "3^2", "--json"], capsys)
    rep = json.loads(out)
    assert rep["closed_under_sqrt"] is False and rep["parity_claim_disagrees"] is True
    code, _, err = run(["paige", "build", "--field", "5"], capsys)
    assert code == 2 and "FieldTooLarge" in err


def test_field_command(capsys):
    code, out, _ = run(["field", "--field", "3^2"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["modulus"] == [1, 0, 1] and rep["checks"]["euler_agrees"]


def test_usage_errors(capsys):
    assert run(["bogus"], capsys)[0] == 2
    assert run(["loop", "check"], capsys)[0] == 2
    assert run(["field", "--field", "6"], capsys)[0] == 2
    assert run(["loop", "series", "--table", "/nonexistent"], capsys)[0] == 2


def test_max_order_guard(cq8_table, capsys):
    code, _, err = run(["loop", "check", "--table", cq8_table, "--max-order", "8"], capsys)
    assert code == 2 and "max-order" in err


def test_verify_all_json(tmp_path, capsys):
    path = tmp_path / "v.json"
    code, _, err = run(["verify-all", "--out", str(path)], capsys)
    rep = json.loads(path.read_text())
    assert len(rep["criteria"]) == 13 and err.count("[PASS]") + err.count("[FAIL]") == 13
    assert code == (0 if rep["passed"] else 1)
