import csv
import io
import json
import subprocess
import sys

import pytest

from k3i19.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_trace_json(capsys):
    code, out, _ = run(capsys, "trace", "--p", "5")
    rec = json.loads(out)
    assert code == 0
    assert rec["trace_pointcount"] == -9 and rec["trace_hecke"] == -9 and rec["agree"] is True


def test_trace_second_power(capsys):
    code, out, _ = run(capsys, "trace", "--p", "5", "--n", "2")
    rec = json.loads(out)
    assert code == 0 and rec["trace_pointcount"] == 31 and rec["trace_hecke"] is None


def test_trace_bad_reduction(capsys):
    code, _, err = run(capsys, "trace", "--p", "19")
    assert code == 2 and "bad reduction at 19" in err


@pytest.mark.parametrize("argv", [["trace", "--p", "9"], ["trace", "--p", "5", "--n", "3"], ["table", "--p-max", "2"]])
def test_bad_input_exit_code(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["trace"])
    assert info.value.code == 2


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--p-max", "43", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert out.splitlines()[0] == "p,trace1,trace2,trace_hecke,split"
    assert len(rows) == 12
    assert [int(r["trace1"]) for r in rows] == [0, -9, -5, 3, 0, 15, -30, 0, 0, 0, 0, -85]


def test_table_markdown(capsys):
    code, out, _ = run(capsys, "table", "--p-max", "13", "--format", "markdown")
    lines = out.strip().splitlines()
    assert lines[0] == "| p | trace1 | trace2 | trace_hecke | split |"
    assert lines[1] == "|---|---|---|---|---|"
    assert len(lines) == 2 + 5
    assert all(line.startswith("|") and line.endswith("|") for line in lines)


def test_table_json_sign_annotation(capsys):
    _, out, _ = run(capsys, "table", "--p-max", "13")
    rows = {r["p"]: r for r in json.loads(out)}
    for p in (5, 7, 11):
        assert rows[p]["paper_table_sign_matches"] is True
    for p in (3, 13):
        assert abs(rows[p]["trace2"]) == 2 * p * p
        assert rows[p]["paper_table_sign_matches"] == (rows[p]["trace2"] < 0)


def test_zeta(capsys):
    code, out, _ = run(capsys, "zeta", "--p", "13")
    rec = json.loads(out)
    assert code == 0
    assert rec["zeta"] == "1/((1-T)(1+13T)(1-13T)^21(1-169T))"
    assert rec["picard_rank"] == 21


def test_fibers(capsys):
    code, out, _ = run(capsys, "fibers", "--model", "canonical")
    rows = json.loads(out)
    assert code == 0
    assert [(r["place"], r["kind"], r["count"]) for r in rows][0] == ("inf", "I19", 1)
    assert sum(r["count"] for r in rows if r["kind"] == "I1") == 5
    code, out, _ = run(capsys, "fibers", "--model", "char19")
    assert code == 0
    assert sorted(r["kind"] for r in json.loads(out)) == ["I19", "II", "III"]


def test_fibers_bad_reduction_is_bad_input(capsys):
    code, _, err = run(capsys, "fibers", "--model", "canonical", "--p", "3")
    assert code == 2 and err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--p-max", "60", "--workers", "2")
    rep = json.loads(out)
    assert code == 0 and rep["all_agree"]
    assert rep["witnesses"] == {"3": True, "5": True, "7": True, "31": True}


def test_verify_failure_exit_code(capsys, monkeypatch):
    import k3i19.hecke as hecke_mod

    real = hecke_mod.charpoly_T
    monkeypatch.setattr(
        hecke_mod, "charpoly_T", lambda p: type(real(p))(p, real(p).trace + 1, real(p).det)
    )
    code, out, _ = run(capsys, "verify", "--p-max", "31")
    assert code == 1
    assert json.loads(out)["failures"]


@pytest.mark.parametrize("task", ["verify-p3", "verify-p19"])
def test_lattice(capsys, task):
    code, out, _ = run(capsys, "lattice", task)
    rep = json.loads(out)
    assert code == 0 and rep["ok"]


def test_lattice_p3_content(capsys):
    _, out, _ = run(capsys, "lattice", "verify-p3")
    rep = json.loads(out)
    assert rep["gram"] == [["-798", "285"], ["285", "-102"]]
    assert rep["discriminant"] == "-9" and rep["artin_invariant"] == 1 and rep["similar"]


def test_cache_flag_and_env(capsys, tmp_path, monkeypatch):
    path = tmp_path / "c.txt"
    run(capsys, "trace", "--p", "7", "--cache", str(path))
    assert path.read_text() == "canonical 7 1 -5\n"
    env_path = tmp_path / "env.txt"
    monkeypatch.setenv("K3I19_CACHE", str(env_path))
    run(capsys, "trace", "--p", "11")
    assert env_path.read_text() == "canonical 11 1 3\n"


def test_output_independent_of_workers(capsys):
    _, one, _ = run(capsys, "table", "--p-max", "23", "--format", "csv")
    _, three, _ = run(capsys, "table", "--p-max", "23", "--format", "csv", "--workers", "3")
    assert one == three


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "k3i19", "trace", "--p", "3"], capture_output=True, text=True
    )
    assert out.returncode == 0 and json.loads(out.stdout)["trace_pointcount"] == 0
