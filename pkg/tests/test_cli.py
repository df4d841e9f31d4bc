import csv
import io
import json
import subprocess
import sys

import pytest

from cliffspin.cli import main, parse_n, resolve_n


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_n():
    assert parse_n("1..4") == [1, 2, 3, 4]
    assert parse_n("3,5,8") == [3, 5, 8]
    assert resolve_n([5], 1) == [13]


def test_build_writes_realization(capsys):
    code, out, _ = run(capsys, "build", "--n", "8")
    assert code == 0
    body = json.loads(out)
    assert body["pass"] is True
    assert body["realization"]["spinor_dim"] == 16
    assert len(body["realization"]["generators"]) == 8


def test_build_with_k(capsys):
    code, out, _ = run(capsys, "build", "--n", "5", "--k", "1")
    assert code == 0
    assert json.loads(out)["realization"]["n"] == 13


def test_build_rejects_zero(capsys):
    code, _, err = run(capsys, "build", "--n", "0")
    assert code == 2
    assert "unsupported" in err


def test_verify_range(capsys):
    code, out, _ = run(capsys, "verify", "--n", "1..9")
    assert code == 0
    results = json.loads(out)["results"]
    assert [r["n"] for r in results] == list(range(1, 10))
    assert results[6]["exact_span"]["per_component"] == [64, 64]


def test_verify_pair_component(capsys):
    code, out, _ = run(capsys, "verify", "--n", "11")
    assert code == 0
    r = json.loads(out)["results"][0]
    assert r["components"] == ["+", "-"]
    assert r["volume_element"]["component_scalars"] == ["1", "-1"]
    assert r["volume_element"]["direct_sum_scalar"] is False


def test_verify_input_fault_injection(capsys, tmp_path):
    run(capsys, "build", "--n", "4", "--out", str(tmp_path / "r.json"))
    obj = json.loads((tmp_path / "r.json").read_text())["realization"]
    good = tmp_path / "good.json"
    good.write_text(json.dumps(obj))
    assert run(capsys, "verify", "--input", str(good))[0] == 0
    obj["generators"][2] = obj["generators"][1]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "verify", "--input", str(bad))
    assert code == 1
    violations = json.loads(out)["results"][0]["relations"]["violations"]
    assert {"component": "single", "i": 1, "j": 2, "detail": "pair does not anticommute"} in violations


def test_verify_unreadable_input(capsys, tmp_path):
    p = tmp_path / "junk.json"
    p.write_text("{}")
    assert run(capsys, "verify", "--input", str(p))[0] == 2


def test_gilbert_witness_and_obstruction(capsys):
    code, out, _ = run(capsys, "gilbert", "--n", "3", "--component", "both")
    assert code == 0
    reports = json.loads(out)["results"][0]["reports"]
    assert [r["component"] for r in reports] == ["+", "-"]
    code, out, _ = run(capsys, "gilbert", "--n", "6", "--trials", "5")
    assert code == 0
    res = json.loads(out)["results"][0]
    assert res["kind"] == "obstruction"
    assert res["evidence"][0]["min_spin_dim"] == 8


def test_gilbert_errors(capsys):
    assert run(capsys, "gilbert", "--n", "1")[0] == 2
    assert run(capsys, "gilbert", "--n", "6", "--trials", "0")[0] == 2


def test_gilbert_is_deterministic(capsys):
    a = run(capsys, "gilbert", "--n", "7", "--trials", "4", "--seed", "5")[1]
    b = run(capsys, "gilbert", "--n", "7", "--trials", "4", "--seed", "5")[1]
    assert a == b


@pytest.mark.parametrize("suite", ["idempotency", "involution", "rbc", "crb", "dirac"])
def test_hardy_suites(capsys, suite):
    code, out, _ = run(capsys, "hardy", "--suite", suite, "--n", "3", "--N", "16", "--trials", "2")
    assert code == 0
    reports = json.loads(out)["reports"]
    assert len(reports) == 2 and all(r["pass"] for r in reports)


def test_hardy_kernels_and_schwartz(capsys):
    code, out, _ = run(capsys, "hardy", "--suite", "kernels", "--N", "256")
    assert code == 0
    assert json.loads(out)["reports"][0]["L"] == 16.0
    code, out, _ = run(capsys, "hardy", "--suite", "schwartz", "--n", "2")
    assert code == 0


def test_hardy_csv(capsys):
    code, out, _ = run(capsys, "hardy", "--suite", "involution", "--N", "16", "--trials", "2", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 2 and rows[0]["test"] == "involution"


def test_csv_only_for_hardy(capsys):
    assert run(capsys, "build", "--n", "2", "--format", "csv")[0] == 2


def test_hardy_obstructed_witness(capsys):
    assert run(capsys, "hardy", "--suite", "rbc", "--n", "6", "--d", "2", "--N", "16")[0] == 2


def test_same_seed_same_report(capsys):
    argv = ("hardy", "--suite", "idempotency", "--N", "16", "--seed", "3")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cliffspin.cli", "build", "--n", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["realization"]["n"] == 2
    proc = subprocess.run([sys.executable, "-m", "cliffspin.cli", "nonsense"], capture_output=True, text=True)
    assert proc.returncode == 2
