import json
import subprocess
import sys

import pytest

from kprime.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_k0_example(capsys):
    code, out, _ = run(capsys, "k0", "corpus/ntr3.monoid", "--flavor", "pc", "--bound", "4")
    assert code == 0
    assert "rank 1, torsion none" in out


def test_k0_json_schema(capsys):
    code, out, _ = run(capsys, "k0", "corpus/ntr3.monoid", "--flavor", "pc", "--bound", "4", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["rank"] == 1 and data["torsion"] == []
    for k in ("monoid", "flavor", "bound", "generators", "relations", "classmap"):
        assert k in data
    assert {"devissage", "exactness", "additivity"} <= set(data["checks"])
    assert data["checks"]["devissage"] is True


def test_burnside_example(capsys):
    code, out, _ = run(capsys, "burnside", "corpus/z2.group", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["rank"] == 2 and data["marks"] == [[2, 0], [1, 1]]


def test_pc_example(capsys):
    code, out, _ = run(capsys, "pc", "corpus/idempotent.monoid")
    assert code == 0
    assert "pc false" in out and "witness" in out
    code, out, _ = run(capsys, "pc", "corpus/idempotent.monoid", "--json")
    data = json.loads(out)
    assert data["pc"] is False and len(data["witness"]) == 3


def test_pc_nset_and_aset(capsys, tmp_path):
    code, out, _ = run(capsys, "pc", "corpus/path3.nset")
    assert "pc true" in out
    f = tmp_path / "x.aset"
    f.write_text("aset X over N/t2 3\n0 0 0\n0 1 2\n0 0 0\n")
    code, out, _ = run(capsys, "pc", str(f), "--monoid", "corpus/ntr2.monoid")
    # t y = t z = * for both points, so nothing non-zero collides
    assert code == 0 and "pc true" in out


def test_corrupted_table_is_input_error(capsys, tmp_path):
    f = tmp_path / "bad.monoid"
    f.write_text("monoid bad 2\n0 0\n0 x\n")
    code, _, err = run(capsys, "k0", str(f))
    assert code == 2 and "line 3" in err
    code, _, err = run(capsys, "pc", str(tmp_path / "missing.monoid"))
    assert code == 2


def test_validate(capsys, tmp_path):
    code, out, _ = run(capsys, "validate", "corpus/twisted.monoid")
    assert code == 0 and "valid" in out
    f = tmp_path / "nonassoc.monoid"
    f.write_text("monoid na 4\n0 0 0 0\n0 1 2 3\n0 2 3 2\n0 3 2 2\n")
    code, out, _ = run(capsys, "validate", str(f), "--json")
    data = json.loads(out)
    assert code == 1 and data["valid"] is False and len(data["witness"]) == 3


def test_enumerate_and_out(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "enumerate", "corpus/ntr2.monoid", "--bound", "3", "--json", "--out", str(target))
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert data["count"] == 7


def test_g0_nsets(capsys):
    code, out, _ = run(capsys, "g0", "--flavor", "nset", "--bound", "3", "--json")
    assert json.loads(out)["rank"] == 4


def test_devissage_and_localize(capsys):
    code, out, _ = run(capsys, "devissage", "corpus/ntr2_ntr2.monoid", "--bound", "3")
    assert code == 0
    code, out, _ = run(capsys, "localize", "corpus/ntr2.monoid", "-s", "t")
    assert code == 0 and "exact: True" in out
    code, out, _ = run(capsys, "localize", "corpus/proto1.monoid", "-s", "t")
    assert code == 1 and "surjective: False" in out
    code, _, err = run(capsys, "localize", "corpus/twisted.monoid", "-s", "t")
    assert code == 2
    code, _, err = run(capsys, "devissage", "corpus/proto1.monoid")
    assert code == 2


def test_acgw_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("KPRIME_SEED", "11")
    code, a, _ = run(capsys, "acgw", "corpus/ntr2.monoid", "--samples", "20", "--json")
    assert code == 0
    reports = json.loads(a)
    assert len(reports) == 15 and all(r["seed"] == 11 and not r["failures"] for r in reports)
    code, b, _ = run(capsys, "acgw", "corpus/ntr2.monoid", "--samples", "20", "--json", "--seed", "11")
    assert a == b
    monkeypatch.setenv("KPRIME_SEED", "eleven")
    code, _, _ = run(capsys, "acgw", "corpus/ntr2.monoid", "--samples", "1")
    assert code == 2


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify-paper", "--only", "3,5")
    assert code == 0
    assert out.count("[PASS]") == 2


@pytest.mark.parametrize("args", [["--help"], ["k0", "--help"]])
def test_help(args, capsys):
    with pytest.raises(SystemExit) as e:
        main(args)
    assert e.value.code == 0


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "kprime", "burnside", "corpus/z3.group"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert r.returncode == 0 and "rank 2" in r.stdout
