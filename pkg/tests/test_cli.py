import json
import subprocess
import sys

import pytest

from knotproj.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_trefoil(capsys):
    code, out, _ = run(capsys, "analyze", "1 2 3 1 2 3")
    data = json.loads(out)
    assert code == 0
    assert data["faces"] == {"p2": 3, "p3": 2}
    assert data["prime"] and data["has_triple"] and data["reductivity"] == 1


def test_reduce_kink(capsys):
    code, out, _ = run(capsys, "reduce", "1 1")
    data = json.loads(out)
    assert code == 0 and data["pr"] == ""
    assert [ev["kind"] for ev in data["trace"]] == ["R1b"]


def test_parse(capsys):
    code, out, _ = run(capsys, "parse", "2 3 1 2 3 1")
    data = json.loads(out)
    assert data["word"] == "1 2 3 1 2 3" and data["parity"] and data["embeddings"] == 1
    code, out, err = run(capsys, "parse", "1 2 3 1 2")
    assert code == 2 and "error" in err


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "analyze", "1 2 1 2")[0] == 2
    assert run(capsys, "analyze", "1 1", "--embedding", "5")[0] == 2
    assert run(capsys, "verify", "--suite", "T99")[0] == 2
    assert run(capsys, "enumerate", "--max-n", "-1")[0] == 2
    assert run(capsys, "homotopy", "", "1 2 3 1 2 3", "--max-n", "1")[0] == 2


def test_homotopy(capsys):
    code, out, _ = run(capsys, "homotopy", "", "1 2 2 1", "--max-n", "4")
    assert code == 0 and json.loads(out)["status"] == "yes"
    code, out, _ = run(capsys, "homotopy", "", "1 2 3 1 2 3", "--max-n", "5")
    assert code == 1 and json.loads(out)["status"] == "no_within_bound"


def test_moves_and_decompose(capsys):
    code, out, _ = run(capsys, "moves", "1 2 3 1 2 3", "--kinds", "s2 w2")
    sites = json.loads(out)["sites"]
    assert sum(s["kind"] == "W2b" for s in sites) == 3
    code, out, _ = run(capsys, "decompose", "1 1 2 2")
    assert json.loads(out)["factors"] == ["1 1", "1 1"]


def test_reductivity_text(capsys):
    code, out, _ = run(capsys, "reductivity", "1 2 3 1 2 3", "--format", "text")
    assert code == 0 and "value: 1" in out


def test_enumerate_writes_catalog(capsys, tmp_path):
    path = tmp_path / "c.jsonl"
    code, out, _ = run(capsys, "enumerate", "--max-n", "3", "--catalog", str(path), "--cross-validate")
    data = json.loads(out)
    assert code == 0 and data["counts"] == {"0": 1, "1": 1, "2": 2, "3": 6}
    assert data["cross_validate"]["agree"]
    code, out, _ = run(capsys, "verify", "--suite", "T3,T7", "--max-n", "3", "--catalog", str(path))
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and [s["suite"] for s in rep["suites"]] == ["T3", "T7"]
    code, _, err = run(capsys, "verify", "--suite", "T3", "--max-n", "4", "--catalog", str(path))
    assert code == 1 and "covers" in err


def test_verify_auto_caches(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("KNOTPROJ_CACHE", str(tmp_path))
    code, out, _ = run(capsys, "verify", "--suite", "T2", "--max-n", "3", "--format", "text")
    assert code == 0 and out.startswith("PASS T2")
    assert (tmp_path / "catalog-n3.jsonl").exists()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "knotproj", "parse", ""], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["n"] == 0
