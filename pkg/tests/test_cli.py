import json
import subprocess
import sys
from pathlib import Path

import pytest

from cubicenc.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    return main([str(a) for a in argv])


def load(path):
    return json.loads(Path(path).read_text())


def test_pipeline_example(tmp_path, capsys):
    out = tmp_path / "summary.json"
    assert run("pipeline", "--axioms", "3,5", "--target", 8, "--len", 3, "--stats", "-o", out) == 0
    summary = load(out)
    assert summary["report"]["satisfied"] and summary["max_degree"] == 3
    assert summary["merged_value"] == 0
    assert out.read_text() == (GOLDEN / "pipeline_3_5_8.json").read_text()
    err = capsys.readouterr().err
    assert "system.variables: 217" in err and "reduced.max_degree: 3" in err


def test_minimal_encode_witness_verify_extract(tmp_path):
    system, proof, assign = tmp_path / "s.json", tmp_path / "p.json", tmp_path / "a.json"
    proof.write_text(json.dumps({"axioms": [3], "target": 3, "lines": [{"f": 3, "just": "ax"}]}))
    # K = 2 only spans {0, 1}
    assert run("encode", "--axioms", 3, "--target", 3, "--len", 1, "--window", 2, "-o", system) == 0
    assert run("witness", "--system", system, "--proof", proof, "-o", assign) == 2
    assert run("encode", "--axioms", 3, "--target", 3, "--len", 1, "-o", system) == 0
    assert system.read_text() == (GOLDEN / "minimal_system.json").read_text()
    assert run("witness", "--system", system, "--proof", proof, "-o", assign) == 0
    report = tmp_path / "r.json"
    assert run("verify", "--system", system, "--assign", assign, "-o", report) == 0
    assert load(report)["satisfied"] is True
    back = tmp_path / "back.json"
    assert run("extract", "--system", system, "--assign", assign, "-o", back) == 0
    assert load(back) == load(proof)


def test_verify_reports_failures(tmp_path):
    system, assign = tmp_path / "s.json", tmp_path / "a.json"
    run("encode", "--axioms", 3, "--target", 3, "--len", 1, "-o", system)
    names = [v["name"] for v in load(system)["variables"]]
    assign.write_text(json.dumps({"values": {n: 0 for n in names}}))
    report = tmp_path / "r.json"
    assert run("verify", "--system", system, "--assign", assign, "-o", report) == 1
    data = load(report)
    assert not data["satisfied"] and data["failures"]
    assert run("extract", "--system", system, "--assign", assign) == 2


def test_reduce_example_golden(tmp_path):
    out = tmp_path / "reduced.json"
    assert run("reduce", GOLDEN / "x3y2z_input.json", "-o", out) == 0
    assert out.read_text() == (GOLDEN / "x3y2z_reduced.json").read_text()
    assert len(load(out)["shields"]) == 5


def test_reduce_merge_modes(tmp_path):
    src = tmp_path / "two.json"
    src.write_text(json.dumps({"constraints": [{"poly": "x^2*y - 1"}, {"poly": "y - 2"}]}))
    out = tmp_path / "r.json"
    assert run("reduce", src, "-o", out) == 0
    data = load(out)
    assert data["merged"] and data["source_count"] == 2 and data["stats"]["max_degree"] <= 3
    assert run("reduce", src, "--merge", "never") == 2
    # merging squares each constraint, so sources above degree 3 are refused
    assert run("reduce", GOLDEN / "x3y2z_input.json", "--merge", "always") == 2


def test_prove_and_search(tmp_path):
    proof = tmp_path / "p.json"
    assert run("prove", "--axioms", 4, "--target", 3, "--len", 3, "-o", proof) == 1
    assert run("prove", "--axioms", "3,5", "--target", 8, "--len", 3, "-o", proof) == 0
    assert len(load(proof)["lines"]) == 3
    system, result = tmp_path / "s.json", tmp_path / "res.json"
    run("encode", "--axioms", "3,5", "--target", 8, "--len", 3, "-o", system)
    assert run("search", "--system", system, "-o", result) == 0
    assert load(result)["solutions"] == 4
    run("encode", "--axioms", "2,3", "--target", 5, "--len", 2, "-o", system)
    assert run("search", "--system", system, "-o", result) == 1


def test_pipeline_with_given_proof(tmp_path):
    proof = tmp_path / "p.json"
    proof.write_text(json.dumps({"axioms": [1], "target": 2,
                                 "lines": [{"f": 1, "just": "ax"}, {"f": 2, "just": {"mp": [1, 1]}}]}))
    assert run("pipeline", "--axioms", 1, "--target", 2, "--len", 3, "--proof", proof) == 0
    assert run("pipeline", "--axioms", 1, "--target", 3, "--len", 3, "--proof", proof) == 2
    assert run("pipeline", "--axioms", 4, "--target", 3, "--len", 2) == 1


def test_check_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("check", "--seed", 7, "--count", 4, "-o", a) == 0
    assert run("check", "--seed", 7, "--count", 4, "-o", b) == 0
    assert a.read_bytes() == b.read_bytes()
    assert load(a)["failed"] == 0


def test_encode_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        run("encode", "--axioms", "3,5", "--target", 8, "--len", 3, "--activation", "-o", path)
    assert a.read_bytes() == b.read_bytes()


def test_bad_input(tmp_path, capsys):
    with pytest.raises(SystemExit):
        run("encode", "--axioms", "3,3", "--target", 8, "--len", 3)
    with pytest.raises(SystemExit):
        run("encode", "--axioms", "3", "--target", 8, "--len", 0)
    assert run("verify", "--system", tmp_path / "missing.json", "--assign", tmp_path / "x") == 2
    broken = tmp_path / "broken.json"
    broken.write_text('{"constraints": [{"poly": "x +"}]}')
    assert run("reduce", broken) == 2
    assert "ParseError" in capsys.readouterr().err


def test_console_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "cubicenc.cli", "reduce",
                          str(GOLDEN / "x3y2z_input.json")],
                         capture_output=True, text=True, check=True)
    assert out.stdout == (GOLDEN / "x3y2z_reduced.json").read_text()
