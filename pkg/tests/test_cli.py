import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from spegion.cli import exit_code, main

PROGRAMS = Path(__file__).parent.parent / "examples" / "programs"


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


def write(tmp_path, text: str) -> Path:
    path = tmp_path / "prog.spg"
    path.write_text(text)
    return path


def test_check_accepts():
    res = run("check", PROGRAMS / "alloc_basic.spg")
    assert res.exit_code == 0
    assert "accepted: (unit, s" in res.output
    assert "effect: {fresh r1 3} x {alloc 1 r1} x {alloc 2 r1}" in res.output


def test_check_rejects_over_allocation():
    res = run("check", "--json", PROGRAMS / "sized_overflow.spg")
    assert res.exit_code == 1
    body = json.loads(res.output)
    assert body["accepted"] is False
    (diag,) = body["diagnostics"]
    assert diag["kind"] == "OverAllocation" and diag["category"] == "EffectComposition"
    assert diag["rule"] == "t-let" and set(diag["span"]) == {"line", "col", "len"}
    assert "effect" in diag


def test_check_splitting_accepts():
    assert run("check", PROGRAMS / "splitting.spg").exit_code == 0


def test_check_json_judgement():
    body = json.loads(run("check", "--json", PROGRAMS / "alloc_basic.spg").output)
    assert body["accepted"] and body["diagnostics"] == []
    assert body["judgement"]["effect_tree"]["op"] == "seq"


def test_empty_and_missing_files(tmp_path):
    res = run("check", write(tmp_path, ""))
    assert res.exit_code == 2
    res = run("check", tmp_path / "nope.spg")
    assert res.exit_code == 2


def test_parse_error_exit(tmp_path):
    res = run("check", "--json", write(tmp_path, "let x = in"))
    assert res.exit_code == 2
    assert json.loads(res.output)["diagnostics"][0]["kind"] == "ParseError"


def test_strict_figures_flag():
    path = PROGRAMS / "neg_alloc_into_freed.spg"
    assert run("check", path).exit_code == 1
    assert run("check", "--strict-figures", path).exit_code == 0


def test_run_recursion_prints_zero():
    res = run("run", PROGRAMS / "recursion.spg")
    assert res.exit_code == 0
    assert res.output.splitlines()[0] == "0"
    assert "store:" in res.output


def test_run_json():
    body = json.loads(run("run", "--json", PROGRAMS / "splitting.spg").output)
    assert body["value"] == "1"
    assert "glob" in body["store"]


def test_run_refuses_rejected_program():
    res = run("run", PROGRAMS / "use_after_free.spg")
    assert res.exit_code == 1
    assert "RegionNotLive" in res.output


def test_run_unsafe_stuck(tmp_path):
    path = write(tmp_path, "let r = newrgn [4] in let v = 1 [1] at glob in\n"
                           "(fun (z : (int, glob)) -> v) [1] at r")
    assert run("run", path).exit_code == 1
    res = run("run", "--unsafe", path)
    assert res.exit_code == 1
    assert "AnnotationTooSmall" in res.output


def test_run_fuel(tmp_path, monkeypatch):
    path = write(tmp_path, "letrec f {a, r, e} (n : (int, glob)) : (unit, glob) =\n"
                           "  (f @ (int, glob) n) [w] at glob\n"
                           "in f @ (int, glob) (0 [1] at glob)")
    res = run("run", "--fuel", 20, path)
    assert res.exit_code == 1 and "OutOfFuel" in res.output
    monkeypatch.setenv("SPEGION_FUEL", "15")
    res = run("run", path)
    assert "15 steps" in res.output


def test_trace_newrgn(tmp_path):
    res = run("trace", write(tmp_path, "newrgn [4]"))
    assert res.exit_code == 0
    lines = [json.loads(l) for l in res.output.splitlines()]
    assert len(lines) == 2
    assert lines[0]["rule"] == "e-newrgn"
    assert lines[1]["outcome"] == "value" and lines[1]["value"] == "()"


def test_soundness_command(tmp_path):
    report = tmp_path / "report.json"
    res = run("soundness", "--depth", 1, "--seeds", 5, "--corpus", PROGRAMS, "--report", report)
    assert res.exit_code == 0
    assert "counterexamples 0" in res.output
    body = json.loads(report.read_text())
    assert set(body) >= {"checked", "passed", "counterexamples"}
    assert body["checked"] == body["passed"] > 0


@pytest.mark.parametrize("diags,code", [
    ([], 0),
    ([{"kind": "OverAllocation", "rule": "t-val"}], 1),
    ([{"kind": "ParseError", "rule": "parse"}], 2),
    ([{"kind": "RecursionError", "rule": "internal"}], 2),
])
def test_exit_code_is_a_function_of_diagnostics(diags, code):
    assert exit_code(diags) == code
