from __future__ import annotations

import json
from pathlib import Path

import pytest

from mapspace import report as R
from mapspace.cli import main

jsonschema = pytest.importorskip("jsonschema")

MODELS = Path(__file__).resolve().parent.parent / "demos" / "models"


def run(capsys, *argv) -> tuple[int, str, str]:
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv) -> tuple[int, dict]:
    code, out, _ = run(capsys, *argv, "--format", "json")
    rep = json.loads(out) if out else None
    if rep is not None:
        jsonschema.validate(rep, R.load_schema())
    return code, rep


def test_map_model_minimal(capsys):
    code, rep = run_json(capsys, "map-model", MODELS / "cp2_into_s6.model", "--x", "CP2", "--y", "S6",
                         "--minimal")
    assert code == 0 and rep["status"] == "ok"
    gens = rep["result"]["minimal_model"]["generators"]
    assert sorted(g["degree"] for g in gens) == [2, 4, 7, 9]
    (g7,) = [g for g in gens if g["degree"] == 7]
    assert [t["coef"] for t in g7["differential"]["terms"]] == ["-2"]


def test_split_check_strict_exit_code(capsys):
    path = MODELS / "cp2_into_s6.model"
    code, rep = run_json(capsys, "split-check", path, "--y", "S6")
    assert code == 0 and rep["result"]["verdict"] == "HypothesisFails"
    assert "certificate" in rep["result"]
    code, _ = run_json(capsys, "split-check", path, "--y", "S6", "--strict")
    assert code == 1


def test_split_check_splits(capsys):
    code, rep = run_json(capsys, "split-check", MODELS / "cp2_into_triple.model", "--strict")
    assert code == 0 and rep["result"]["verdict"] == "Splits"
    assert all(c["passed"] for c in rep["result"]["witness"]["checks"])


def test_longer_bracket_splits(capsys):
    code, rep = run_json(capsys, "split-check", MODELS / "triple_bracket.model", "--attach", "e5",
                         "--y", "S6")
    assert code == 0
    assert rep["result"]["verdict"] == "Splits"
    assert (rep["result"]["bracket_length"], rep["result"]["whitehead_length"]) == (2, 1)


def test_mixed_bracket_lengths_exit_two(capsys):
    code, out, err = run(capsys, "split-check", MODELS / "triple_bracket.model", "--attach", "mixed",
                         "--y", "S6")
    assert code == 2 and out == ""
    assert "bracket length" in err


def test_decompose(capsys):
    code, rep = run_json(capsys, "decompose", MODELS / "two_cp2_into_cayley.model", "--strict")
    assert code == 0 and rep["result"]["splits"]
    assert rep["result"]["homotopy_ranks"] == {"4": 3, "6": 2, "19": 3, "21": 2}


def test_analyze_all_blocks(capsys):
    code, rep = run_json(capsys, "analyze", MODELS / "cp2_into_s6.model")
    assert code == 0
    s6 = rep["result"]["blocks"]["S6"]
    assert s6["d1_depth"] == s6["whitehead_length"] == 1
    assert s6["d_length"] == 2


def test_text_output(capsys):
    code, out, err = run(capsys, "analyze", MODELS / "cp2_into_s6.model", "S6")
    assert code == 0 and out.startswith("analyze: ok")
    assert err == ""


def test_json_is_byte_identical_across_runs(capsys):
    argv = ("map-model", MODELS / "cp2_into_s6.model", "--x", "CP2", "--y", "S6", "--minimal")
    _, a = run_json(capsys, *argv)
    _, b = run_json(capsys, *argv)
    assert R.to_json(R.stable_view(a)) == R.to_json(R.stable_view(b))


def test_out_file_and_warnings_on_stderr(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, stdout, err = run(capsys, "analyze", MODELS / "cp2_into_s6.model", "S6", "--cap", "8",
                            "--format", "json", "--out", out)
    assert code == 0 and stdout == ""
    assert "warning" in err
    rep = json.loads(out.read_text())
    assert rep["warnings"]
    jsonschema.validate(rep, R.load_schema())


def test_cap_too_small_exit_two(capsys):
    code, out, err = run(capsys, "map-model", MODELS / "cp2_into_s6.model", "--x", "CP2", "--y", "S6",
                         "--cap", "4")
    assert code == 2 and "cap" in err


def test_parse_error_exit_two(capsys, tmp_path):
    p = tmp_path / "bad.model"
    p.write_text("sullivan A { gen x 2; d x = [x,x; }\n")
    code, _, err = run(capsys, "analyze", p)
    assert code == 2
    assert f"{p}:1:" in err


def test_missing_file_exit_two(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", tmp_path / "nope.model")
    assert code == 2 and "cannot read" in err


def test_connectivity_error_exit_two(capsys, tmp_path):
    p = tmp_path / "low.model"
    p.write_text("sullivan S4 { gen x 4; gen y 7; d y = x*x; }\nlie CP2 { gen i 1; gen w 3; d w = [i,i]; }\n")
    code, _, err = run(capsys, "map-model", p)
    assert code == 2 and "connect" in err


def test_ambiguous_block_exit_two(capsys):
    code, _, err = run(capsys, "map-model", MODELS / "cp2_into_s6.model", "--y", "S6")
    assert code == 2 and "specify" in err


def test_selftest_subset(capsys):
    code, rep = run_json(capsys, "selftest", "--only", "parse-print-round-trip", "--only", "lie-identities")
    assert code == 0
    assert rep["result"]["passed"] == 2 and rep["result"]["failed"] == 0


def test_selftest_low_cap_skips(capsys):
    code, rep = run_json(capsys, "selftest", "--only", "cp2-into-s6-minimal-model", "--cap", "6")
    assert code == 0
    assert rep["result"]["skipped"] == 1 and rep["warnings"]


def test_version(capsys):
    with pytest.raises(SystemExit) as e:
        main(["--version"])
    assert e.value.code == 0
    assert "mapspace" in capsys.readouterr().out


def test_module_entry_point():
    import subprocess
    import sys
    r = subprocess.run([sys.executable, "-m", "mapspace", "analyze", str(MODELS / "cp2_into_s6.model"), "S6"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and "analyze: ok" in r.stdout
