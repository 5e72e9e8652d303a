import json
import os
import subprocess
import sys

import pytest

from symcoh.cli import run_cli
from symcoh.io import render_json


def _json(argv):
    code, out, err = run_cli(argv + ["--format", "json"])
    assert code == 0, err
    assert render_json(json.loads(out)) == out
    return json.loads(out)


def test_cohomology_z3():
    doc = _json(["cohomology", "--group", "cyclic:3", "--module", "trivial:3", "--degree", "3",
                 "--flavor", "classical"])
    assert doc["invariants"] == [3] and doc["order"] == 3


def test_cohomology_degree_zero_is_invariants():
    assert _json(["cohomology", "--group", "s3", "--module", "sign:3", "--degree", "0",
                  "--flavor", "symmetric"])["invariants"] == []
    assert _json(["cohomology", "--group", "s3", "--module", "trivial:3", "--degree", "0",
                  "--flavor", "symmetric"])["invariants"] == [3]


def test_cohomology_text_and_representatives():
    code, out, _ = run_cli(["cohomology", "--group", "cyclic:2", "--module", "trivial:2", "--degree", "2",
                            "--representatives"])
    assert code == 0
    assert out.startswith("H^2_classical(") and "Z/2" in out and "generator 0" in out


def test_malformed_group_file(tmp_path):
    p = tmp_path / "g.json"
    p.write_text('{"table": [[0, 1], [1, 1]]}')
    code, _, err = run_cli(["cohomology", "--group", str(p), "--module", "trivial:2", "--degree", "1"])
    assert code == 2 and "$.table" in err


def test_invalid_json_inline():
    code, _, err = run_cli(["cohomology", "--group", "{nope", "--module", "trivial:2", "--degree", "1"])
    assert code == 2 and "malformed" in err


def test_compare_alpha():
    assert _json(["compare", "--group", "cyclic:3", "--module", "trivial:3", "--degree", "1",
                  "--source", "symmetric", "--target", "classical"])["verdict"] == "bijective"
    doc = _json(["compare", "--group", "cyclic:4", "--module", "trivial:2", "--degree", "2",
                 "--source", "symmetric", "--target", "classical"])
    assert doc["injective"]
    code, _, _ = run_cli(["compare", "--group", "cyclic:3", "--module", "trivial:3", "--degree", "1",
                          "--source", "symmetric", "--target", "exterior"])
    assert code == 2


def test_size_guard_exit():
    code, _, err = run_cli(["cohomology", "--group", "cyclic:9", "--module", "trivial:3", "--degree", "3",
                            "--max-cells", "50"])
    assert code == 3 and "size guard" in err


def test_budget_exit(fixtures_path):
    code, _, _ = run_cli(["xmod", "find-symmetric-section", os.path.join(fixtures_path, "X9.json"), "--budget", "0"])
    assert code == 3


def test_xmod_verify(fixtures_path):
    doc = _json(["xmod", "verify", os.path.join(fixtures_path, "X9.json")])
    assert doc["valid"] and doc["orders"] == {"G": 3, "M": 3, "R": 9, "T": 9}


def test_xmod_split_check(fixtures_path):
    assert _json(["xmod", "split-check", os.path.join(fixtures_path, "trivial.json")])["splits"]
    assert not _json(["xmod", "split-check", os.path.join(fixtures_path, "nonsplit_Z3.json")])["splits"]


def test_xmod_missing_file(tmp_path):
    code, _, err = run_cli(["xmod", "verify", str(tmp_path / "none.json")])
    assert code == 2 and "no such file" in err


@pytest.mark.parametrize("name", ["X9", "X25", "nonsplit_Z3", "trivial"])
def test_theorem_through_files(fixtures_path, tmp_path, name):
    path = os.path.join(fixtures_path, name + ".json")
    found = _json(["xmod", "find-symmetric-section", path])["found"]
    cocycle = tmp_path / "f.json"
    code, out, _ = run_cli(["xmod", "cocycle", path, "--section", "weak", "--format", "json"])
    cocycle.write_text(out)
    assert _json(["class-in-image-alpha3", str(cocycle)])["in_image"] == found


def test_pipe_between_processes(fixtures_path):
    path = os.path.join(fixtures_path, "nonsplit_Z3.json")
    first = subprocess.run([sys.executable, "-m", "symcoh.cli", "xmod", "cocycle", path, "--format", "json"],
                           capture_output=True, text=True, check=True)
    second = subprocess.run([sys.executable, "-m", "symcoh.cli", "class-in-image-alpha3", "-", "--format", "json"],
                            input=first.stdout, capture_output=True, text=True, check=True)
    assert json.loads(second.stdout) == {"in_image": False}


def test_x4_out_of_scope_text(fixtures_path):
    code, out, _ = run_cli(["xmod", "find-symmetric-section", os.path.join(fixtures_path, "X4.json")])
    assert code == 0 and "outside the theorem's hypotheses" in out


def test_x4_weak_cocycle_is_validation_error(fixtures_path):
    code, _, err = run_cli(["xmod", "cocycle", os.path.join(fixtures_path, "X4.json"), "--section", "weak"])
    assert code == 2 and "element 1 of Z2 has order 2" in err


def test_suite_only_text():
    code, out, _ = run_cli(["suite", "--only", "algebra.census_pairing"])
    assert code == 0 and "1 passed, 0 failed" in out
