import contextlib
import io
import json
import os
import re
import sys
from pathlib import Path

import pytest

from polarities.cli import main

from conftest import FIXTURES, GOLDEN

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "scripts"))
from regen_goldens import cases, run_case  # noqa: E402


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    os.chdir(FIXTURES)
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            status = main(argv)
    finally:
        os.chdir(cwd)
    return status, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name,argv", cases(), ids=[c[0] for c in cases()])
def test_golden(name, argv):
    assert run_case(argv) == (GOLDEN / f"{name}.txt").read_text()


def test_every_subcommand_has_a_golden():
    from polarities.cli import SINGLE

    used = {a for _, argv in cases() for a in argv}
    assert set(SINGLE) | {"sum"} <= used


def test_deterministic_output():
    for _, argv in cases():
        assert run_case(argv) == run_case(argv)


class TestExitCodes:
    def test_valid(self):
        assert run(["validate", "neq3.json"])[0] == 0

    def test_invalid_structure(self):
        status, out, _ = run(["validate", "le2_unstable.json"])
        assert status == 1 and "S[-,1] not stable in X: closure adds 0" in out

    def test_broken_morphism(self):
        assert run(["check-morphism", "broken_le2.json"])[0] == 1

    def test_syntax_error(self):
        status, _, err = run(["validate", "bad_syntax.json"])
        assert status == 2 and "line 3, column 16" in err

    def test_range_error(self):
        status, _, err = run(["validate", "bad_range.json"])
        assert status == 2 and "(2,0)" in err

    def test_missing_file(self):
        assert run(["validate", "missing.json"])[0] == 2

    def test_capacity(self):
        status, _, err = run(["concepts", "neq3.json", "--cap", "4"])
        assert status == 3 and err.startswith("error:")


def test_flags_before_or_after_the_subcommand():
    a = run(["--format", "json", "concepts", "neq3.json"])
    b = run(["concepts", "neq3.json", "--format", "json"])
    assert a == b and a[0] == 0
    assert json.loads(a[1])["size"] == 8


def test_json_morphism_report():
    status, out, _ = run(["check-morphism", "broken_le2.json", "--format", "json"])
    report = json.loads(out)
    assert status == 1 and report["ok"] is False
    assert [v["condition"] for v in report["verdicts"]][:3] == ["isotone_alpha", "isotone_beta", "1R"]


def test_dual_output_parses_back(tmp_path):
    status, out, _ = run(["dual", "diamond_nlo.json"])
    assert status == 0
    path = tmp_path / "canon.json"
    path.write_text(out)
    assert run(["validate", str(path)])[0] == 0


@pytest.mark.parametrize("name", ["neq3.json", "n5.json", "m3.json", "diamond_nlo.json", "le2_omega.json"])
def test_dot_has_only_cover_edges(name):
    status, out, _ = run(["export-dot", name])
    assert status == 0
    edges = {tuple(map(int, e)) for e in re.findall(r"n(\d+) -> n(\d+)", out)}
    # no edge is implied by two others
    for a, b in edges:
        assert not any((a, c) in edges and (c, b) in edges for c in {x for _, x in edges})


def test_selfcheck_small():
    status, out, _ = run(["selfcheck", "--size", "2"])
    assert status == 0 and out.strip().endswith("0 failures")
