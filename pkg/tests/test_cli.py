"""Command-line interface: subcommands, exit codes, report files."""

import json
import subprocess
import sys

import pytest

from tancat.cli import main

BUNDLE_TEXT = """[bundle]
base = 1
fibre = 1
sigma = x0; x1 + x2
zeta = x0; 0
lambda = 0; x1; x0; 0
"""

CORRUPT_TEXT = BUNDLE_TEXT.replace("lambda = 0; x1; x0; 0", "lambda = 0; x1; x0; x1")


@pytest.fixture
def bundle_file(tmp_path):
    path = tmp_path / "standard.ini"
    path.write_text(BUNDLE_TEXT)
    return str(path)


def test_diff_prints_canonical_derivative(capsys):
    assert main(["diff", "--expr", "x0^2*x1", "--dom", "2"]) == 0
    assert capsys.readouterr().out.strip() == "2*x0*x1*u0 + x0^2*u1"


def test_diff_infers_domain_from_indices(capsys):
    assert main(["diff", "--expr", "x0 - 1"]) == 0
    assert capsys.readouterr().out.strip() == "u0"


def test_diff_natural_mode_rejects_subtraction(capsys):
    assert main(["diff", "--expr", "x0 - 1", "--mode", "natural"]) == 2
    assert "natural" in capsys.readouterr().err


def test_check_writes_schema_valid_json(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main([
        "check", "--suite", "cdc-axioms", "--mode", "natural",
        "--seed", "1", "--instances", "5", "--out", str(out),
    ])
    assert code == 0
    data = json.loads(out.read_text())
    assert set(data) == {"suite", "params", "checks", "passed", "failed", "duration_ms"}
    assert data["suite"] == "cdc-axioms" and data["failed"] == 0
    names = [c["name"] for c in data["checks"]]
    assert names == sorted(names)
    assert "cdc-axioms" in capsys.readouterr().out


def test_check_exit_one_on_failures(capsys):
    code = main([
        "check", "--suite", "tangent-axioms", "--fault", "identity-flip",
        "--instances", "5", "--max-dim", "2",
    ])
    assert code == 1
    assert "[FAIL]" in capsys.readouterr().out


def test_check_rejects_unknown_suite(capsys):
    assert main(["check", "--suite", "nope"]) == 2


def test_check_rejects_incompatible_fault(capsys):
    assert main(["check", "--suite", "bundle", "--fault", "identity-flip"]) == 2
    assert "invalid-params" in capsys.readouterr().err


def test_bundle_verify(bundle_file, capsys):
    assert main(["bundle", "--file", bundle_file, "--op", "verify"]) == 0
    assert "passed" in capsys.readouterr().out


def test_bundle_verify_corrupt_exits_one(tmp_path, capsys):
    path = tmp_path / "bad.ini"
    path.write_text(CORRUPT_TEXT)
    assert main(["bundle", "--file", str(path), "--op", "verify"]) == 1
    assert "lambda-zeta-square" in capsys.readouterr().out


def test_bundle_tangent_prints_doubled_data(bundle_file, capsys):
    assert main(["bundle", "--file", bundle_file, "--op", "tangent"]) == 0
    out = capsys.readouterr().out
    assert "base 2, fibre 2" in out


def test_bundle_pullback_and_whitney(bundle_file, capsys):
    assert main(["bundle", "--file", bundle_file, "--op", "pullback",
                 "--map", "x0^2", "--map-dom", "1"]) == 0
    assert "base 1, fibre 1" in capsys.readouterr().out
    assert main(["bundle", "--file", bundle_file, "--op", "whitney",
                 "--file2", bundle_file]) == 0
    assert "fibre 2" in capsys.readouterr().out


def test_bundle_bracket_solves_section(bundle_file, capsys):
    assert main(["bundle", "--file", bundle_file, "--op", "bracket",
                 "--map", "0; x0^2; x0; x0", "--map-dom", "1"]) == 0
    assert capsys.readouterr().out.strip() == "x0; x0^2"


def test_bundle_bracket_rejects_bad_input(bundle_file, capsys):
    code = main(["bundle", "--file", bundle_file, "--op", "bracket",
                 "--map", "x0; x0^2; x0; x0", "--map-dom", "1"])
    assert code == 2
    assert "precondition" in capsys.readouterr().err


def test_bundle_missing_file_and_malformed_text(tmp_path, capsys):
    assert main(["bundle", "--file", str(tmp_path / "none.ini"), "--op", "verify"]) == 2
    bad = tmp_path / "broken.ini"
    bad.write_text("[nope]\n")
    assert main(["bundle", "--file", str(bad), "--op", "verify"]) == 2


def test_bundle_pullback_needs_map(bundle_file, capsys):
    assert main(["bundle", "--file", bundle_file, "--op", "pullback"]) == 2


def test_fibre_runs_tangent_axioms(capsys):
    assert main(["fibre", "--context-dim", "1", "--instances", "5"]) == 0
    assert "fibre-tangent-axioms" in capsys.readouterr().out


def test_fibre_rejects_other_suites(capsys):
    assert main(["fibre", "--context-dim", "1", "--suite", "bundle"]) == 2


def test_installed_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tancat.cli", "diff", "--expr", "x0^2", "--dom", "1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "2*x0*u0"
