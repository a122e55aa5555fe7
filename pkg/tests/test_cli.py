"""Command-line interface: outputs, formats, exit codes."""

import json

import pytest

import sumset_lab.bounds as bounds
from sumset_lab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compute_ordinary(capsys):
    code, out, _ = run_cli(
        capsys, "compute", "-A", "1..3", "-H", "1..2", "--kind", "ordinary"
    )
    assert code == 0
    assert "sumset=1..6" in out
    assert "size=6" in out
    assert "bound=6" in out
    assert "equality=yes" in out


def test_compute_singleton(capsys):
    code, out, _ = run_cli(capsys, "compute", "-A", "5", "-H", "3", "--kind", "ordinary")
    assert code == 0
    assert "sumset=15" in out and "size=1" in out and "bound=1" in out


def test_compute_json_output(capsys):
    code, out, _ = run_cli(capsys, "compute", "-A", "1,2,4", "-H", "2,3", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["a"] == "1,2,4"
    ordinary = next(r for r in payload["results"] if r["kind"] == "ordinary")
    assert ordinary["sumset"] == "2..10,12"
    assert ordinary["size"] == 10 and ordinary["bound"] == 8


def test_compute_mixed_sign_still_prints_sumset(capsys):
    # leading-dash values need the --flag=value spelling
    code, out, _ = run_cli(capsys, "compute", "--set-a=-1,2", "-H", "2", "--kind", "ordinary")
    assert code == 0
    assert "sumset=-2,1,4" in out
    assert "bound=None" in out


def test_bound_prints_formula_values_only(capsys):
    code, out, _ = run_cli(capsys, "bound", "-A", "1..5", "-H", "1,2")
    assert code == 0
    assert "ordinary: bound=10 formula=union-positive" in out
    assert "restricted: bound=9 formula=union-restricted-positive" in out
    assert "sumset" not in out


def test_check_text(capsys):
    code, out, _ = run_cli(
        capsys, "check", "-A", "2,4,6,8", "-H", "1,2", "--kind", "ordinary"
    )
    assert code == 0
    assert "equality=yes" in out and "consistent=yes" in out


def test_check_json(capsys):
    code, out, _ = run_cli(
        capsys, "check", "-A", "1,2,4", "-H", "2", "--kind", "restricted", "--json"
    )
    assert code == 0
    verdict = json.loads(out)["verdicts"][0]
    assert verdict["equality_holds"] is True
    assert verdict["nonstructured"] is True


def test_verify_text_pass(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--universe", "6", "--k", "2..3", "--hmax", "3",
        "--r", "1..3", "--zero-mode", "both", "--workers", "1",
    )
    assert code == 0
    assert "bound violations: 0" in out
    assert "result: PASS" in out


def test_verify_json_round_trips(capsys):
    code, out, err = run_cli(
        capsys, "verify", "--universe", "5", "--k", "2..3", "--hmax", "2",
        "--workers", "1", "--json",
    )
    assert code == 0
    blob = out.strip()
    assert json.dumps(json.loads(blob), separators=(",", ":")) == blob
    assert "wall time" in err  # timing goes to stderr, not into the report


def test_verify_detects_corruption_with_exit_2(capsys, monkeypatch):
    real = bounds.bound_union
    monkeypatch.setattr(bounds, "bound_union", lambda k, H, z: real(k, H, z) + 1)
    code, out, _ = run_cli(
        capsys, "verify", "--universe", "4", "--k", "2..2", "--hmax", "2",
        "--kind", "ordinary", "--workers", "1",
    )
    assert code == 2
    assert "result: FAIL" in out


def test_extremal_lists_groups(capsys):
    code, out, _ = run_cli(
        capsys, "extremal", "--universe", "12", "--k", "6..6", "--hmax", "5",
        "--r", "2..2", "--kind", "restricted", "--workers", "1", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert len(payload["groups"]) == 1
    assert len(payload["groups"][0]["cases"]) == 8


def test_parse_error_exits_1(capsys):
    code, _, err = run_cli(capsys, "compute", "-A", "oops", "-H", "1")
    assert code == 1
    assert "oops" in err


def test_invalid_range_reports_offender(capsys):
    code, _, err = run_cli(capsys, "compute", "-A", "5..1", "-H", "1")
    assert code == 1
    assert "5" in err and "1" in err


def test_usage_error_exits_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["compute", "-A", "1,2"])  # -H missing
    assert exc.value.code == 1


def test_env_var_sets_default_format(capsys, monkeypatch):
    monkeypatch.setenv("SUMSET_LAB_FORMAT", "json")
    code, out, _ = run_cli(capsys, "bound", "-A", "1..4", "-H", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["results"][0]["bound"] == 7
