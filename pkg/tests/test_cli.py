import json

import pytest

from multiloop import cli
from multiloop.algebra import parse_polynomial
from multiloop.coulomb import EtaleChart
from multiloop.report import (
    GOLDEN_ENV,
    CheckReport,
    ConfigError,
    SuiteConfig,
    default_golden_dir,
    emit_report,
    expand,
    run_suite,
    suite_passed,
)


def test_empty_report_is_empty_array():
    assert emit_report([], "json") == b"[]\n"


def test_one_passing_record():
    out = json.loads(emit_report([CheckReport("starlet", {"r": 2}, "pass")], "json"))
    assert len(out) == 1 and out[0]["status"] == "pass" and out[0]["schema"] == 1


def test_fail_requires_witness():
    with pytest.raises(ValueError):
        CheckReport("starlet", {"r": 2}, "fail")


def test_failing_mutation_carries_canonical_residual():
    config = SuiteConfig(r_min=2, r_max=2, checks=("starlet",), negative_controls=True)
    reports = run_suite(config)
    failing = [rep for rep in reports if rep.status == "fail"]
    assert {json.dumps(rep.params, sort_keys=True) for rep in failing} == {
        json.dumps(p, sort_keys=True) for p in [
            {"r": 2, "mutation": m} for m in ("x1", "x2", "y1", "y2")] + [{"r": 2, "exponent": 1}, {"r": 2, "exponent": 3}]}
    ring = EtaleChart(2).ring
    for rep in failing:
        assert not parse_polynomial(ring, rep.witness.split(" / ")[0].strip("()")).is_zero()


def test_invalid_configs():
    with pytest.raises(ConfigError):
        SuiteConfig(r_min=3, r_max=2)
    with pytest.raises(ConfigError):
        SuiteConfig(checks=("nope",))
    with pytest.raises(ConfigError):
        SuiteConfig(truncate=-1)


def test_slice_checks_skip_r1():
    jobs = expand(SuiteConfig(r_min=1, r_max=2, checks=("slice",)))
    assert [(name, p["r"], preset) for name, p, preset in jobs] == [("slice", 1, "skipped"), ("slice", 2, None)]


def test_default_suite_passes_and_is_deterministic():
    config = SuiteConfig(truncate=20)
    a = run_suite(config)
    assert suite_passed(a)
    b = run_suite(SuiteConfig(truncate=20, jobs=2))
    assert emit_report(a, "json") == emit_report(b, "json")


def test_hanany_stated_fails():
    reports = run_suite(SuiteConfig(r_min=2, r_max=2, checks=("hanany-stated",)))
    assert [rep.status for rep in reports] == ["fail"]


def test_golden_mismatch_is_failure(tmp_path):
    (tmp_path / "trace-r2.json").write_text('{"alpha_1": "-2"}')
    reports = run_suite(SuiteConfig(r_min=2, r_max=2, checks=("trace",), golden_dir=tmp_path))
    assert reports[0].status == "fail" and "golden mismatch" in reports[0].witness


def test_bless_then_enforce(tmp_path):
    config = SuiteConfig(r_min=2, r_max=3, checks=("trace", "poisson"), golden_dir=tmp_path, bless=True)
    run_suite(config)
    assert json.loads((tmp_path / "trace-r3.json").read_text()) == {"alpha_1": "-1/10", "alpha_2": "-91/600"}
    assert suite_passed(run_suite(SuiteConfig(r_min=2, r_max=3, checks=("trace", "poisson"), golden_dir=tmp_path)))


def test_packaged_golden_files_present():
    d = default_golden_dir()
    assert json.loads((d / "poisson-r2.json").read_text()) == {"{x1,y1}": "-16*x2*y2 + 4*w^2"}
    assert json.loads((d / "hanany-r3.json").read_text())["constant"] == "1/32"


def test_golden_env(monkeypatch, tmp_path):
    monkeypatch.setenv(GOLDEN_ENV, str(tmp_path))
    assert default_golden_dir() == tmp_path


# --- command line ------------------------------------------------------------------

def test_cli_verify_json(capsysbinary):
    assert cli.main(["verify", "--r", "2", "--checks", "starlet,redundancy", "--json"]) == 0
    out = json.loads(capsysbinary.readouterr().out)
    assert [rec["check"] for rec in out] == ["redundancy", "starlet"]


def test_cli_negative_controls_exit_1(capsysbinary):
    assert cli.main(["--json", "verify", "--r", "2", "--checks", "starlet", "--negative-controls"]) == 1


def test_cli_usage_errors(capsys):
    assert cli.main(["verify", "--checks", "bogus"]) == 2
    assert cli.main(["verify", "--r", "4..2"]) == 2
    assert cli.main(["nonsense"]) == 2
    assert cli.main(["slice", "--r", "1"]) == 2


def test_cli_hilbert(capsysbinary):
    assert cli.main(["hilbert", "--rank", "2", "--loops", "2", "--truncate", "3", "--format", "json"]) == 0
    rec = json.loads(capsysbinary.readouterr().out)
    assert rec["series"] == [1, 0, 3, 2] and rec["matches"]


def test_cli_hilbert_gl3_reports_obstruction(capsysbinary):
    assert cli.main(["hilbert", "--rank", "3", "--loops", "3", "-D", "14"]) == 0
    out = capsysbinary.readouterr().out.decode()
    assert "coefficient 2 at t^11" in out


def test_cli_slice_emit(tmp_path, capsysbinary):
    path = tmp_path / "rel.txt"
    assert cli.main(["slice", "--r", "2", "--emit-relation", str(path)]) == 0
    assert path.read_text().strip() == "x1^2*y2 + x1*y1*w - 16*x2^2*y2^2 + x2*y1^2 + 8*x2*y2*w^2 - w^4"


def test_cli_coulomb_bracket(tmp_path, capsysbinary):
    path = tmp_path / "br.txt"
    assert cli.main(["coulomb", "--r", "3", "--checks", "relation", "--emit-bracket", "x1y1", str(path)]) == 0
    assert path.read_text().strip() == "96*x2^2*y2^2 - 48*x2*y2*w^2 + 6*w^4"


def test_config_file_and_flag_precedence(tmp_path, capsysbinary):
    cfg = tmp_path / "suite.cfg"
    cfg.write_text("r = 2\nchecks = starlet, hanany-stated  # literal rescaling\njson = yes\n")
    assert cli.main(["verify", "--config", str(cfg)]) == 1
    capsysbinary.readouterr()
    assert cli.main(["verify", "--config", str(cfg), "--checks", "starlet"]) == 0
    out = json.loads(capsysbinary.readouterr().out)
    assert [rec["check"] for rec in out] == ["starlet"]


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert cli.main(["verify", "--config", str(cfg)]) == 2


def test_parse_r_range():
    assert cli.parse_r_range("3") == (3, 3)
    assert cli.parse_r_range("2..4") == (2, 4)
