import json
import subprocess
import sys

import pytest

from qwave.harness import (
    SUITES,
    ConfigError,
    SuiteConfig,
    exit_status,
    main,
    parse_lambda,
    render,
    run,
)


def cli(*args):
    return subprocess.run([sys.executable, "-m", "qwave", *args], capture_output=True, text=True)


def test_parse_lambda():
    assert parse_lambda("sym") == "sym"
    assert parse_lambda("2") == 2
    assert parse_lambda("1.25") == 1.25
    with pytest.raises(ConfigError):
        parse_lambda("abc")
    with pytest.raises(ConfigError):
        parse_lambda("nan")


@pytest.mark.parametrize(
    "kw",
    [
        {"n": 0},
        {"max_degree": -1},
        {"q": 1.0},
        {"q": 0.0},
        {"suites": ("nope",)},
        {"l": (0,)},
        {"output": "xml"},
    ],
)
def test_config_errors(kw):
    with pytest.raises(ConfigError):
        SuiteConfig(**kw).validate()


def test_algebra_suite():
    (rep,) = run(SuiteConfig(n=2, max_degree=3, suites=("algebra",)))
    assert rep.summary == {"pass": len(rep.cases), "fail": 0, "pole": 0}


def test_covariance_suite():
    (rep,) = run(SuiteConfig(n=2, max_degree=4, l=(1,), suites=("covariance",)))
    assert rep.summary["fail"] == 0 and rep.summary["pass"] == 12


def test_positivity_suite_pole_does_not_fail():
    reps = run(SuiteConfig(n=2, max_degree=2, suites=("positivity",), lambdas=(1, 2), q=0.5))
    ids = {c.id: c.status for c in reps[0].cases}
    assert ids["lam=1 k=(1, 1)"] == "pole"
    assert ids["lam=2 k=(1, 1)"] == "pass"
    assert exit_status(reps) == 0


def test_json_schema_and_determinism():
    cfg = dict(n=2, max_degree=2, suites=("milne", "quotient"))
    a = render(run(SuiteConfig(**cfg)), "json")
    b = render(run(SuiteConfig(**cfg)), "json")
    assert a == b
    data = json.loads(a)
    assert [r["suite"] for r in data] == ["milne", "quotient"]
    for r in data:
        assert set(r) == {"suite", "params", "cases", "summary", "elapsed_ms"}
        assert set(r["summary"]) == {"pass", "fail", "pole"}
        assert all(set(c) == {"id", "status", "witness"} for c in r["cases"])
        assert [c["id"] for c in r["cases"]] == sorted(c["id"] for c in r["cases"])


def test_cli_text_and_out(tmp_path):
    out = tmp_path / "r.json"
    res = cli("--suite", "algebra", "--suite", "calculus", "--max-degree", "2", "--out", str(out))
    assert res.returncode == 0 and res.stdout == ""
    assert [r["suite"] for r in json.loads(out.read_text())] == ["algebra", "calculus"]
    res = cli("--suite", "milne", "--output", "text")
    assert res.returncode == 0 and res.stdout.startswith("milne: pass")


def test_cli_config_error():
    res = cli("--q", "1.5")
    assert res.returncode == 2 and "q must lie in (0, 1)" in res.stderr
    res = cli("--suite", "bogus")
    assert res.returncode == 2


def test_cli_deterministic_bytes():
    a = cli("--suite", "coefficients", "--max-degree", "2")
    b = cli("--suite", "coefficients", "--max-degree", "2")
    assert a.stdout == b.stdout and a.returncode == 0


def test_exit_status_flips_on_failure(monkeypatch):
    from qwave import harness
    from qwave.report import Case

    monkeypatch.setitem(harness._RUNNERS, "milne", lambda cfg: [Case("x", "fail", "w"), Case("y", "pole")])
    assert main(["--suite", "milne"]) == 1
    monkeypatch.setitem(harness._RUNNERS, "milne", lambda cfg: [Case("y", "pole")])
    assert main(["--suite", "milne"]) == 0


def test_csv_export(tmp_path):
    run(SuiteConfig(n=2, max_degree=2, suites=("milne",), lambdas=(3,), csv_dir=str(tmp_path)))
    names = sorted(p.name for p in tmp_path.iterdir())
    assert "kernel_coeffs_n2_N2.csv" in names
    assert "gram_fock_n2_d2.csv" in names and "gram_lambda3_n2_d2_q0.5.csv" in names


def test_all_suites_listed():
    assert len(SUITES) == 9
