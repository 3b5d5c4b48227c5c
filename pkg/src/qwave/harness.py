"""Command-line front end: configuration, suite orchestration and reports.

    python3 -m qwave --n 2 --max-degree 3 --suite covariance --l 1 --l 2
    python3 -m qwave --suite positivity --lambda 1 --lambda 2 --output text

Exact suites take integer lambda values or "sym" (symbolic u = q^lambda);
non-integer values are used only by the numeric positivity scan.  Suites
run one after another in canonical order and cases are sorted by id, so a
report depends only on its configuration.  Wall time is left out unless
--timing is given, to keep repeated runs byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .report import FAIL, PASS, POLE

SUITES = (
    "algebra",
    "action",
    "calculus",
    "covariance",
    "milne",
    "coefficients",
    "forms",
    "positivity",
    "quotient",
)


class ConfigError(ValueError):
    pass


def parse_lambda(text):
    """ "sym" stays symbolic; integral values become int, others float."""
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        v = text
    else:
        t = str(text).strip().lower()
        if t in ("sym", "u"):
            return "sym"
        try:
            v = float(t)
        except ValueError:
            raise ConfigError(f"lambda must be a number or 'sym', got {text!r}") from None
    if v != v or v in (float("inf"), float("-inf")):
        raise ConfigError(f"lambda must be finite, got {text!r}")
    return int(v) if float(v).is_integer() else float(v)


@dataclass
class SuiteConfig:
    n: int = 2
    max_degree: int = 3
    l: tuple = (1,)
    lambdas: tuple = ("sym",)
    q: float = 0.5
    suites: tuple = SUITES
    output: str = "json"
    timing: bool = False
    csv_dir: str | None = None

    def validate(self) -> "SuiteConfig":
        if not isinstance(self.n, int) or self.n < 1:
            raise ConfigError(f"n must be an integer >= 1, got {self.n!r}")
        if not isinstance(self.max_degree, int) or self.max_degree < 0:
            raise ConfigError(f"max-degree must be an integer >= 0, got {self.max_degree!r}")
        if not self.l or any(not isinstance(x, int) or x < 1 for x in self.l):
            raise ConfigError(f"l values must be integers >= 1, got {list(self.l)!r}")
        if not (0.0 < self.q < 1.0):
            raise ConfigError(f"q must lie in (0, 1), got {self.q!r}")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suite(s) {unknown}; choose from {', '.join(SUITES)}")
        if not self.suites:
            raise ConfigError("no suites selected")
        if self.output not in ("json", "text"):
            raise ConfigError(f"output must be json or text, got {self.output!r}")
        self.lambdas = tuple(parse_lambda(x) for x in self.lambdas)
        if not self.lambdas:
            raise ConfigError("at least one lambda value is required")
        # canonical, duplicate-free orderings keep reports stable
        self.suites = tuple(s for s in SUITES if s in self.suites)
        self.l = tuple(sorted(set(self.l)))
        return self

    def exact_lambdas(self) -> list:
        return [x for x in self.lambdas if x == "sym" or isinstance(x, int)]

    def numeric_lambdas(self) -> list:
        vals = [x for x in self.lambdas if x != "sym"]
        if not vals:
            n = self.n
            vals = [n - 1, n - 0.75, n - 0.5, n, n + 1]
        return [int(v) if float(v).is_integer() else v for v in vals]


@dataclass
class Report:
    suite: str
    params: dict
    cases: list = field(default_factory=list)
    elapsed_ms: float | None = None

    @property
    def summary(self) -> dict:
        out = {PASS: 0, FAIL: 0, POLE: 0}
        for c in self.cases:
            out[c.status] += 1
        return out

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "cases": [c.to_json() for c in self.cases],
            "summary": self.summary,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_text(self) -> str:
        s = self.summary
        lines = [f"{self.suite}: pass {s[PASS]}  fail {s[FAIL]}  pole {s[POLE]}"]
        if self.elapsed_ms is not None:
            lines[0] += f"  ({self.elapsed_ms:.0f} ms)"
        for c in self.cases:
            if c.status != PASS:
                lines.append(f"  {c.status.upper():4s} {c.id}" + (f"  [{c.witness}]" if c.witness else ""))
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# suites


def _suite_algebra(cfg):
    from .qmatrix import verify_confluence, verify_pbw, verify_structure

    return verify_pbw(cfg.n, cfg.max_degree) + verify_confluence(cfg.n) + verify_structure(cfg.n)


def _suite_action(cfg):
    from .uqaction import INITIAL, twisted, verify_grading, verify_hopf_relations

    cases = [
        c.__class__(f"initial {c.id}", c.status, c.witness)
        for c in verify_hopf_relations(cfg.n, INITIAL, cfg.max_degree)
    ]
    for lam in cfg.exact_lambdas():
        for c in verify_hopf_relations(cfg.n, twisted(lam), cfg.max_degree):
            cases.append(c.__class__(f"pi_{lam} {c.id}", c.status, c.witness))
    return cases + verify_grading(cfg.n, cfg.max_degree)


def _suite_calculus(cfg):
    from .qcalculus import verify_box_symmetries, verify_round_trip, verify_upsilon

    return (
        verify_round_trip(cfg.n)
        + verify_upsilon(cfg.n, cfg.max_degree)
        + verify_box_symmetries(cfg.n, cfg.max_degree)
    )


def _suite_covariance(cfg):
    from .forms import verify_covariance

    cases = []
    for l in cfg.l:
        cases += verify_covariance(cfg.n, l, cfg.max_degree)
    return cases


def _suite_milne(cfg):
    from .symfunc import verify_milne

    return verify_milne(cfg.n, cfg.max_degree)


def _suite_coefficients(cfg):
    from .coeffs import ONE, Q, q_pochhammer
    from .report import check
    from .symfunc import c_coeff, fk_constant, partitions_upto, verify_kernel_coeffs

    n = cfg.n
    cases = verify_kernel_coeffs(n, cfg.max_degree)
    for k in partitions_upto(cfg.max_degree, n):
        cases.append(check(f"c_coeff N=n k={tuple(k)}", c_coeff(k, n, n) == ONE, str(c_coeff(k, n, n))))
        shilov = ONE
        for i in range(1, n + 1):
            shilov = shilov * q_pochhammer(2 * n + 2 - 2 * i, k[i - 1])
        shilov = shilov / (ONE - Q * Q) ** k.size
        cases.append(
            check(
                f"fk_constant lam=n k={tuple(k)}", fk_constant(k, n, n) == shilov, str(fk_constant(k, n, n))
            )
        )
        limit = fk_constant(k, "sym", n).subs_u(ONE - ONE)
        cases.append(check(f"fk_constant u->0 k={tuple(k)}", limit == (ONE - Q * Q) ** (-k.size), str(limit)))
    return cases


def _suite_forms(cfg):
    from .forms import (
        verify_component_ratios,
        verify_fock_properties,
        verify_form_invariance,
    )
    from .uqaction import INITIAL, generators, twisted

    n, D = cfg.n, cfg.max_degree
    cases = verify_fock_properties(n, D) + verify_component_ratios(n, D, cfg.exact_lambdas())
    restricted = [g for g in generators(n) if g.i != n or g.kind in ("K", "Kinv")]
    cases += verify_form_invariance("fock", INITIAL, n, D, gens=restricted)
    # symbolic u covers every lambda away from the poles
    return cases + verify_form_invariance("lambda", twisted("sym"), n, D)


def _suite_positivity(cfg):
    from .forms import positivity_scan

    return positivity_scan(cfg.n, cfg.max_degree, cfg.q, cfg.numeric_lambdas())


def _suite_quotient(cfg):
    from .forms import box_kernel_analysis

    cases = []
    for l in cfg.l:
        cases += [
            c.__class__(f"l={l} {c.id}", c.status, c.witness)
            for c in box_kernel_analysis(cfg.n, l, cfg.max_degree)
        ]
    return cases


_RUNNERS = {
    "algebra": _suite_algebra,
    "action": _suite_action,
    "calculus": _suite_calculus,
    "covariance": _suite_covariance,
    "milne": _suite_milne,
    "coefficients": _suite_coefficients,
    "forms": _suite_forms,
    "positivity": _suite_positivity,
    "quotient": _suite_quotient,
}


def _params(cfg, suite) -> dict:
    p = {"n": cfg.n, "max_degree": cfg.max_degree}
    if suite in ("covariance", "quotient"):
        p["l"] = list(cfg.l)
    if suite in ("action", "forms"):
        p["lambda"] = [str(x) for x in cfg.exact_lambdas()]
    if suite == "positivity":
        p["lambda"] = [str(x) for x in cfg.numeric_lambdas()]
        p["q"] = cfg.q
    return p


def run(cfg: SuiteConfig) -> list:
    cfg.validate()
    reports = []
    for suite in cfg.suites:
        t0 = time.perf_counter()
        cases = sorted(_RUNNERS[suite](cfg), key=lambda c: c.id)
        elapsed = round((time.perf_counter() - t0) * 1000.0, 1) if cfg.timing else None
        reports.append(Report(suite, _params(cfg, suite), cases, elapsed))
    if cfg.csv_dir:
        export_csv(cfg)
    return reports


def export_csv(cfg: SuiteConfig) -> None:
    """Kernel coefficient table and per-degree Fock Gram matrices (exact and numeric)."""
    from .forms import monomial_gram
    from .symfunc import kernel_schur_coeffs, write_coefficients_csv

    out = Path(cfg.csv_dir)
    out.mkdir(parents=True, exist_ok=True)
    n, D = cfg.n, cfg.max_degree
    write_coefficients_csv(kernel_schur_coeffs(n, n, D), out / f"kernel_coeffs_n{n}_N{n}.csv")
    lam = next((x for x in cfg.exact_lambdas() if x != "sym"), n)
    for d in range(D + 1):
        g = monomial_gram(n, d, "fock")
        g.write_csv(out / f"gram_fock_n{n}_d{d}.csv")
        g.write_csv(out / f"gram_fock_n{n}_d{d}_q{cfg.q}.csv", q_val=cfg.q)
        try:
            gl = monomial_gram(n, d, "lambda", lam)
        except ArithmeticError:
            continue
        gl.write_csv(out / f"gram_lambda{lam}_n{n}_d{d}.csv")
        gl.write_csv(out / f"gram_lambda{lam}_n{n}_d{d}_q{cfg.q}.csv", q_val=cfg.q, lambda_val=lam)


def render(reports, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([r.to_json() for r in reports], indent=2, sort_keys=False) + "\n"
    return "\n".join(r.to_text() for r in reports) + "\n"


def exit_status(reports) -> int:
    return 1 if any(r.summary[FAIL] for r in reports) else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qwave", description="Exact verification suites for C[M_n]_q and U_q sl_2n."
    )
    ap.add_argument("--n", type=int, default=2, help="matrix size (default 2)")
    ap.add_argument(
        "--max-degree", type=int, default=3, help="degree bound D of the monomial basis (default 3)"
    )
    ap.add_argument("--l", type=int, action="append", help="power of box_q; repeatable (default 1)")
    ap.add_argument("--lambda", dest="lambdas", action="append", help="lambda value or 'sym'; repeatable")
    ap.add_argument("--q", type=float, default=0.5, help="numeric q for positivity scans (default 0.5)")
    ap.add_argument("--suite", dest="suites", action="append", help=f"one of {', '.join(SUITES)}; repeatable")
    ap.add_argument("--output", default="json", help="json or text (default json)")
    ap.add_argument("--out", help="write the report to FILE instead of stdout")
    ap.add_argument("--csv", dest="csv_dir", help="also export coefficient tables and Gram matrices to DIR")
    ap.add_argument("--timing", action="store_true", help="record wall time in elapsed_ms")
    return ap


def config_from_args(args) -> SuiteConfig:
    return SuiteConfig(
        n=args.n,
        max_degree=args.max_degree,
        l=tuple(args.l or (1,)),
        lambdas=tuple(args.lambdas or ("sym",)),
        q=args.q,
        suites=tuple(args.suites or SUITES),
        output=args.output,
        timing=args.timing,
        csv_dir=args.csv_dir,
    ).validate()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ConfigError as exc:
        print(f"qwave: configuration error: {exc}", file=sys.stderr)
        return 2
    reports = run(cfg)
    text = render(reports, cfg.output)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return exit_status(reports)


__all__ = ["ConfigError", "Report", "SUITES", "SuiteConfig", "main", "run"]
