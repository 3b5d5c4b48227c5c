"""Invariant forms on C[M_n]_q: the q-Fock form, the bracket and the lambda family.

The Fock form is defined by (1, 1) = 1 and the adjunction
(d f1 / d z_x, f2) = (f1, f2 z_x); on a normal-ordered monomial
f2 = z_{x1} ... z_{xk} it is the constant term of d_{x1} ... d_{xk} f1.
The lambda-form is the Fock form divided, component by component, by the
constant fk_constant(k, lambda).  Coefficients are real, so every form is
bilinear and linear in the first argument.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .coeffs import ONE, ZERO, PoleAtPoint, Q, QScalar, eval_numeric
from .linalg import Echelon
from .qcalculus import apply_diff_word, box, calculus
from .qmatrix import PolyM, det_q, monomial_basis
from .report import FAIL, PASS, POLE, Case, check
from .symfunc import fk_constant
from .textio import render_poly
from .uqaction import act, act_element, decompose_degree, generators, star_word, twisted

PIVOT_TOL = 1e-10


class FormPole(ArithmeticError):
    """The lambda-form has a pole: fk_constant vanishes on a paired component."""

    def __init__(self, k, lam):
        super().__init__(f"lambda-form pole on component {tuple(k)} at lambda={lam}")
        self.component = tuple(k)
        self.lam = lam


# ---------------------------------------------------------------------------
# Fock form


@lru_cache(maxsize=None)
def _fock_mono(n: int, m1: tuple, m2: tuple) -> QScalar:
    if len(m1) != len(m2):
        return ZERO
    if not m2:
        return ONE
    g = calculus(n).partial_idx(m2[-1], PolyM(n, {m1: ONE}))
    acc = ZERO
    for mono, c in g.terms.items():
        v = _fock_mono(n, mono, m2[:-1])
        if not v.is_zero():
            acc = acc + c * v
    return acc


def fock(f1: PolyM, f2: PolyM) -> QScalar:
    acc = ZERO
    for m1, c1 in f1.terms.items():
        for m2, c2 in f2.terms.items():
            if len(m1) == len(m2):
                v = _fock_mono(f1.n, m1, m2)
                if not v.is_zero():
                    acc = acc + c1 * c2 * v
    return acc


def fock_word(f1: PolyM, word) -> QScalar:
    """(f1, z_{w1} ... z_{wk}) for an arbitrary, not necessarily ordered, word."""
    return apply_diff_word(list(word), f1).constant_term()


def bracket(f1: PolyM, f2: PolyM) -> QScalar:
    """<f1, f2> = (1 - q^2)^deg (f1, f2)_F, taken degree by degree."""
    acc = ZERO
    for d in f1.degrees() & f2.degrees():
        acc = acc + (ONE - Q * Q) ** d * fock(f1.homogeneous_part(d), f2.homogeneous_part(d))
    return acc


# ---------------------------------------------------------------------------
# components and the lambda family


@lru_cache(maxsize=None)
def component_projections(n: int, d: int) -> dict:
    """monomial -> {partition: projection of the monomial onto that component}."""
    comps = decompose_degree(n, d)
    ech = Echelon()
    owner = []
    for k, basis in comps:
        for v in basis:
            ech.add(dict(v.terms))
            owner.append((k, v))
    out = {}
    for mono in monomial_basis(n, d):
        coords = ech.coordinates({mono: ONE})
        parts: dict = {}
        for idx, c in coords.items():
            k, v = owner[idx]
            parts[k] = parts[k] + v.scale(c) if k in parts else v.scale(c)
        out[mono] = {k: p for k, p in parts.items() if not p.is_zero()}
    return out


def project(f: PolyM) -> dict:
    """Split f into its component pieces, {(degree, partition): PolyM}."""
    out: dict = {}
    for mono, c in f.terms.items():
        for k, p in component_projections(f.n, len(mono))[mono].items():
            key = (len(mono), k)
            out[key] = out[key] + p.scale(c) if key in out else p.scale(c)
    return {k: v for k, v in out.items() if not v.is_zero()}


def lambda_form(f1: PolyM, f2: PolyM, lam) -> QScalar:
    """(f1, f2)_lambda; lam an integer, or None / "sym" for symbolic u = q^lambda."""
    p1, p2 = project(f1), project(f2)
    acc = ZERO
    for key in sorted(set(p1) & set(p2)):
        v = fock(p1[key], p2[key])
        if v.is_zero():
            continue
        c = fk_constant(key[1], lam, f1.n)
        if c.is_zero():
            raise FormPole(key[1], lam)
        acc = acc + v / c
    return acc


def shilov_form(f1: PolyM, f2: PolyM) -> QScalar:
    """The Shilov-boundary form, realized as the lambda = n form."""
    return lambda_form(f1, f2, f1.n)


# ---------------------------------------------------------------------------
# Gram matrices


@dataclass
class GramMatrix:
    basis: list
    entries: list
    tag: str

    def numeric(self, q_val: float, lambda_val: float = 0.0) -> np.ndarray:
        return np.array([[eval_numeric(x, q_val, lambda_val) for x in row] for row in self.entries])

    def is_symmetric(self) -> bool:
        m = len(self.entries)
        return all(self.entries[i][j] == self.entries[j][i] for i in range(m) for j in range(i))

    def write_csv(self, path, q_val: float | None = None, lambda_val: float = 0.0) -> None:
        """Exact text entries, or numbers at (q_val, lambda_val) when q_val is given."""
        labels = [render_poly(f) for f in self.basis]
        rows = (
            self.numeric(q_val, lambda_val).tolist()
            if q_val is not None
            else [[str(x) for x in row] for row in self.entries]
        )
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow([self.tag] + labels)
            for label, row in zip(labels, rows):
                w.writerow([label] + [repr(x) if isinstance(x, float) else x for x in row])


def _form(tag: str, lam=None):
    if tag == "fock":
        return fock
    if tag == "bracket":
        return bracket
    if tag == "lambda":
        return lambda f1, f2: lambda_form(f1, f2, lam)
    if tag == "shilov":
        return shilov_form
    raise ValueError(f"unknown form {tag!r}")


def gram(basis, tag: str = "fock", lam=None) -> GramMatrix:
    form = _form(tag, lam)
    entries = [[form(f1, f2) for f2 in basis] for f1 in basis]
    label = tag if tag != "lambda" else f"lambda({'u' if lam in (None, 'sym') else lam})"
    return GramMatrix(list(basis), entries, label)


def monomial_gram(n: int, d: int, tag: str = "fock", lam=None) -> GramMatrix:
    return gram([PolyM(n, {m: ONE}) for m in monomial_basis(n, d)], tag, lam)


# ---------------------------------------------------------------------------
# checks


def _basis(n: int, max_degree: int):
    return [PolyM(n, {m: ONE}) for d in range(max_degree + 1) for m in monomial_basis(n, d)]


def verify_form_invariance(form: str, kind, n: int, max_degree: int, gens=None, lam=None):
    """(pi(xi) f1, f2) = (f1, pi(xi*) f2) for every generator and basis pair."""
    if form == "lambda" and lam is None:
        lam = "sym" if kind.lam is None else kind.lam
    fn = _form(form, lam)
    basis = _basis(n, max_degree)
    cases = []
    for g in gens if gens is not None else generators(n):
        star = star_word({(g,): ONE}, n)
        bad = None
        for f1 in basis:
            lhs_vec = act(g, kind, f1)
            for f2 in basis:
                rhs_vec = act_element(star, kind, f2)
                if fn(lhs_vec, f2) != fn(f1, rhs_vec):
                    bad = f"{render_poly(f1)} ; {render_poly(f2)}"
                    break
            if bad:
                break
        cases.append(check(f"invariance {form} {g.kind}{g.i}", bad is None, bad))
    return cases


def verify_fock_properties(n: int, max_degree: int):
    """Symmetry, component orthogonality, well-definedness, bracket rule, box adjunction."""
    cases = []
    basis = _basis(n, max_degree)
    bad = next(
        (f"{render_poly(a)} ; {render_poly(b)}" for a in basis for b in basis if fock(a, b) != fock(b, a)),
        None,
    )
    cases.append(check("fock symmetry", bad is None, bad))

    for d in range(max_degree + 1):
        comps = decompose_degree(n, d)
        bad = None
        for i, (k1, b1) in enumerate(comps):
            for k2, b2 in comps[i + 1 :]:
                for v in b1:
                    for w in b2:
                        if not fock(v, w).is_zero():
                            bad = f"{k1} vs {k2}: {render_poly(v)} ; {render_poly(w)}"
                            break
                    if bad:
                        break
        cases.append(check(f"component orthogonality deg{d}", bad is None, bad))

    # well-definedness: pair against unordered words and compare with their normal forms
    bad = None
    for d in range(2, max_degree + 1):
        for f1 in (PolyM(n, {m: ONE}) for m in monomial_basis(n, d)):
            for m in monomial_basis(n, d):
                word = tuple(reversed(m))
                nf = PolyM.one(n)
                for x in word:
                    nf = nf * PolyM(n, {(x,): ONE})
                if fock_word(f1, word) != fock(f1, nf):
                    bad = f"{render_poly(f1)} ; word {word}"
                    break
            if bad:
                break
    cases.append(check("fock well-defined on words", bad is None, bad))

    # bracket: <d f1, f2> = (1 - q^2)^-1 <f1, f2 z>
    cal = calculus(n)
    inv = (ONE - Q * Q).inverse()
    bad = None
    for f1 in basis:
        d1 = len(next(iter(f1.terms)))
        if d1 == 0:
            continue
        for f2 in _basis(n, d1 - 1):
            if len(next(iter(f2.terms))) != d1 - 1:
                continue
            for x in range(n * n):
                lhs = bracket(cal.partial_idx(x, f1), f2)
                rhs = inv * bracket(f1, f2 * PolyM(n, {(x,): ONE}))
                if lhs != rhs:
                    bad = f"{render_poly(f1)} ; {render_poly(f2)} ; x={x}"
                    break
            if bad:
                break
        if bad:
            break
    cases.append(check("bracket adjunction factor", bad is None, bad))

    det = det_q(n)
    bad = None
    for f1 in basis:
        d1 = len(next(iter(f1.terms)))
        if d1 < n:
            continue
        for m in monomial_basis(n, d1 - n):
            f2 = PolyM(n, {m: ONE})
            if fock(box(f1), f2) != fock(f1, f2 * det):
                bad = f"{render_poly(f1)} ; {render_poly(f2)}"
                break
        if bad:
            break
    cases.append(check("box fock adjunction", bad is None, bad))
    return cases


def verify_component_ratios(n: int, max_degree: int, lams=("sym",)):
    """On each component, fock / lambda_form is exactly fk_constant(k, lambda)."""
    cases = []
    for lam in lams:
        for d in range(max_degree + 1):
            for k, basis in decompose_degree(n, d):
                c = fk_constant(k, lam, n)
                if c.is_zero():
                    cases.append(Case(f"ratio lam={lam} k={k}", POLE, None))
                    continue
                bad = None
                for v in basis:
                    for w in basis:
                        f = fock(v, w)
                        if f != c * lambda_form(v, w, lam):
                            bad = f"{render_poly(v)} ; {render_poly(w)}"
                            break
                    if bad:
                        break
                cases.append(check(f"ratio lam={lam} k={k}", bad is None, bad))
    return cases


def _pivots(a: np.ndarray):
    """Pivots of a Jacobi-scaled LDL^T, or None where a pivot is not positive."""
    diag = np.diag(a)
    if np.any(diag <= 0):
        return None
    scale = 1.0 / np.sqrt(diag)
    b = a * scale[:, None] * scale[None, :]
    try:
        chol = np.linalg.cholesky(b)
    except np.linalg.LinAlgError:
        return None
    return np.diag(chol) ** 2


def positivity_scan(n: int, max_degree: int, q_val: float, lams):
    """PD check of every component block of the lambda-form Gram matrix.

    Above n-1 every block must be positive definite.  At or below n-1 a pole
    or a non-PD block is the expected outcome, reported with its witness;
    the scan fails there only if the scanned degrees already contain a
    component with k_n >= 1 and nothing was found.
    """
    cases = []
    for lam in lams:
        integral = float(lam).is_integer()
        unitary = float(lam) > n - 1
        found = False
        for d in range(max_degree + 1):
            for k, basis in decompose_degree(n, d):
                cid = f"lam={lam} k={k}"
                c = fk_constant(k, int(lam) if integral else "sym", n)
                if c.is_zero():
                    found = True
                    cases.append(Case(cid, POLE, f"FormPole on component {k}"))
                    continue
                try:
                    cval = eval_numeric(c, q_val, float(lam))
                except PoleAtPoint:
                    found = True
                    cases.append(Case(cid, POLE, f"constant has a pole on component {k}"))
                    continue
                g = gram(basis, "fock").numeric(q_val) / cval
                piv = _pivots(g)
                if piv is not None and piv.min() > PIVOT_TOL:
                    cases.append(Case(cid, PASS, None))
                    continue
                found = True
                ev = float(np.linalg.eigvalsh(g).min())
                msg = f"not positive definite, min eigenvalue {ev:.6g}"
                cases.append(Case(cid, FAIL if unitary else PASS, msg))
        if not unitary:
            reachable = max_degree >= n
            cases.append(
                check(f"lam={lam} obstruction found", found or not reachable, "no pole or non-PD block")
            )
    return cases


def verify_covariance(n: int, l: int, max_degree: int, gens=None):
    """box^l pi_{n-l}(xi) = pi_{n+l}(xi) box^l on every basis monomial."""
    basis = _basis(n, max_degree)
    lo, hi = twisted(n - l), twisted(n + l)
    cases = []
    for g in gens if gens is not None else generators(n):
        bad = None
        for f in basis:
            if box(act(g, lo, f), l) != act(g, hi, box(f, l)):
                bad = render_poly(f)
                break
        cases.append(check(f"covariance l={l} {g.kind}{g.i}", bad is None, bad))
    return cases


def _box_image_vec(f: PolyM, l: int) -> dict:
    return dict(box(f, l).terms)


def box_kernel_analysis(n: int, l: int, max_degree: int):
    """Rank, kernel and surjectivity of box^l per degree, plus invariance of the kernel."""
    cases = []
    lo = twisted(n - l)
    for d in range(max_degree + 1):
        monos = monomial_basis(n, d)
        ech = Echelon()
        for m in monos:
            ech.add(_box_image_vec(PolyM(n, {m: ONE}), l))
        rank = len(ech)
        target = len(monomial_basis(n, d - n * l)) if d >= n * l else 0
        kernel_dim = len(monos) - rank
        cases.append(check(f"surjective d={d}", rank == target, f"rank {rank}, target dim {target}"))

        comps = decompose_degree(n, d)
        kernel = [v for k, basis in comps if k[-1] < l for v in basis]
        in_kernel = all(box(v, l).is_zero() for v in kernel)
        ok = in_kernel and len(kernel) == kernel_dim
        cases.append(
            check(
                f"kernel d={d} dim={kernel_dim}",
                ok,
                f"kernel dim {kernel_dim}, low-k_n components span {len(kernel)}, annihilated={in_kernel}",
            )
        )
        bad = None
        for g in generators(n):
            for v in kernel:
                if not box(act(g, lo, v), l).is_zero():
                    bad = f"{g.kind}{g.i} on {render_poly(v)}"
                    break
            if bad:
                break
        cases.append(check(f"kernel invariant d={d}", bad is None, bad))
    return cases


__all__ = [
    "FormPole",
    "GramMatrix",
    "PIVOT_TOL",
    "bracket",
    "box_kernel_analysis",
    "component_projections",
    "fock",
    "fock_word",
    "gram",
    "lambda_form",
    "monomial_gram",
    "positivity_scan",
    "project",
    "shilov_form",
    "verify_component_ratios",
    "verify_covariance",
    "verify_fock_properties",
    "verify_form_invariance",
]
