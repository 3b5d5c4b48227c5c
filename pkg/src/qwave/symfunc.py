"""Partitions, Schur polynomials and the kernel coefficient formulas.

Commutative polynomials in x_1..x_n are dicts from exponent tuples to
QScalar.  Everything is truncated at an explicit total degree.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations

from .coeffs import ONE, ZERO, Q, QScalar, U, q_pochhammer, q_pow, qpoch
from .qmatrix import perm_length


class TooManyParts(ValueError):
    pass


class Partition(tuple):
    """Weakly decreasing tuple of nonnegative integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(k) for k in parts)
        if any(k < 0 for k in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return sum(1 for k in self if k)

    def padded(self, n: int) -> "Partition":
        if self.length > n:
            raise TooManyParts(f"{tuple(self)} has more than {n} parts")
        body = tuple(k for k in self if k)
        return Partition(body + (0,) * (n - len(body)))

    def __repr__(self):
        return f"Partition{tuple(self)}"


def partitions_of(d: int, n: int, largest: int | None = None):
    """Partitions of d with at most n parts, padded to length n."""
    if largest is None:
        largest = d
    if n == 0:
        if d == 0:
            yield Partition()
        return
    for first in range(min(d, largest), -1, -1):
        if first * n < d:
            break
        for rest in partitions_of(d - first, n - 1, first):
            yield Partition((first,) + rest)


def partitions_upto(D: int, n: int):
    for d in range(D + 1):
        yield from partitions_of(d, n)


# ---------------------------------------------------------------------------
# commutative truncated polynomials


def _mul(f: dict, g: dict, D: int) -> dict:
    out: dict = {}
    for e1, c1 in f.items():
        d1 = sum(e1)
        for e2, c2 in g.items():
            if d1 + sum(e2) > D:
                continue
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e, ZERO) + c1 * c2
            if v.is_zero():
                out.pop(e, None)
            else:
                out[e] = v
    return out


def _add(f: dict, g: dict, c: QScalar = ONE) -> dict:
    out = dict(f)
    for e, v in g.items():
        w = out.get(e, ZERO) + c * v
        if w.is_zero():
            out.pop(e, None)
        else:
            out[e] = w
    return out


def _exponents(n: int, d: int):
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _exponents(n - 1, d - first):
            yield (first,) + rest


def complete_h(k: int, n: int) -> dict:
    if k < 0:
        return {}
    return {e: ONE for e in _exponents(n, k)}


@dataclass
class SymSeries:
    n_vars: int
    degree: int
    coeffs: dict = field(default_factory=dict)
    basis: str = "monomial"  # or "schur"

    def to_schur(self) -> "SymSeries":
        if self.basis == "schur":
            return self
        return SymSeries(self.n_vars, self.degree, monomial_to_schur(self.coeffs, self.n_vars), "schur")

    def to_monomial(self) -> "SymSeries":
        if self.basis == "monomial":
            return self
        return SymSeries(self.n_vars, self.degree, schur_to_monomial(self.coeffs, self.n_vars), "monomial")

    def is_symmetric(self) -> bool:
        if self.basis == "schur":
            return True
        return all(
            self.coeffs.get(tuple(e[i] for i in p)) == c
            for e, c in self.coeffs.items()
            for p in permutations(range(self.n_vars))
        )


# ---------------------------------------------------------------------------
# Schur polynomials


@lru_cache(maxsize=None)
def _schur_jt(k: Partition, n: int) -> tuple:
    """Jacobi-Trudi: det(h_{k_i - i + j}) over the first len(k) rows."""
    m = len(k)
    d = k.size
    acc: dict = {}
    for p in permutations(range(m)):
        term = {(0,) * n: ONE}
        for i in range(m):
            term = _mul(term, complete_h(k[i] - i + p[i], n), d)
            if not term:
                break
        if term:
            acc = _add(acc, term, ONE if perm_length(p) % 2 == 0 else -ONE)
    return tuple(sorted(acc.items()))


def schur(k, n_vars: int, D: int | None = None) -> SymSeries:
    k = Partition(k)
    if k.length > n_vars:
        raise TooManyParts(f"{tuple(k)} has more than {n_vars} parts")
    k = k.padded(n_vars)
    if D is None:
        D = k.size
    coeffs = dict(_schur_jt(k, n_vars)) if k.size <= D else {}
    return SymSeries(n_vars, D, coeffs)


def schur_tableaux(k, n_vars: int) -> dict:
    """Schur polynomial by enumerating semistandard tableaux."""
    k = Partition(k)
    if k.length > n_vars:
        raise TooManyParts(f"{tuple(k)} has more than {n_vars} parts")
    shape = [x for x in k if x]
    cells = [(r, c) for r, row in enumerate(shape) for c in range(row)]
    out: dict = {}
    filling: dict = {}

    def rec(idx):
        if idx == len(cells):
            e = [0] * n_vars
            for v in filling.values():
                e[v] += 1
            e = tuple(e)
            out[e] = out.get(e, ZERO) + ONE
            return
        r, c = cells[idx]
        lo = 0
        if c > 0:
            lo = max(lo, filling[(r, c - 1)])
        if r > 0:
            lo = max(lo, filling[(r - 1, c)] + 1)
        for v in range(lo, n_vars):
            filling[(r, c)] = v
            rec(idx + 1)
        filling.pop((r, c), None)

    rec(0)
    return out


def monomial_to_schur(coeffs: dict, n: int) -> dict:
    """Triangular solve: peel off the lex-largest dominant exponent each step."""
    rest = dict(coeffs)
    out: dict = {}
    while rest:
        lead = max(rest)
        if list(lead) != sorted(lead, reverse=True):
            raise ValueError("input is not symmetric")
        c = rest[lead]
        k = Partition(lead)
        out[k] = c
        rest = _add(rest, dict(_schur_jt(k, n)), -c)
    return out


def schur_to_monomial(coeffs: dict, n: int) -> dict:
    acc: dict = {}
    for k, c in coeffs.items():
        acc = _add(acc, dict(_schur_jt(Partition(k).padded(n), n)), c)
    return acc


# ---------------------------------------------------------------------------
# product expansions


def _one_var(series: list, n: int, D: int) -> dict:
    """prod_i sum_m series[m] x_i^m truncated at total degree D."""
    acc = {(0,) * n: ONE}
    for i in range(n):
        f = {}
        for m, c in enumerate(series[: D + 1]):
            if not c.is_zero():
                e = [0] * n
                e[i] = m
                f[tuple(e)] = c
        acc = _mul(acc, f, D)
    return acc


def _a_value(a) -> QScalar:
    """a as a scalar: an integer exponent means q**a; None or "sym" means u**2."""
    if a is None or a == "sym":
        return U * U
    if isinstance(a, QScalar):
        return a
    return q_pow(a)


def milne_series(a, n: int, D: int) -> SymSeries:
    """prod_i (a x_i; q^2)_inf / (x_i; q^2)_inf via the two Euler expansions."""
    a = _a_value(a)
    q2 = Q * Q
    num = [(-ONE) ** m * Q ** (m * (m - 1)) * a**m / qpoch(q2, m) for m in range(D + 1)]
    den = [ONE / qpoch(q2, m) for m in range(D + 1)]
    one_var: list = []
    for m in range(D + 1):
        one_var.append(sum((num[j] * den[m - j] for j in range(m + 1)), ZERO))
    return SymSeries(n, D, _one_var(one_var, n, D))


def telescoped_series(N: int, n: int, D: int) -> SymSeries:
    """prod_i 1/(x_i; q^2)_N as a product of N geometric series per variable."""
    one_var = [ONE] + [ZERO] * D
    for j in range(N):
        r = Q ** (2 * j)
        geo = [r**m for m in range(D + 1)]
        one_var = [sum((one_var[t] * geo[m - t] for t in range(m + 1)), ZERO) for m in range(D + 1)]
    return SymSeries(n, D, _one_var(one_var, n, D))


# ---------------------------------------------------------------------------
# coefficient formulas


def milne_C(k, a, n: int) -> QScalar:
    """C(k; a) in the Schur expansion of prod (a x_i;q^2)_inf/(x_i;q^2)_inf."""
    k = Partition(k).padded(n)
    a = _a_value(a)
    q2 = Q * Q
    out = ONE
    for i in range(1, n + 1):
        ki = k[i - 1]
        out = out * qpoch(a * q_pow(2 - 2 * i), ki) * Q ** (2 * (i - 1) * ki)
        out = out / qpoch(q2, ki + n - i)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out = out * (ONE - Q ** (2 * k[i - 1] - 2 * k[j - 1] - 2 * i + 2 * j))
    return out


def kernel_schur_coeffs(N: int, n: int, D: int) -> dict:
    """Schur coefficients of prod 1/(x_i;q^2)_N up to degree D."""
    return telescoped_series(N, n, D).to_schur().coeffs


def c_coeff(k, N: int, n: int) -> QScalar:
    k = Partition(k).padded(n)
    out = ONE
    for i in range(1, n + 1):
        out = out * q_pochhammer(2 * N + 2 - 2 * i, k[i - 1]) / q_pochhammer(2 * n + 2 - 2 * i, k[i - 1])
    return out


def fk_constant(k, lam, n: int) -> QScalar:
    """prod_i (q^{2 lam + 2 - 2i}; q^2)_{k_i} / (1 - q^2)^{|k|}; lam None/"sym" means u."""
    k = Partition(k).padded(n)
    sym = lam is None or lam == "sym"
    out = ONE
    for i in range(1, n + 1):
        if sym:
            out = out * q_pochhammer(2 - 2 * i, k[i - 1], in_u=True)
        else:
            out = out * q_pochhammer(2 * lam + 2 - 2 * i, k[i - 1])
    return out / (ONE - Q * Q) ** k.size


# ---------------------------------------------------------------------------
# checks


def verify_milne(n: int, D: int, a_values=("sym", 2, 4, 6)):
    """Series side against the displayed C(k;a), exactly, to degree D."""
    from .report import check

    cases = []
    for a in a_values:
        got = milne_series(a, n, D).to_schur().coeffs
        for k in partitions_upto(D, n):
            want = milne_C(k, a, n)
            have = got.get(k, ZERO)
            cases.append(check(f"milne n{n} a={a} k={tuple(k)}", have == want, f"{have} != {want}"))
        stray = [k for k in got if k.size > D]
        cases.append(check(f"milne n{n} a={a} truncation", not stray, str(stray)))
        if a != "sym":
            tele = telescoped_series(a // 2, n, D).coeffs
            whole = milne_series(a, n, D).coeffs
            cases.append(check(f"milne n{n} a={a} telescoped", tele == whole, "telescoped product differs"))
    return cases


def verify_kernel_coeffs(n: int, D: int, Ns=(2, 3, 4, 5)):
    from .report import check

    base = kernel_schur_coeffs(n, n, D)
    cases = []
    for N in Ns:
        kN = kernel_schur_coeffs(N, n, D)
        for k in partitions_upto(D, n):
            want = kN.get(k, ZERO)
            ok = c_coeff(k, N, n) * base.get(k, ZERO) == want and milne_C(k, 2 * N, n) == want
            cases.append(check(f"kernel N={N} k={tuple(k)}", ok, f"c_coeff mismatch at {tuple(k)}"))
    return cases


def write_coefficients_csv(table: dict, path) -> None:
    """Rows (partition, coefficient as text), sorted by size then reverse lex."""
    rows = sorted(table.items(), key=lambda kv: (kv[0].size, tuple(-x for x in kv[0])))
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["partition", "coefficient"])
        for k, c in rows:
            w.writerow([" ".join(str(x) for x in k), str(c)])
