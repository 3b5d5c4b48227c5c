"""The quantum matrix space C[M_n]_q as a normal-form rewriting engine.

Generator z_a^alpha (a = column, alpha = row, both 1-based) is stored as the
integer ``(a - 1) * n + (alpha - 1)``; integer order is the (a, alpha)
lexicographic order. A monomial is a weakly increasing tuple of such
integers, and a ``PolyM`` maps monomials to ``QScalar`` coefficients.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from math import comb

from .coeffs import ONE, ZERO, Q, QScalar, scalar


class SizeMismatch(ValueError):
    pass


def gen_index(n: int, a: int, alpha: int) -> int:
    if not (1 <= a <= n and 1 <= alpha <= n):
        raise IndexError(f"generator z[{a},{alpha}] out of range for n={n}")
    return (a - 1) * n + (alpha - 1)


def gen_pair(n: int, idx: int) -> tuple[int, int]:
    return idx // n + 1, idx % n + 1


def _add_into(acc: dict, mono, c: QScalar):
    v = acc.get(mono)
    v = c if v is None else v + c
    if v.is_zero():
        acc.pop(mono, None)
    else:
        acc[mono] = v


class PolyM:
    """Normal-ordered element of C[M_n]_q; treat as immutable."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms = {m: c for m, c in (terms or {}).items() if not c.is_zero()}

    # -- constructors -----------------------------------------------------
    @classmethod
    def one(cls, n):
        return cls(n, {(): ONE})

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def const(cls, n, c):
        return cls(n, {(): scalar(c)})

    @classmethod
    def gen(cls, n, a, alpha):
        return cls(n, {(gen_index(n, a, alpha),): ONE})

    @classmethod
    def monomial(cls, n, mono, c=ONE):
        return cls(n, {tuple(mono): scalar(c)})

    # -- structure --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {len(m) for m in self.terms}

    def degree(self) -> int:
        """Degree of a nonzero homogeneous element."""
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("not homogeneous")
        return ds.pop()

    def homogeneous_part(self, d: int) -> "PolyM":
        return PolyM(self.n, {m: c for m, c in self.terms.items() if len(m) == d})

    def constant_term(self) -> QScalar:
        return self.terms.get((), ZERO)

    def coefficient(self, mono) -> QScalar:
        return self.terms.get(tuple(mono), ZERO)

    def map_coeffs(self, fn) -> "PolyM":
        return PolyM(self.n, {m: fn(c) for m, c in self.terms.items()})

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, PolyM):
            other = PolyM.const(self.n, other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(acc, m, c)
        return PolyM(self.n, acc)

    __radd__ = __add__

    def __neg__(self):
        return PolyM(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "PolyM":
        c = scalar(c)
        if c.is_zero():
            return PolyM(self.n)
        return PolyM(self.n, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PolyM):
            return algebra(self.n).multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = PolyM.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, PolyM):
            return self.n == other.n and self.terms == other.terms
        return self == PolyM.const(self.n, other)

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        from .textio import render_poly

        return f"PolyM(n={self.n}, {render_poly(self)!r})"


class QMatrixAlgebra:
    """Rewriting engine for one fixed n, with memoized products."""

    def __init__(self, n: int):
        self.n = n
        self._gen_cache: dict = {}
        self._mono_cache: dict = {}
        self._rules = {}
        qq = Q - Q.inverse()
        qinv = Q.inverse()
        for x in range(n * n):
            for y in range(x):
                b, beta = gen_pair(n, x)
                a, alpha = gen_pair(n, y)
                # rewrite z_b^beta z_a^alpha with (a, alpha) < (b, beta)
                if a == b or alpha == beta:
                    rule = [(qinv, (y, x))]
                elif alpha > beta:
                    rule = [(ONE, (y, x))]
                else:
                    corr = (gen_index(n, a, beta), gen_index(n, b, alpha))
                    rule = [(ONE, (y, x)), (-qq, corr)]
                self._rules[(x, y)] = rule

    def rule(self, x: int, y: int):
        """Normal form of the inverted pair z_x z_y (x > y)."""
        return self._rules[(x, y)]

    def mul_gen(self, mono: tuple, g: int) -> dict:
        """Normal form of (monomial) * z_g as a dict."""
        if not mono or mono[-1] <= g:
            return {mono + (g,): ONE}
        key = (mono, g)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        prefix, last = mono[:-1], mono[-1]
        acc: dict = {}
        for c, (i, j) in self._rules[(last, g)]:
            for m1, c1 in self.mul_gen(prefix, i).items():
                for m2, c2 in self.mul_gen(m1, j).items():
                    _add_into(acc, m2, c * c1 * c2)
        self._gen_cache[key] = acc
        return acc

    def mul_mono(self, m1: tuple, m2: tuple) -> dict:
        if not m2:
            return {m1: ONE}
        if not m1 or m1[-1] <= m2[0]:
            return {m1 + m2: ONE}
        key = (m1, m2)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        cur = {m1: ONE}
        for g in m2:
            nxt: dict = {}
            for m, c in cur.items():
                for m_, c_ in self.mul_gen(m, g).items():
                    _add_into(nxt, m_, c * c_)
            cur = nxt
        self._mono_cache[key] = cur
        return cur

    def multiply(self, f: PolyM, g: PolyM) -> PolyM:
        acc: dict = {}
        for m1, c1 in f.terms.items():
            for m2, c2 in g.terms.items():
                c12 = c1 * c2
                for m, c in self.mul_mono(m1, m2).items():
                    _add_into(acc, m, c12 * c)
        return PolyM(self.n, acc)

    def normal_form(self, word, coeff=ONE) -> PolyM:
        cur = {(): scalar(coeff)}
        for g in word:
            nxt: dict = {}
            for m, c in cur.items():
                for m_, c_ in self.mul_gen(m, g).items():
                    _add_into(nxt, m_, c * c_)
            cur = nxt
        return PolyM(self.n, cur)


@lru_cache(maxsize=None)
def algebra(n: int) -> QMatrixAlgebra:
    return QMatrixAlgebra(n)


def normal_form(n: int, word, coeff=ONE) -> PolyM:
    """Normal form of coeff * z_{w1} z_{w2} ...; letters are (a, alpha) pairs or indices."""
    idx = [gen_index(n, *w) if isinstance(w, tuple) else w for w in word]
    return algebra(n).normal_form(idx, coeff)


def multiply(f: PolyM, g: PolyM) -> PolyM:
    return algebra(f.n).multiply(f, g)


def perm_length(p) -> int:
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])


@lru_cache(maxsize=None)
def q_minor(n: int, rows: tuple, cols: tuple) -> PolyM:
    """q-minor with row set ``rows`` and column set ``cols`` (both increasing).

    sum over s in S_k of (-q)^{l(s)} z_{a_1}^{alpha_s(1)} ... z_{a_k}^{alpha_s(k)}.
    """
    rows, cols = tuple(rows), tuple(cols)
    if len(rows) != len(cols):
        raise SizeMismatch(f"rows {rows} and cols {cols} differ in size")
    if list(rows) != sorted(set(rows)) or list(cols) != sorted(set(cols)):
        raise ValueError("index sets must be strictly increasing")
    k = len(rows)
    acc = PolyM(n)
    for p in permutations(range(k)):
        word = [gen_index(n, cols[i], rows[p[i]]) for i in range(k)]
        acc = acc + algebra(n).normal_form(word, (-Q) ** perm_length(p))
    return acc


def det_q(n: int) -> PolyM:
    full = tuple(range(1, n + 1))
    return q_minor(n, full, full)


def principal_minor(n: int, k: int) -> PolyM:
    """The q-minor on the last k rows and columns."""
    idx = tuple(range(n - k + 1, n + 1))
    return q_minor(n, idx, idx)


def monomial_basis(n: int, d: int) -> list[tuple]:
    return list(combinations_with_replacement(range(n * n), d))


def basis_size(n: int, d: int) -> int:
    return comb(n * n + d - 1, d)


# ---------------------------------------------------------------------------
# C[GL_n]_q and the Shilov-boundary involution


class GLPoly:
    """body * det_q^(-det_power), an element of the localization C[GL_n]_q."""

    __slots__ = ("body", "det_power")

    def __init__(self, body: PolyM, det_power: int = 0):
        if det_power < 0:
            body = body * det_q(body.n) ** (-det_power)
            det_power = 0
        self.body = body
        self.det_power = det_power

    @property
    def n(self):
        return self.body.n

    def __mul__(self, other):
        if isinstance(other, GLPoly):
            return GLPoly(self.body * other.body, self.det_power + other.det_power)
        if isinstance(other, PolyM):
            return GLPoly(self.body * other, self.det_power)
        return GLPoly(self.body.scale(other), self.det_power)

    def __rmul__(self, other):
        if isinstance(other, PolyM):
            return GLPoly(other * self.body, self.det_power)
        return GLPoly(self.body.scale(other), self.det_power)

    def _lift(self, m: int) -> PolyM:
        return self.body * det_q(self.n) ** (m - self.det_power)

    def __add__(self, other):
        if not isinstance(other, GLPoly):
            other = GLPoly(other if isinstance(other, PolyM) else PolyM.const(self.n, other))
        m = max(self.det_power, other.det_power)
        return GLPoly(self._lift(m) + other._lift(m), m)

    def __neg__(self):
        return GLPoly(-self.body, self.det_power)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if isinstance(other, PolyM):
            other = GLPoly(other)
        elif not isinstance(other, GLPoly):
            other = GLPoly(PolyM.const(self.n, other))
        m = max(self.det_power, other.det_power)
        return self._lift(m) == other._lift(m)

    def __repr__(self):
        return f"GLPoly({self.body!r}, det^-{self.det_power})"


def _star_coeff(n, a, alpha) -> QScalar:
    return (-Q) ** (a + alpha - 2 * n)


@lru_cache(maxsize=None)
def _star_gen(n: int, idx: int) -> PolyM:
    """Body B with (z_a^alpha)* = det^-1 * B."""
    a, alpha = gen_pair(n, idx)
    if n == 1:
        return PolyM.const(1, _star_coeff(n, a, alpha))
    rows = tuple(c for c in range(1, n + 1) if c != alpha)
    cols = tuple(c for c in range(1, n + 1) if c != a)
    return q_minor(n, rows, cols).scale(_star_coeff(n, a, alpha))


def star_poly(f: PolyM) -> GLPoly:
    """Shilov involution of a polynomial (coefficients are real, so fixed)."""
    n = f.n
    if f.is_zero():
        return GLPoly(f)
    top = max(f.degrees())
    detq = det_q(n)
    acc = PolyM(n)
    for mono, c in f.terms.items():
        body = PolyM.const(n, c)
        for g in reversed(mono):
            body = body * _star_gen(n, g)
        acc = acc + body * detq ** (top - len(mono))
    return GLPoly(acc, top)


@lru_cache(maxsize=None)
def det_star_scalar(n: int) -> QScalar:
    """c with det_q* = c det_q^-1; raises if det_q* is not of that shape."""
    ds = star_poly(det_q(n))
    target = det_q(n) ** (n - 1)
    mono, tc = next(iter(sorted(target.terms.items())))
    c = ds.body.coefficient(mono) / tc
    if ds.body != target.scale(c):
        raise ArithmeticError("det_q* is not a scalar multiple of det_q^-1")
    return c


def shilov_star(f) -> GLPoly:
    if isinstance(f, PolyM):
        return star_poly(f)
    ps = star_poly(f.body)
    if f.det_power == 0:
        return ps
    # (det^-m)* = (det*)^-m = c^-m det^m, det central
    c = det_star_scalar(f.n)
    return GLPoly(ps.body.scale(c ** (-f.det_power)) * det_q(f.n) ** f.det_power, ps.det_power)


# ---------------------------------------------------------------------------
# checks


def verify_pbw(n: int, max_degree: int):
    """Every word reduces onto ordered monomials, which have the commutative count.

    Independence of the ordered monomials is the diamond lemma, i.e. the
    overlap check in verify_confluence.
    """
    from itertools import product

    from .report import check

    alg = algebra(n)
    cases = []
    for d in range(max_degree + 1):
        basis = set(monomial_basis(n, d))
        want = comb(n * n + d - 1, d)
        stray = None
        for word in product(range(n * n), repeat=d):
            if not set(alg.normal_form(word).terms) <= basis:
                stray = word
                break
        ok = stray is None and len(basis) == want
        cases.append(check(f"pbw n={n} d={d}", ok, f"count {len(basis)}, want {want}, stray word {stray}"))
    return cases


def verify_confluence(n: int):
    """Overlap ambiguities z_x z_y z_w (x > y > w) resolve to the same normal form."""
    from .report import check
    from .textio import render_poly

    alg = algebra(n)
    cases = []
    for x in range(n * n):
        for y in range(x):
            for w in range(y):
                left = PolyM(n)
                for c, (i, j) in alg.rule(x, y):
                    left = left + alg.normal_form((i, j, w), c)
                right = PolyM(n)
                for c, (i, j) in alg.rule(y, w):
                    right = right + alg.normal_form((x, i, j), c)
                word = "*".join("z[%d,%d]" % gen_pair(n, g) for g in (x, y, w))
                cases.append(
                    check(f"overlap {word}", left == right, f"{render_poly(left)} != {render_poly(right)}")
                )
    return cases


def verify_structure(n: int):
    """det_q central, the Shilov star an involution, det_q det_q* = q^(-n(n-1))."""
    from .report import check
    from .textio import render_poly

    cases = []
    det = det_q(n)
    for idx in range(n * n):
        z = PolyM(n, {(idx,): ONE})
        cases.append(check(f"det central z{gen_pair(n, idx)}", det * z == z * det, render_poly(z)))
    # the star is anti-multiplicative by construction, so degree 1 decides it;
    # degree 2 is a cheap extra guard for small n
    for d in (1, 2) if n <= 2 else (1,):
        bad = None
        for mono in monomial_basis(n, d):
            f = PolyM(n, {mono: ONE})
            if shilov_star(shilov_star(f)) != f:
                bad = render_poly(f)
                break
        cases.append(check(f"star involutive deg{d}", bad is None, bad))
    c = det_star_scalar(n)
    want = Q ** (-n * (n - 1))
    prod = GLPoly(det) * shilov_star(det)
    cases.append(check("det det* scalar", c == want and prod == GLPoly(PolyM.const(n, want)), str(c)))
    return cases
