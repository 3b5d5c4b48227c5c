"""First-order differential calculus on C[M_n]_q and the q-wave operator.

The bimodule relation moves z past dz to the right of it:

    z_b^beta dz_a^alpha = sum R(rows) R(cols) dz_a'^alpha' z_b'^beta'

Partial derivatives need left coefficients (dz rightmost), so the relation
is inverted block by block to push dz to the right instead.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from .coeffs import ONE, ZERO, Q, QScalar
from .linalg import solve_square
from .qmatrix import (
    PolyM,
    _add_into,
    algebra,
    gen_index,
    gen_pair,
    monomial_basis,
    normal_form,
    perm_length,
)
from .report import check


def r_entry(b: int, a: int, b2: int, a2: int) -> QScalar:
    """R^{b'a'}_{ba} from the calculus table."""
    if a == b == a2 == b2:
        return Q.inverse()
    if a != b and a == a2 and b == b2:
        return ONE
    if a < b and a == b2 and b == a2:
        return Q.inverse() - Q
    return ZERO


class Calculus:
    """dz push tables and memoized differentials for one n."""

    def __init__(self, n: int):
        self.n = n
        self.push_left = self._push_left_table()
        self.push_right = self._invert(self.push_left)
        self._push_cache: dict = {}
        self._d_cache: dict = {}

    def _push_left_table(self) -> dict:
        """(z idx, dz idx) -> {(dz idx, z idx): coeff}."""
        n = self.n
        rng = range(1, n + 1)
        table = {}
        for b in rng:
            for beta in rng:
                for a in rng:
                    for alpha in rng:
                        row = {}
                        for a2 in rng:
                            for b2 in rng:
                                rc = r_entry(b, a, b2, a2)
                                if rc.is_zero():
                                    continue
                                for alpha2 in rng:
                                    for beta2 in rng:
                                        rr = r_entry(beta, alpha, beta2, alpha2)
                                        if rr.is_zero():
                                            continue
                                        key = (gen_index(n, a2, alpha2), gen_index(n, b2, beta2))
                                        row[key] = row.get(key, ZERO) + rr * rc
                        table[(gen_index(n, b, beta), gen_index(n, a, alpha))] = {
                            k: v for k, v in row.items() if not v.is_zero()
                        }
        return table

    def _invert(self, table: dict) -> dict:
        """Solve for (dz idx, z idx) -> {(z idx, dz idx): coeff}."""
        n = self.n

        def block(z, dz):
            (b, beta), (a, alpha) = gen_pair(n, z), gen_pair(n, dz)
            return (frozenset((a, b)), frozenset((alpha, beta)), a == b, alpha == beta)

        blocks: dict = {}
        for key in table:
            blocks.setdefault(block(*key), []).append(key)
        out = {}
        for keys in blocks.values():
            targets = sorted({t for k in keys for t in table[k]})
            src = sorted(keys)
            if len(targets) != len(src):
                raise ArithmeticError("push-left block is not square")
            # table: src_i = sum_j M[i][j] target_j ; want target_j = sum_i N[j][i] src_i
            m = [[table[s].get(t, ZERO) for t in targets] for s in src]
            mt = [list(col) for col in zip(*m)]
            for j, t in enumerate(targets):
                e = [ONE if i == j else ZERO for i in range(len(targets))]
                # N row j solves N_j M = e_j, i.e. M^T N_j^T = e_j
                sol = solve_square(mt, e)
                out[t] = {s: c for s, c in zip(src, sol) if not c.is_zero()}
        return out

    # -- pushing dz through words --------------------------------------------
    def push(self, c: int, suffix: tuple) -> dict:
        """dz_c * z_suffix as {dz idx: left coefficient PolyM}."""
        n = self.n
        if not suffix:
            return {c: PolyM.one(n)}
        key = (c, suffix)
        hit = self._push_cache.get(key)
        if hit is not None:
            return hit
        g, rest = suffix[0], suffix[1:]
        acc: dict = {}
        for (z2, c2), coef in self.push_right[(c, g)].items():
            left = PolyM(n, {(z2,): coef})
            for c3, poly in self.push(c2, rest).items():
                term = left * poly
                acc[c3] = acc[c3] + term if c3 in acc else term
        acc = {k: v for k, v in acc.items() if not v.is_zero()}
        self._push_cache[key] = acc
        return acc

    def d_word(self, word: tuple) -> dict:
        """d of an arbitrary word of generators, by the Leibniz rule."""
        n = self.n
        alg = algebra(n)
        acc: dict = {}
        for j, x in enumerate(word):
            prefix = alg.normal_form(word[:j])
            for c, poly in self.push(x, tuple(word[j + 1 :])).items():
                term = prefix * poly
                acc[c] = acc[c] + term if c in acc else term
        return {k: v for k, v in acc.items() if not v.is_zero()}

    def d_monomial(self, mono: tuple) -> dict:
        hit = self._d_cache.get(mono)
        if hit is None:
            hit = self.d_word(mono)
            self._d_cache[mono] = hit
        return hit

    def differential(self, f: PolyM) -> dict:
        acc: dict = {}
        for mono, coef in f.terms.items():
            for c, poly in self.d_monomial(mono).items():
                term = poly.scale(coef)
                acc[c] = acc[c] + term if c in acc else term
        return {k: v for k, v in acc.items() if not v.is_zero()}

    def partial_idx(self, c: int, f: PolyM) -> PolyM:
        acc: dict = {}
        for mono, coef in f.terms.items():
            p = self.d_monomial(mono).get(c)
            if p is not None:
                for m, v in p.terms.items():
                    _add_into(acc, m, coef * v)
        return PolyM(self.n, acc)


@lru_cache(maxsize=None)
def calculus(n: int) -> Calculus:
    return Calculus(n)


def differential(f: PolyM) -> dict:
    """df as {(a, alpha): left coefficient}, i.e. sum f_{a alpha} dz_a^alpha."""
    n = f.n
    return {gen_pair(n, c): p for c, p in calculus(n).differential(f).items()}


def partial(a: int, alpha: int, f: PolyM) -> PolyM:
    return calculus(f.n).partial_idx(gen_index(f.n, a, alpha), f)


def apply_diff_word(word, f: PolyM, coeff=ONE) -> PolyM:
    """coeff * d/dz_{w1} d/dz_{w2} ... f; the leftmost derivative acts last."""
    cal = calculus(f.n)
    for w in reversed(list(word)):
        c = gen_index(f.n, *w) if isinstance(w, tuple) else w
        f = cal.partial_idx(c, f)
    return f.scale(coeff)


@lru_cache(maxsize=None)
def box_words(n: int) -> tuple:
    """Terms ((-q)^{l(s)}, word) of box_q = sum_s (-q)^{l(s)} d_1^{s(1)} ... d_n^{s(n)}."""
    out = []
    for p in permutations(range(n)):
        word = tuple(gen_index(n, a + 1, p[a] + 1) for a in range(n))
        out.append(((-Q) ** perm_length(p), word))
    return tuple(out)


def box(f: PolyM, l: int = 1) -> PolyM:
    """box_q^l f."""
    for _ in range(l):
        acc = PolyM(f.n)
        for c, word in box_words(f.n):
            acc = acc + apply_diff_word(word, f, c)
        f = acc
    return f


# ---------------------------------------------------------------------------
# checks


def _basis(n: int, max_degree: int):
    return [PolyM(n, {m: ONE}) for d in range(max_degree + 1) for m in monomial_basis(n, d)]


def verify_round_trip(n: int):
    """push-right after push-left is the identity on every z (x) dz pair."""
    cal = calculus(n)
    cases = []
    for (z, dz), row in sorted(cal.push_left.items()):
        acc: dict = {}
        for pair, c in row.items():
            for key, v in cal.push_right[pair].items():
                acc[key] = acc.get(key, ZERO) + c * v
        acc = {k: v for k, v in acc.items() if not v.is_zero()}
        zp, dp = gen_pair(n, z), gen_pair(n, dz)
        cases.append(check(f"roundtrip z{zp} dz{dp}", acc == {(z, dz): ONE}, str(acc)))
    return cases


def verify_upsilon(n: int, max_degree: int):
    """Partials obey the algebra relations: Upsilon(z_y z_x) = Upsilon(normal form)."""
    from .textio import render_poly

    basis = _basis(n, max_degree)
    cases = []
    for x in range(n * n):
        for y in range(x + 1, n * n):
            nf = normal_form(n, [y, x])
            bad = None
            for f in basis:
                lhs = apply_diff_word([y, x], f)
                rhs = PolyM(n)
                for mono, c in nf.terms.items():
                    rhs = rhs + apply_diff_word(mono, f, c)
                if lhs != rhs:
                    bad = render_poly(f)
                    break
            name = "d%s d%s" % (gen_pair(n, y), gen_pair(n, x))
            cases.append(check(f"upsilon {name}", bad is None, bad))
    return cases


def verify_box_symmetries(n: int, max_degree: int):
    """box commutes with U_q(sl_n x sl_n) and K_n box = q^-2 box K_n."""
    from .textio import render_poly
    from .uqaction import INITIAL, act, generators

    basis = _basis(n, max_degree)
    cases = []
    for g in generators(n):
        if g.i == n and g.kind in ("E", "F"):
            continue
        if g.i != n:
            scale_l, scale_r = ONE, ONE
        elif g.kind == "K":
            scale_l, scale_r = Q * Q, ONE
        else:
            scale_l, scale_r = ONE, Q * Q
        bad = None
        for f in basis:
            if act(g, INITIAL, box(f)).scale(scale_l) != box(act(g, INITIAL, f)).scale(scale_r):
                bad = render_poly(f)
                break
        label = "knbox" if g.i == n else "commute"
        cases.append(check(f"{label} {g.kind}{g.i}", bad is None, bad))
    return cases
