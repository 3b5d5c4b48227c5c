"""Text grammar for scalars and polynomials.

Scalars: integers, ``q``, ``s``, ``u``, ``^``, ``*``, ``/``, ``+``, ``-`` and
parentheses, with ``q^k`` meaning ``s^(2k)``.  Polynomials add the generator
token ``z[a,r]`` (column a, row r); products of generators are taken in
C[M_n]_q and normal-ordered.
"""

from __future__ import annotations

import re

from .coeffs import ONE, Q, QScalar, S, U, scalar
from .qmatrix import PolyM, gen_index, gen_pair


class GrammarError(SyntaxError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|z\[\s*(\d+)\s*,\s*(\d+)\s*\]|([qsu])|(.))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(0) + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group(1):
            out.append(("int", int(m.group(1)), start))
        elif m.group(2):
            out.append(("z", (int(m.group(2)), int(m.group(3))), start))
        elif m.group(4):
            out.append(("var", m.group(4), start))
        else:
            ch = m.group(5)
            if ch not in "+-*/^()":
                raise GrammarError(f"unexpected character {ch!r}", start)
            out.append((ch, ch, start))
        pos = m.end(0)
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, n):
        self.toks = _tokenize(text)
        self.i = 0
        self.n = n

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise GrammarError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        v = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise GrammarError(f"unexpected {tok[1]!r}", tok[2])
        return v

    def expr(self):
        v = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            w = self.term()
            v = _add(v, w) if op == "+" else _add(v, _neg(w))
        return v

    def term(self):
        v = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            w = self.unary()
            if op == "*":
                v = _mul(v, w)
            else:
                if isinstance(w, PolyM):
                    raise GrammarError("division by a polynomial", pos)
                if w.is_zero():
                    raise GrammarError("division by zero", pos)
                v = v * w.inverse() if isinstance(v, PolyM) else v / w
        return v

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return _neg(self.unary())
        if self.peek()[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base, is_q = self.atom()
        if self.peek()[0] != "^":
            return base
        self.take()
        k = self.exponent()
        if is_q:
            return S ** (2 * k)
        if isinstance(base, PolyM):
            if k < 0:
                raise GrammarError("negative power of a polynomial", self.peek()[2])
            return base**k
        return base**k

    def exponent(self):
        tok = self.peek()
        if tok[0] == "(":
            self.take()
            k = self.exponent()
            self.take(")")
            return k
        sign = 1
        if tok[0] == "-":
            self.take()
            sign = -1
        return sign * self.take("int")[1]

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            return QScalar(val), False
        if kind == "var":
            return {"q": Q, "s": S, "u": U}[val], val == "q"
        if kind == "z":
            if self.n is None:
                raise GrammarError("generator needs n", pos)
            try:
                return PolyM.gen(self.n, *val), False
            except IndexError as exc:
                raise GrammarError(str(exc), pos) from None
        if kind == "(":
            v = self.expr()
            self.take(")")
            return v, False
        raise GrammarError(f"unexpected {val!r}", pos)


def _neg(v):
    return -v


def _add(v, w):
    if isinstance(v, PolyM) or isinstance(w, PolyM):
        if not isinstance(v, PolyM):
            return w + v
        return v + w
    return v + w


def _mul(v, w):
    if isinstance(v, PolyM) and isinstance(w, PolyM):
        return v * w
    if isinstance(v, PolyM):
        return v.scale(w)
    if isinstance(w, PolyM):
        return w.scale(v)
    return v * w


def _infer_n(text):
    idx = [int(x) for x in re.findall(r"z\[\s*(\d+)\s*,\s*(\d+)\s*\]", text) for x in x]
    return max(idx) if idx else 1


def parse_scalar(text: str) -> QScalar:
    v = _Parser(text, None).parse()
    return scalar(v)


def parse_poly(text: str, n: int | None = None) -> PolyM:
    if n is None:
        n = _infer_n(text)
    v = _Parser(text, n).parse()
    if not isinstance(v, PolyM):
        v = PolyM.const(n, v)
    return v


def render_scalar(x: QScalar) -> str:
    num = str(x.num)
    if x.den.is_one():
        return num
    return f"({num})/({x.den})"


def _render_coeff(c: QScalar) -> str:
    if c.den.is_one() and len(c.num.to_dict()) == 1:
        return render_scalar(c)
    if c.den.is_one():
        return f"({c.num})"
    return render_scalar(c)


def render_poly(f: PolyM) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for mono in sorted(f.terms, key=lambda m: (len(m), m)):
        c = f.terms[mono]
        gens = "*".join("z[%d,%d]" % gen_pair(f.n, g) for g in mono)
        if not gens:
            parts.append(_render_coeff(c))
        elif c == ONE:
            parts.append(gens)
        else:
            parts.append(f"{_render_coeff(c)}*{gens}")
    return " + ".join(parts)


__all__ = ["GrammarError", "parse_poly", "parse_scalar", "render_poly", "render_scalar", "gen_index"]
