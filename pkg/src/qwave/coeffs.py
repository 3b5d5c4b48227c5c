"""Exact scalars in Q(s, u), where q = s**2 and u stands for q**lambda.

Numerators and denominators are integer polynomials (python-flint
``fmpz_mpoly``); every value is kept reduced with a positive leading
denominator coefficient, so ``==`` is mathematical equality.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral, Rational

import flint
import mpmath

_CTX = flint.fmpz_mpoly_ctx.get(("s", "u"), "deglex")
_S, _U = _CTX.gens()
_ONE_P = _CTX.from_dict({(0, 0): 1})
_ZERO_P = _CTX.from_dict({})


class ZeroDenominator(ZeroDivisionError):
    pass


class PoleAtPoint(ArithmeticError):
    pass


def _poly(x):
    if isinstance(x, flint.fmpz_mpoly):
        return x
    return _CTX.from_dict({(0, 0): int(x)}) if x else _ZERO_P


class QScalar:
    """Immutable element of Q(s, u)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1, *, _reduced=False):
        if isinstance(num, QScalar) and den == 1:
            self.num, self.den, self._hash = num.num, num.den, num._hash
            return
        if isinstance(num, Rational) and not isinstance(num, Integral):
            num, den = Fraction(num), Fraction(den)
            num, den = num.numerator * den.denominator, num.denominator * den.numerator
        num, den = _poly(num), _poly(den)
        if den.is_zero():
            raise ZeroDenominator("zero denominator")
        if not _reduced:
            if num.is_zero():
                den = _ONE_P
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num, den = num / g, den / g
                if den.leading_coefficient() < 0:
                    num, den = -num, -den
        self.num, self.den, self._hash = num, den, None

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return QScalar(self.num + other.num, self.den)
        return QScalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return QScalar(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        # cross-cancel first keeps the gcds small
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        num = (self.num / g1) * (other.num / g2)
        den = (self.den / g2) * (other.den / g1)
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return QScalar(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return QScalar(num, den, _reduced=True)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return QScalar(self.num**k, self.den**k, _reduced=True)

    # -- comparisons ----------------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(self.num.to_dict().items()), tuple(self.den.to_dict().items())))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def has_u(self) -> bool:
        return self.num.degrees()[1] > 0 or self.den.degrees()[1] > 0

    # -- substitution / evaluation ------------------------------------------
    def subs_u(self, value) -> "QScalar":
        """Replace u by ``value`` (a QScalar or integer)."""
        value = _coerce(value)
        num = _compose(self.num, value)
        den = _compose(self.den, value)
        return num / den

    def __call__(self, q_val: float, lambda_val: float = 0.0) -> float:
        return eval_numeric(self, q_val, lambda_val)

    def __repr__(self):
        return f"QScalar({self})"

    def __str__(self):
        from .textio import render_scalar

        return render_scalar(self)


def _compose(p, value: QScalar) -> QScalar:
    """Evaluate polynomial p(s, u) at u = value, exactly."""
    acc = ZERO
    for (es, eu), c in p.to_dict().items():
        acc = acc + QScalar(c * _S**es) * value**eu
    return acc


def _coerce(x):
    if isinstance(x, QScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return QScalar(x)
    return NotImplemented


ZERO = QScalar(0)
ONE = QScalar(1)
S = QScalar(_S)
U = QScalar(_U)
Q = S * S


def scalar(x) -> QScalar:
    """Coerce ints, Fractions and QScalars."""
    out = _coerce(x)
    if out is NotImplemented:
        raise TypeError(f"cannot make a QScalar from {x!r}")
    return out


def normalize(raw_num, raw_den) -> QScalar:
    if isinstance(raw_den, QScalar) or isinstance(raw_num, QScalar):
        den = scalar(raw_den)
        if den.is_zero():
            raise ZeroDenominator("zero denominator")
        return scalar(raw_num) / den
    return QScalar(raw_num, raw_den)


def q_pow(k) -> QScalar:
    """q**k = s**(2k); k may be a half-integer given as Fraction."""
    k2 = Fraction(k) * 2
    if k2.denominator != 1:
        raise ValueError("only integer or half-integer powers of q")
    return S ** int(k2)


def q_lambda(lam) -> QScalar:
    """q**lambda: u for symbolic lambda (None / 'sym'), s**(2 lambda) for integers."""
    if lam is None or lam == "sym":
        return U
    return q_pow(lam)


def qpoch(x: QScalar, N: int) -> QScalar:
    """(x; q^2)_N."""
    acc = ONE
    for j in range(N):
        acc = acc * (ONE - x * q_pow(2 * j))
    return acc


def q_pochhammer(m: int, N: int, in_u: bool = False) -> QScalar:
    """(x; q^2)_N with x = q**m, or x = u**2 q**m when ``in_u``."""
    x = q_pow(m)
    if in_u:
        x = x * U * U
    return qpoch(x, N)


def eval_numeric(x: QScalar, q_val: float, lambda_val: float = 0.0) -> float:
    with mpmath.workdps(50):
        s_val = mpmath.sqrt(mpmath.mpf(q_val))
        u_val = mpmath.power(mpmath.mpf(q_val), mpmath.mpf(lambda_val))

        def ev(p):
            return mpmath.fsum(
                int(c) * s_val ** int(es) * u_val ** int(eu) for (es, eu), c in p.to_dict().items()
            )

        den = ev(x.den)
        if abs(den) < mpmath.mpf("1e-30"):
            raise PoleAtPoint(f"denominator of {x} vanishes at q={q_val}, lambda={lambda_val}")
        return float(ev(x.num) / den)
