import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qwave.coeffs import (
    ONE,
    ZERO,
    PoleAtPoint,
    Q,
    QScalar,
    S,
    U,
    ZeroDenominator,
    eval_numeric,
    normalize,
    q_lambda,
    q_pochhammer,
)


def test_normalize_examples():
    assert normalize(S**4 - 1, S**2 - 1) == S**2 + 1
    assert normalize(0, 7) == ZERO
    assert normalize(U**2 - 1, U - 1) == U + 1
    with pytest.raises(ZeroDenominator):
        normalize(S, 0)


def test_normalize_idempotent_and_canonical():
    x = normalize(S**4 - 1, S**2 - 1)
    assert normalize(x.num, x.den) == x
    y = normalize(-(S**2) - 1, -ONE)
    assert (y.num, y.den) == (x.num, x.den)
    assert hash(x) == hash(y)


def test_q_pochhammer_examples():
    assert q_pochhammer(2, 2) == (ONE - Q**2) * (ONE - Q**4)
    assert q_pochhammer(0, 1) == ZERO
    assert q_pochhammer(7, 0) == ONE
    assert q_pochhammer(-3, 0, in_u=True) == ONE
    assert q_pochhammer(0, 2, in_u=True) == (ONE - U**2) * (ONE - U**2 * Q**2)


@given(st.integers(-6, 6), st.integers(0, 5))
def test_q_pochhammer_recursion(m, N):
    assert q_pochhammer(m, N + 1) == q_pochhammer(m, N) * (ONE - Q ** (m + 2 * N))


def test_eval_numeric_examples():
    assert eval_numeric(Q**2, 0.5, 0) == pytest.approx(0.25, rel=1e-12)
    assert eval_numeric(U**2, 0.5, 2) == pytest.approx(0.0625, rel=1e-12)
    assert eval_numeric(S, 0.5) == pytest.approx(math.sqrt(0.5), rel=1e-12)
    with pytest.raises(PoleAtPoint):
        eval_numeric(ONE / (ONE - U), 0.5, 0)


def test_q_lambda():
    assert q_lambda("sym") == U
    assert q_lambda(None) == U
    assert q_lambda(3) == Q**3
    assert q_lambda(-1) == Q.inverse()


small = st.integers(-3, 3)


@st.composite
def scalars(draw):
    terms = draw(st.lists(st.tuples(small, st.integers(0, 3), st.integers(0, 2)), min_size=1, max_size=3))
    num = sum((QScalar(c) * S**i * U**j for c, i, j in terms), ZERO)
    den = draw(st.sampled_from([ONE, S, ONE + S**2, ONE - U, S**2 - U * S]))
    return num / den


@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    if not a.is_zero():
        assert a * a.inverse() == ONE
        assert (b / a) * a == b


@given(scalars(), st.integers(-3, 3))
def test_powers(a, k):
    if a.is_zero() and k < 0:
        return
    assert a**k * a == a ** (k + 1) or a.is_zero()


@given(scalars())
def test_subs_u_matches_numeric(a):
    try:
        v = eval_numeric(a, 0.3, 2)
    except PoleAtPoint:
        return
    w = eval_numeric(a.subs_u(Q**2), 0.3, 0)
    assert w == pytest.approx(v, rel=1e-9, abs=1e-12)
