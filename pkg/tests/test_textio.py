import pytest
from hypothesis import given
from hypothesis import strategies as st

from qwave.coeffs import ONE, Q, QScalar, S, U
from qwave.qmatrix import PolyM, det_q, normal_form
from qwave.textio import (
    GrammarError,
    parse_poly,
    parse_scalar,
    render_poly,
    render_scalar,
)


def test_parse_examples():
    assert parse_poly("z[1,1]*z[2,2] - q*z[1,2]*z[2,1]") == det_q(2)
    assert parse_poly("1", n=2) == PolyM.one(2)
    assert parse_poly("z[2,1]*z[1,1]") == normal_form(2, [(2, 1), (1, 1)])
    assert parse_poly("z[2,1]*z[1,1]") == PolyM.gen(2, 1, 1).scale(Q.inverse()) * PolyM.gen(2, 2, 1)


def test_parse_scalars():
    assert parse_scalar("q^2") == S**4
    assert parse_scalar("q^-1") == Q.inverse()
    assert parse_scalar("(1 - u^2)/(1 - q)") == (ONE - U**2) / (ONE - Q)
    assert parse_scalar("-3*s^3") == QScalar(-3) * S**3


def test_errors_carry_position():
    with pytest.raises(GrammarError) as exc:
        parse_poly("z[1,1] + $", n=2)
    assert exc.value.pos == 9
    with pytest.raises(SyntaxError):
        parse_poly("z[1,1] / z[2,2]", n=2)
    with pytest.raises(SyntaxError):
        parse_scalar("1/0")
    with pytest.raises(SyntaxError):
        parse_poly("z[3,1]", n=2)


def test_round_trip_det3():
    f = det_q(3)
    assert parse_poly(render_poly(f), n=3) == f


coef = st.sampled_from([ONE, -ONE, Q, S, U, (ONE - Q) / (ONE + U), QScalar(3) / S**3])
word = st.lists(st.tuples(st.integers(1, 2), st.integers(1, 2)), max_size=3)


@given(st.lists(st.tuples(coef, word), max_size=4))
def test_round_trip(terms):
    f = PolyM(2)
    for c, w in terms:
        f = f + normal_form(2, w, c)
    assert parse_poly(render_poly(f), n=2) == f


@given(coef)
def test_scalar_round_trip(c):
    assert parse_scalar(render_scalar(c)) == c
