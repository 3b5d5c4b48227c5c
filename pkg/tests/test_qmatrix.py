from hypothesis import given
from hypothesis import strategies as st

from qwave.coeffs import ONE, Q, QScalar, q_pow
from qwave.qmatrix import (
    GLPoly,
    PolyM,
    basis_size,
    det_q,
    det_star_scalar,
    monomial_basis,
    normal_form,
    q_minor,
    shilov_star,
    verify_confluence,
    verify_pbw,
    verify_structure,
)
from qwave.report import failures


def z(n, a, alpha):
    return PolyM.gen(n, a, alpha)


def test_normal_form_examples():
    assert normal_form(2, [(2, 1), (1, 1)]) == z(2, 1, 1).scale(Q.inverse()) * z(2, 2, 1)
    qq = Q - Q.inverse()
    assert normal_form(2, [(2, 2), (1, 1)]) == z(2, 1, 1) * z(2, 2, 2) - (z(2, 1, 2) * z(2, 2, 1)).scale(qq)
    # a < b, alpha > beta: the pair commutes
    assert normal_form(2, [(2, 1), (1, 2)]) == z(2, 1, 2) * z(2, 2, 1)


def test_det_is_minor_and_two_by_two():
    n = 2
    assert det_q(n) == z(n, 1, 1) * z(n, 2, 2) - (z(n, 1, 2) * z(n, 2, 1)).scale(Q)
    assert q_minor(3, (1, 2, 3), (1, 2, 3)) == det_q(3)


def test_det_central():
    for n in (2, 3):
        d = det_q(n)
        for a in range(1, n + 1):
            for alpha in range(1, n + 1):
                g = z(n, a, alpha)
                assert d * g == g * d


def test_det_star():
    assert det_star_scalar(2) == q_pow(-2)
    assert det_star_scalar(3) == q_pow(-6)
    for n in (2, 3):
        assert GLPoly(det_q(n)) * shilov_star(det_q(n)) == GLPoly(PolyM.const(n, Q ** (-n * (n - 1))))


def test_star_involutive_on_generators():
    for n in (1, 2, 3):
        for m in monomial_basis(n, 1):
            f = PolyM(n, {m: ONE})
            assert shilov_star(shilov_star(f)) == f


def test_basis_counts():
    assert [basis_size(2, d) for d in range(5)] == [1, 4, 10, 20, 35]
    assert basis_size(3, 4) == 495


def test_pbw_and_confluence():
    for n in (2, 3):
        assert not failures(verify_pbw(n, 3))
        assert not failures(verify_confluence(n))
        assert not failures(verify_structure(n))


gen2 = st.tuples(st.integers(1, 2), st.integers(1, 2))
words2 = st.lists(gen2, max_size=4)


@given(words2, words2, words2)
def test_associative(w1, w2, w3):
    a, b, c = (normal_form(2, w) for w in (w1, w2, w3))
    assert (a * b) * c == a * (b * c)


@given(words2)
def test_normal_form_is_homogeneous_and_ordered(w):
    f = normal_form(2, w)
    assert f.degrees() <= {len(w)}
    assert all(list(m) == sorted(m) for m in f.terms)


@given(words2, st.integers(-3, 3))
def test_scale_distributes(w, k):
    f = normal_form(2, w)
    c = QScalar(k)
    assert f.scale(c) + f == f.scale(c + ONE)
