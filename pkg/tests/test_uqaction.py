from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qwave.coeffs import ONE, Q, S, U
from qwave.qmatrix import PolyM, basis_size, det_q, normal_form
from qwave.report import failures
from qwave.uqaction import (
    INITIAL,
    E,
    F,
    K,
    Kinv,
    NotEigenvector,
    act,
    act_element,
    decompose_degree,
    degree_via_khat,
    generators,
    reduce_word,
    star_word,
    twisted,
    verify_grading,
    verify_hopf_relations,
)

SYM = twisted("sym")


def z(n, a, alpha):
    return PolyM.gen(n, a, alpha)


def test_act_examples():
    assert act(K(2), INITIAL, z(2, 2, 2)) == z(2, 2, 2).scale(Q**2)
    assert act(F(2), INITIAL, z(2, 2, 2)) == PolyM.const(2, S)
    c = -S * (ONE - U**2) / (ONE - Q**2)
    assert act(E(2), SYM, PolyM.one(2)) == z(2, 2, 2).scale(c)
    assert act(E(2), INITIAL, PolyM.one(2)).is_zero()


def test_twisted_integer_matches_symbolic():
    f = z(2, 1, 2) * z(2, 2, 2)
    for g in generators(2):
        sym = act(g, SYM, f).map_coeffs(lambda c: c.subs_u(Q**3))
        assert sym == act(g, twisted(3), f)


def test_star_word_examples():
    assert star_word(E(2), 2) == {(K(2), F(2)): -ONE}
    assert star_word(K(1), 2) == {(K(1),): ONE}
    assert star_word(Kinv(3), 2) == {(Kinv(3),): ONE}
    assert star_word(E(1), 2) == {(K(1), F(1)): ONE}


@pytest.mark.parametrize("g", generators(2))
def test_star_is_involutive(g):
    # oracle: reduce both sides to K-letters-right canonical words
    assert reduce_word(star_word(star_word(g, 2), 2), 2) == reduce_word(g, 2)


def test_degree_via_khat():
    assert degree_via_khat(PolyM.one(2)) == 0
    assert degree_via_khat(z(2, 1, 2)) == 1
    assert degree_via_khat(det_q(2)) == 2
    assert degree_via_khat(det_q(3)) == 3
    with pytest.raises(NotEigenvector):
        degree_via_khat(PolyM(2))


def test_grading_n_le_3():
    for n in (1, 2, 3):
        assert not failures(verify_grading(n, 3))


def test_relation_examples():
    cases = {c.id: c for c in verify_hopf_relations(2, INITIAL, 2)}
    assert all(cases[f"[E1,E3]=0 deg{d}"].status == "pass" for d in range(3))
    assert all(cases[f"[E2,F2] deg{d}"].status == "pass" for d in range(3))
    assert not failures(cases.values())
    assert not failures(verify_hopf_relations(2, SYM, 2))


def test_relations_other_lambdas():
    for lam in (0, 1, 3, -1):
        assert not failures(verify_hopf_relations(2, twisted(lam), 2))


def test_relations_n3():
    assert not failures(verify_hopf_relations(3, INITIAL, 2))
    assert not failures(verify_hopf_relations(3, SYM, 2))


def test_alternative_e_n_ordering_is_rejected():
    # the other reading of the E_n formula breaks the defining relations
    assert failures(verify_hopf_relations(2, INITIAL, 2, variant="nn_right"))


def weyl_dim(k):
    """dim of the gl_n irrep with highest weight k, by the Weyl formula."""
    n = len(k)
    num = Fraction(1)
    for i, j in combinations(range(n), 2):
        num *= Fraction(k[i] - k[j] + j - i, j - i)
    return int(num)


@pytest.mark.parametrize("n,d", [(1, 3), (2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)])
def test_decompose_dimensions(n, d):
    comps = decompose_degree(n, d)
    assert sum(len(b) for _, b in comps) == basis_size(n, d)
    for k, basis in comps:
        assert len(basis) == weyl_dim(k) ** 2


def test_decompose_examples():
    ((k, basis),) = decompose_degree(2, 1)
    assert k == (1, 0) and basis[0] == z(2, 2, 2)
    comps = dict(decompose_degree(2, 2))
    assert comps[(2, 0)][0] == z(2, 2, 2) ** 2
    assert comps[(1, 1)] == (det_q(2),)
    ((k, basis),) = decompose_degree(1, 4)
    assert k == (4,) and basis == (z(1, 1, 1) ** 4,)


word = st.lists(st.tuples(st.integers(1, 2), st.integers(1, 2)), min_size=0, max_size=3)


@given(word, word, st.sampled_from(generators(2)))
def test_module_algebra_rule(w1, w2, g):
    """Action on products follows the coproduct."""
    f, h = normal_form(2, w1), normal_form(2, w2)
    lhs = act(g, INITIAL, f * h)
    if g.kind in ("K", "Kinv"):
        rhs = act(g, INITIAL, f) * act(g, INITIAL, h)
    elif g.kind == "E":
        rhs = act(g, INITIAL, f) * h + act(K(g.i), INITIAL, f) * act(g, INITIAL, h)
    else:
        rhs = act(g, INITIAL, f) * act(Kinv(g.i), INITIAL, h) + f * act(g, INITIAL, h)
    assert lhs == rhs


@given(word, st.sampled_from(generators(2)))
def test_act_element_single_letter(w, g):
    f = normal_form(2, w)
    assert act_element({(g,): ONE}, INITIAL, f) == act(g, INITIAL, f)
