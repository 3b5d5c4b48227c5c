import csv

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st
from oracles import q, q_series_coeff, same, to_sympy

from qwave.coeffs import ONE, ZERO, Q, QScalar, q_pochhammer
from qwave.report import failures
from qwave.symfunc import (
    Partition,
    SymSeries,
    TooManyParts,
    c_coeff,
    fk_constant,
    kernel_schur_coeffs,
    milne_C,
    milne_series,
    monomial_to_schur,
    partitions_upto,
    schur,
    schur_tableaux,
    schur_to_monomial,
    telescoped_series,
    verify_kernel_coeffs,
    verify_milne,
    write_coefficients_csv,
)


def test_partition_validation():
    assert Partition((2, 1, 0)).size == 3
    assert Partition((2, 1, 0)).length == 2
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(TooManyParts):
        Partition((1, 1, 1)).padded(2)


def test_schur_examples():
    assert schur((1,), 2).coeffs == {(1, 0): ONE, (0, 1): ONE}
    assert schur((2,), 2).coeffs == {(2, 0): ONE, (1, 1): ONE, (0, 2): ONE}
    assert schur((2, 1), 2).coeffs == {(2, 1): ONE, (1, 2): ONE}
    with pytest.raises(TooManyParts):
        schur((1, 1, 1), 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_jacobi_trudi_matches_tableaux(n):
    for k in partitions_upto(4, n):
        assert schur(k, n).coeffs == schur_tableaux(k, n)


def test_schur_dimension_count():
    # s_k(1, ..., 1) counts tableaux; s_(2,1) in 3 variables has 8
    assert sum(schur_tableaux((2, 1), 3).values(), ZERO) == QScalar(8)


coef = st.sampled_from([ONE, -ONE, Q, (ONE - Q) / (ONE + Q**2), QScalar(5)])


@given(st.dictionaries(st.sampled_from(list(partitions_upto(5, 3))), coef, max_size=5))
def test_schur_monomial_round_trip(table):
    table = {k: v for k, v in table.items()}
    mono = schur_to_monomial(table, 3)
    assert monomial_to_schur(mono, 3) == {k: v for k, v in table.items() if not v.is_zero()}
    assert SymSeries(3, 5, mono).is_symmetric()


def test_milne_examples():
    for n in (1, 2, 3):
        assert milne_C((), "sym", n) == ONE
        assert milne_C((), 6, n) == ONE
    for N in (1, 2, 3):
        for m in range(4):
            assert milne_C((m,), 2 * N, 1) == q_pochhammer(2 * N, m) / q_pochhammer(2, m)


def test_milne_n2_first_coefficient_against_series():
    for N in (2, 3):
        want = q_series_coeff(2, N, (1, 0))
        assert same(to_sympy(milne_C((1, 0), 2 * N, 2)), want)


def test_kernel_n1_degree2_q_binomial():
    for N in (1, 2, 3):
        got = kernel_schur_coeffs(N, 1, 2)[Partition((2,))]
        want = (ONE - Q ** (2 * N)) * (ONE - Q ** (2 * N + 2)) / ((ONE - Q**2) * (ONE - Q**4))
        assert got == want
        assert same(to_sympy(got), q_series_coeff(1, N, (2,)))


def test_kernel_cauchy_szego_case():
    got = kernel_schur_coeffs(2, 2, 3)
    for k in partitions_upto(3, 2):
        assert got[k] == milne_C(k, 4, 2)
    assert got[Partition((0, 0))] == ONE


def test_c_coeff_examples():
    for k in partitions_upto(4, 2):
        assert c_coeff(k, 2, 2) == ONE
    for N in (2, 3, 5):
        assert c_coeff((1, 0), N, 2) == (ONE - Q ** (2 * N)) / (ONE - Q**4)
        assert c_coeff((), N, 2) == ONE


def test_fk_constant_examples():
    assert fk_constant((2,), 1, 1) == ONE + Q**2
    assert fk_constant((), "sym", 3) == ONE
    assert fk_constant((1, 1), 1, 2) == ZERO
    assert fk_constant((1, 1), "sym", 2).subs_u(Q) == ZERO


def test_fk_constant_large_lambda_limit():
    for k in partitions_upto(4, 2):
        assert fk_constant(k, "sym", 2).subs_u(ZERO) == (ONE - Q**2) ** (-k.size)


def test_telescoping_matches_infinite_product():
    for N in (1, 2, 3):
        assert telescoped_series(N, 2, 4).coeffs == milne_series(2 * N, 2, 4).coeffs


@pytest.mark.parametrize("n", [1, 2, 3])
def test_milne_identity(n):
    assert not failures(verify_milne(n, 5))


def test_prop_coefficients():
    assert not failures(verify_kernel_coeffs(2, 4))


def test_csv_export(tmp_path):
    path = tmp_path / "k.csv"
    write_coefficients_csv(kernel_schur_coeffs(2, 2, 2), path)
    rows = list(csv.reader(open(path)))
    assert rows[0] == ["partition", "coefficient"]
    assert rows[1] == ["0 0", "1"]
    assert len(rows) == 1 + 4


def test_symbolic_q_sanity():
    assert same(to_sympy(Q), q)
    assert sp.simplify(to_sympy(ONE + Q) - (1 + q)) == 0
