import pytest
from hypothesis import given, strategies as st

from eghforge.hilbert import (
    HilbertSeries,
    divide_one_minus_t,
    hilbert_function,
    hilbert_series,
    poly_mul,
    q_polynomial,
    ses_identity_check,
)
from eghforge.ideals import IdealError, MonomialIdeal, contains, height
from eghforge.monomials import Monomial, enumerate_monomials

from conftest import ideal, ideals, monomials


def count_outside(I, d):
    return sum(1 for m in enumerate_monomials(I.n, d) if not contains(I, m))


def test_hilbert_function_examples(triangle):
    assert [hilbert_function(triangle, d) for d in range(4)] == [1, 3, 3, 3]
    assert hilbert_function(MonomialIdeal.zero(2), 4) == 5
    assert all(hilbert_function(ideal(1, "x1"), d) == 0 for d in range(1, 5))


def test_series_examples(triangle):
    assert hilbert_series(triangle).numerator == (1, 0, -3, 2)
    assert hilbert_series(MonomialIdeal.zero(4)).numerator == (1,)
    assert hilbert_series(ideal(1, "x1^2")).numerator == (1, 0, -1)
    assert str(hilbert_series(triangle)) == "(1 - 3*t^2 + 2*t^3) / (1-t)^3"


def test_q_polynomial_examples(triangle):
    assert q_polynomial(triangle) == ((1, 2), 1)
    assert q_polynomial(ideal(3, "x1^2", "x2^2", "x3^2")) == ((1, 3, 3, 1), 0)
    assert q_polynomial(MonomialIdeal.zero(2)) == ((1,), 2)
    with pytest.raises(IdealError):
        q_polynomial(MonomialIdeal.unit(2))


@given(ideals(max_n=4, max_gens=6, nonzero=False), st.integers(0, 7))
def test_series_expansion_matches_counting(I, d):
    assert hilbert_series(I).coefficient(d) == count_outside(I, d) == hilbert_function(I, d)


@given(ideals(max_n=4, max_gens=5))
def test_krull_dimension_is_n_minus_height(I):
    if I.is_unit():
        return
    Q, dim = q_polynomial(I)
    assert dim == I.n - height(I)
    # Q(1) is the multiplicity, positive
    assert sum(Q) > 0


def test_large_generator_sets_use_recursion():
    # 21 generators: beyond inclusion-exclusion, exercises the pivot branch
    I = MonomialIdeal(3, enumerate_monomials(3, 5))
    H = hilbert_series(I)
    assert H.expand(7) == [count_outside(I, d) for d in range(8)]
    # pairwise coprime generators: complete-intersection shortcut
    ci = MonomialIdeal(20, [Monomial.variable(20, j, 2) for j in range(1, 21)])
    expected = (1,)
    for _ in range(20):
        expected = poly_mul(expected, (1, 1))
    assert hilbert_series(ci).reduced() == (expected, 0)


@given(
    st.integers(1, 3).flatmap(
        lambda n: st.tuples(
            ideals(max_n=n, nonzero=False).filter(lambda I: I.n == n),
            monomials(n).filter(lambda m: m.degree > 0),
            st.integers(0, 6),
        )
    )
)
def test_ses_identity_always_holds(args):
    I, m, d = args
    assert ses_identity_check(I, m, d)


def test_ses_examples(triangle):
    assert ses_identity_check(triangle, Monomial.variable(3, 1), 2)
    assert ses_identity_check(MonomialIdeal.zero(3), Monomial.variable(3, 1), 4)
    assert ses_identity_check(ideal(1, "x1"), Monomial((1,)), 1)


def test_divide_one_minus_t():
    assert divide_one_minus_t((1, 0, -3, 2)) == (1, 1, -2)
    assert divide_one_minus_t((1, 1)) is None


@given(ideals(max_n=4, nonzero=False))
def test_json_roundtrip(I):
    H = hilbert_series(I)
    assert HilbertSeries.from_json(H.to_json()) == H
    assert all(isinstance(c, str) for c in H.to_json()["numerator"])


def test_same_function_ignores_denominator_power():
    a = HilbertSeries(3, (1, -1))
    b = HilbertSeries(2, (1,))
    assert a.same_function(b)
    assert not a.same_function(HilbertSeries(3, (1,)))
