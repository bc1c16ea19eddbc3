from itertools import product

import pytest
from hypothesis import given, strategies as st

from eghforge.monomials import (
    Monomial,
    MonomialError,
    compare_lex,
    enumerate_monomials,
    format_monomial,
    num_monomials,
    parse_monomial,
)

from conftest import monomials


@pytest.mark.parametrize(
    "u, v, expected",
    [
        ((1, 1, 0), (2, 0, 0), -1),
        ((1, 1, 0), (1, 1, 0), 0),
        ((0, 0, 3), (1, 1, 0), 1),
    ],
)
def test_compare_lex_examples(u, v, expected):
    assert compare_lex(u, v) == expected


def test_compare_lex_rejects_mismatched_length():
    with pytest.raises(MonomialError):
        compare_lex((1, 0), (1, 0, 0))


def test_enumerate_examples():
    assert enumerate_monomials(2, 2) == ((2, 0), (1, 1), (0, 2))
    assert enumerate_monomials(3, 2, (2, 2, None)) == ((1, 1, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2))
    assert enumerate_monomials(1, 3, (2,)) == ()


def test_enumerate_zero_variables():
    assert enumerate_monomials(0, 0) == ((),)
    assert enumerate_monomials(0, 2) == ()
    assert num_monomials(0, 0) == 1 and num_monomials(0, 3) == 0


def brute_force(n, d, caps):
    out = [
        Monomial(e)
        for e in product(range(d + 1), repeat=n)
        if sum(e) == d and all(c is None or x < c for x, c in zip(e, caps))
    ]
    return sorted(out, reverse=True)


@given(
    st.integers(1, 4),
    st.integers(0, 5),
    st.lists(st.one_of(st.none(), st.integers(1, 4)), min_size=4, max_size=4),
)
def test_enumerate_matches_brute_force(n, d, caps):
    caps = tuple(caps[:n])
    got = enumerate_monomials(n, d, caps)
    assert list(got) == brute_force(n, d, caps)
    if all(c is None for c in caps):
        assert len(got) == num_monomials(n, d)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(monomials(n), monomials(n), monomials(n))))
def test_lex_is_a_monomial_order(triple):
    u, v, w = triple
    # total, and compatible with multiplication
    assert (compare_lex(u, v) == 0) == (u == v)
    assert compare_lex(u, v) == -compare_lex(v, u)
    assert compare_lex(u * w, v * w) == compare_lex(u, v)
    assert sorted([u, v]) == sorted([u, v], key=Monomial.sort_key)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(monomials(n), monomials(n))))
def test_gcd_lcm_divides(pair):
    u, v = pair
    g, l = u.gcd(v), u.lcm(v)
    assert g.divides(u) and g.divides(v) and u.divides(l) and v.divides(l)
    assert g * l == u * v
    assert (u * v) / v == u


def test_division_requires_divisibility():
    with pytest.raises(MonomialError):
        Monomial((1, 0)) / Monomial((0, 1))


def test_variable_and_support():
    m = Monomial.variable(4, 3, 2)
    assert m == (0, 0, 2, 0) and m.degree == 2 and m.support == {3}
    assert m.times_variable(1) == (1, 0, 2, 0)
    assert m.drop_variable(3) == (0, 0, 0)
    with pytest.raises(MonomialError):
        Monomial.variable(2, 3)


def test_respects_caps():
    assert Monomial((1, 1, 5)).respects((2, 2, None))
    assert not Monomial((2, 0, 0)).respects((2, 2, None))


@pytest.mark.parametrize("text, n, exps", [("x1^2*x3", 3, (2, 0, 1)), ("1", 2, (0, 0)), ("x2*x2", 2, (0, 2))])
def test_parse(text, n, exps):
    assert parse_monomial(text, n) == exps


@pytest.mark.parametrize("text", ["x4", "y1", "x1^", "x0", ""])
def test_parse_rejects(text):
    with pytest.raises(MonomialError):
        parse_monomial(text, 3)


@given(st.integers(1, 4).flatmap(monomials))
def test_format_roundtrip(m):
    assert parse_monomial(format_monomial(m), len(m)) == m


def test_negative_exponent_rejected():
    with pytest.raises(MonomialError):
        Monomial((1, -1))
