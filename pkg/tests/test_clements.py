from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from eghforge.clements import (
    CapError,
    CapVector,
    LppInfeasible,
    basis,
    cl_count,
    is_lpp,
    lex_segment,
    lpp_from_hilbert,
    segment_span_growth,
    span_growth,
)
from eghforge.hilbert import hilbert_function
from eghforge.ideals import contains
from eghforge.monomials import Monomial, enumerate_monomials

from conftest import ideal


R322 = CapVector(3, (2, 2))


@st.composite
def rings(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    t = draw(st.integers(0, n))
    caps = sorted(draw(st.lists(st.integers(1, 4), min_size=t, max_size=t)))
    return CapVector(n, tuple(caps))


def test_cap_vector_validation():
    with pytest.raises(CapError, match="non-decreasing"):
        CapVector(3, (3, 2))
    with pytest.raises(CapError):
        CapVector(1, (2, 2))
    with pytest.raises(CapError):
        CapVector(2, (0,))
    assert R322.per_variable() == (2, 2, None)
    assert R322.tail() == CapVector(2, (2,))
    assert CapVector.from_json(R322.to_json()) == R322


def test_cl_count_examples():
    assert cl_count(R322, 2) == 4
    assert cl_count(CapVector(3, (2, 2, 2)), 3) == 1
    assert cl_count(CapVector(4, (3,)), 0) == 1


@given(rings(), st.integers(0, 7))
def test_cl_count_matches_enumeration(ring, d):
    assert cl_count(ring, d) == len(basis(ring, d))


def test_lex_segment_examples():
    assert lex_segment(R322, 2, 1).members == (Monomial((1, 1, 0)),)
    assert lex_segment(R322, 2, 0).members == ()
    assert [str(m) for m in lex_segment(R322, 2, 4).members] == ["x1*x2", "x1*x3", "x2*x3", "x3^2"]
    with pytest.raises(CapError):
        lex_segment(R322, 2, 5)


def test_span_growth_examples():
    assert segment_span_growth(lex_segment(R322, 2, 1)) == {Monomial((1, 1, 1))}
    assert segment_span_growth(lex_segment(R322, 2, 0)) == set()
    ring = CapVector(2, ())
    assert segment_span_growth(lex_segment(ring, 1, 2)) == set(enumerate_monomials(2, 2))


def test_lpp_from_hilbert_examples():
    W = lpp_from_hilbert([1, 3, 3, 3, 3, 3, 3], R322)
    assert W == ideal(3, "x1^2", "x1*x2", "x2^2")
    ring = CapVector(3, (2, 2, 2))
    assert lpp_from_hilbert([1, 3, 3, 1], ring) == ideal(3, "x1^2", "x2^2", "x3^2")
    with pytest.raises(LppInfeasible) as err:
        lpp_from_hilbert([1, 0, 5], CapVector(2, (2,)))
    assert err.value.degree == 2


def test_infeasible_reports_gluing_sets():
    # H(2) = 0 while H(3) > 0 cannot glue
    with pytest.raises(LppInfeasible) as err:
        lpp_from_hilbert([1, 2, 0, 1], CapVector(2, ()))
    assert err.value.degree == 3
    assert err.value.grown and not err.value.grown <= set(err.value.segment)
    assert err.value.to_json()["error"] == "infeasible"


def test_is_lpp_examples():
    assert is_lpp(ideal(3, "x1^2", "x1*x2", "x2^2"), R322)
    assert not is_lpp(ideal(3, "x1^2", "x2^2", "x1*x3"), R322)
    assert is_lpp(R322.power_ideal(), R322)
    assert not is_lpp(ideal(3, "x1*x2"), R322)


@given(rings(max_n=3), st.integers(0, 4), st.data())
def test_lex_segments_have_minimal_span_growth(ring, d, data):
    full = basis(ring, d)
    if not full:
        return
    V = data.draw(st.sets(st.sampled_from(full)))
    seg = lex_segment(ring, d, len(V))
    assert len(segment_span_growth(seg)) <= len(span_growth(ring, V))


def exhaustive_minimality(ring, d):
    full = basis(ring, d)
    checked = 0
    for s in range(len(full) + 1):
        best = len(segment_span_growth(lex_segment(ring, d, s)))
        for V in combinations(full, s):
            assert best <= len(span_growth(ring, V))
            checked += 1
    return checked


@pytest.mark.parametrize(
    "caps, subsets",
    [((2, 2, 2), 8), ((3, 3, 3), 64), ((), 64)],
)
def test_lex_segment_minimality_exhaustive(caps, subsets):
    # caps (2,2,2) leave only the three squarefree quadrics in degree 2
    assert exhaustive_minimality(CapVector(3, caps), 2) == subsets


@given(rings(max_n=3), st.lists(st.integers(0, 6), min_size=2, max_size=6))
def test_lpp_realizes_its_targets(ring, raw):
    # targets taken from an honest LPP build are realized exactly
    H = [1] + [min(h, cl_count(ring, d)) for d, h in enumerate(raw[1:], 1)]
    try:
        W = lpp_from_hilbert(H, ring)
    except LppInfeasible:
        return
    assert all(contains(W, p) for p in ring.power_ideal().gens)
    assert [hilbert_function(W, d) for d in range(len(H))] == H
    assert is_lpp(W, ring, max_degree=len(H))
