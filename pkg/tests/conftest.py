import random

import pytest
from hypothesis import settings, strategies as st

from eghforge import MonomialIdeal, Monomial
from eghforge.simplicial import SimplicialComplex

settings.register_profile("eghforge", max_examples=60, deadline=None, derandomize=True, database=None)
settings.load_profile("eghforge")


def ideal(n, *gens):
    return MonomialIdeal.from_strings(n, gens)


@st.composite
def monomials(draw, n, max_deg=3):
    exps = draw(st.lists(st.integers(0, max_deg), min_size=n, max_size=n))
    return Monomial(exps)


@st.composite
def ideals(draw, max_n=4, max_gens=5, max_deg=3, nonzero=True):
    n = draw(st.integers(1, max_n))
    gens = draw(
        st.lists(monomials(n, max_deg).filter(lambda m: m.degree > 0), min_size=int(nonzero), max_size=max_gens)
    )
    return MonomialIdeal(n, gens)


@st.composite
def complexes(draw, max_vertices=6):
    nv = draw(st.integers(1, max_vertices))
    verts = [str(i) for i in range(1, nv + 1)]
    facets = draw(
        st.lists(st.sets(st.sampled_from(verts), min_size=1, max_size=min(nv, 4)), min_size=1, max_size=6)
    )
    used = sorted({v for f in facets for v in f}, key=int)
    return SimplicialComplex.from_facets(facets, used)


def random_ideal(rng: random.Random, max_n=5, max_gens=6, max_deg=4) -> MonomialIdeal:
    n = rng.randint(1, max_n)
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        d = rng.randint(1, max_deg)
        e = [0] * n
        for _ in range(d):
            e[rng.randrange(n)] += 1
        gens.append(Monomial(e))
    return MonomialIdeal(n, gens)


def random_complex(rng: random.Random, max_vertices=7) -> SimplicialComplex:
    nv = rng.randint(1, max_vertices)
    verts = [str(i) for i in range(1, nv + 1)]
    facets = [rng.sample(verts, rng.randint(1, min(nv, 4))) for _ in range(rng.randint(1, 6))]
    used = sorted({v for f in facets for v in f}, key=int)
    return SimplicialComplex.from_facets(facets, used)


@pytest.fixture
def triangle():
    return ideal(3, "x1*x2", "x1*x3", "x2*x3")


@pytest.fixture
def octahedron():
    facets = [(a, b, c) for a in "12" for b in "34" for c in "56"]
    return SimplicialComplex.from_facets(facets)


@pytest.fixture
def hollow_triangle():
    return SimplicialComplex.from_facets([("1", "2"), ("1", "3"), ("2", "3")])
