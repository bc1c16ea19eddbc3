"""Eisenbud-Green-Harris witnesses for monomial ideals.

Given a monomial ideal ``I`` containing a regular sequence of type
``A = (a_1, ..., a_t)``, a witness is a lex-plus-powers ideal containing
``x_1^{a_1}, ..., x_t^{a_t}`` with the same Hilbert function as ``I``.

:func:`egh_witness` is the production path: read off ``H(S/I)`` and build
lex segments in the Clements-Lindstrom ring.  :func:`egh_witness_recursive`
rebuilds the same per-degree data by the inductive construction (split off
the factors of a degree-``a_1`` monomial, recurse in one variable fewer,
glue the pieces along powers of ``x_1``) and serves as a cross-check.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Optional, Sequence

from .clements import (
    CapVector,
    cl_count,
    is_lpp,
    lex_segment,
    lpp_from_hilbert,
)
from .hilbert import hilbert_function, hilbert_series, ses_identity_check
from .ideals import (
    MonomialIdeal,
    add,
    colon,
    contains,
    generator_degree_range,
    graded_piece_dim,
    height,
    monomial_regular_sequence,
    quotient_mod_variable,
)
from .linforms import ProductOfLinearForms, search_regular_sequence
from .monomials import Monomial, enumerate_monomials, format_monomial, num_monomials


class Trust(str, enum.Enum):
    MONOMIAL = "monomial"
    LINEAR = "linear"
    ASSUME = "assume"


class DegreeSequenceRejected(ValueError):
    """Requested degrees violate the generator-degree bounds or the height."""


class CertificateNotFound(LookupError):
    """No regular-sequence certificate of an admissible type was found."""


class HypothesisViolation(ValueError):
    """The input does not satisfy what the inductive construction needs."""


class ConstructionError(AssertionError):
    """An identity that must hold inside the recursive construction failed."""


# -- degree sequences --------------------------------------------------------


@dataclass(frozen=True)
class DegreeChoice:
    ring: CapVector
    trust: Trust
    certificate: Optional[tuple[ProductOfLinearForms, ...]] = None
    bounds: tuple[int, int] = (0, 0)


def _certificate(I, caps, trust, seed, attempts):
    if trust is Trust.ASSUME:
        return None
    if trust is Trust.MONOMIAL:
        mono = monomial_regular_sequence(I, caps)
        if mono is None:
            return None
        return tuple(ProductOfLinearForms.from_monomial(m) for m in mono)
    return search_regular_sequence(I, caps, seed=seed, attempts=attempts)


def choose_degree_sequence(
    I: MonomialIdeal,
    caps: Optional[Sequence[int]] = None,
    trust: Trust | str = Trust.LINEAR,
    seed: int = 0,
    attempts: int = 2000,
) -> DegreeChoice:
    """Pick the type ``A`` of a regular sequence in ``I``.

    ``A`` has length ``height(I)`` and entries between the smallest and the
    largest minimal-generator degree.  Without ``caps`` the lexicographically
    smallest admissible ``A`` carrying a certificate is returned; under
    ``Trust.ASSUME`` it is ``(mindeg, ..., mindeg)`` with no certificate.
    """
    trust = Trust(trust)
    t = height(I)
    lo, hi = generator_degree_range(I)
    if caps is not None:
        caps = tuple(int(a) for a in caps)
        if len(caps) != t:
            raise DegreeSequenceRejected(f"need {t} degrees (the height), got {len(caps)}")
        if any(a < lo or a > hi for a in caps):
            raise DegreeSequenceRejected(
                f"degrees {caps} outside the generator degree range [{lo}, {hi}]"
            )
        ring = CapVector(I.n, caps)
        cert = _certificate(I, caps, trust, seed, attempts)
        if trust is not Trust.ASSUME and cert is None:
            raise CertificateNotFound(f"no {trust.value} certificate of type {caps}")
        return DegreeChoice(ring, trust, cert, (lo, hi))
    if trust is Trust.ASSUME:
        return DegreeChoice(CapVector(I.n, (lo,) * t), trust, None, (lo, hi))
    for cand in combinations_with_replacement(range(lo, hi + 1), t):
        cert = _certificate(I, cand, trust, seed, attempts)
        if cert is not None:
            return DegreeChoice(CapVector(I.n, cand), trust, cert, (lo, hi))
    raise CertificateNotFound(f"no {trust.value} certificate with degrees in [{lo}, {hi}]")


# -- direct construction -----------------------------------------------------


@dataclass
class WitnessResult:
    witness: MonomialIdeal
    ring: CapVector
    horizon: int
    certified: bool
    targets: list[int]
    segments: list[int]
    attempts: int = 1

    def to_json(self) -> dict:
        return {
            "witness": self.witness.to_json(),
            "caps": list(self.ring.caps),
            "certified": self.certified,
            "horizon": self.horizon,
            "per_degree": [
                {"d": d, "target": str(h), "segment": str(s)}
                for d, (h, s) in enumerate(zip(self.targets, self.segments))
            ],
        }


def default_horizon(I: MonomialIdeal, ring: CapVector) -> int:
    return I.max_degree + sum(ring.caps) + 2


def egh_witness(
    I: MonomialIdeal,
    ring: CapVector,
    D: Optional[int] = None,
    max_retries: int = 3,
) -> WitnessResult:
    """Lex-plus-powers ideal with the Hilbert function of ``I``, certified by series.

    The construction only looks at degrees ``0..D``; certification compares
    the reduced Hilbert series exactly, doubling ``D`` on mismatch.
    """
    if ring.n != I.n:
        raise ValueError(f"ring has {ring.n} variables, ideal has {I.n}")
    D = default_horizon(I, ring) if D is None else D
    target_series = hilbert_series(I)
    for attempt in range(max_retries + 1):
        H = target_series.expand(D)
        W = lpp_from_hilbert(H, ring)
        sizes = [cl_count(ring, d) - h for d, h in enumerate(H)]
        if hilbert_series(W).same_function(target_series):
            return WitnessResult(W, ring, D, True, H, sizes, attempt + 1)
        if attempt < max_retries:
            D *= 2
    return WitnessResult(W, ring, D, False, H, sizes, max_retries + 1)


@dataclass
class WitnessReport:
    series_equal: bool
    powers_contained: bool
    lex_plus_powers: bool

    @property
    def passed(self) -> bool:
        return self.series_equal and self.powers_contained and self.lex_plus_powers

    def to_json(self) -> dict:
        return {
            "series_equal": self.series_equal,
            "powers_contained": self.powers_contained,
            "lex_plus_powers": self.lex_plus_powers,
            "passed": self.passed,
        }


def verify_witness(I: MonomialIdeal, W: MonomialIdeal, ring: CapVector) -> WitnessReport:
    if I.n != W.n or ring.n != I.n:
        raise ValueError("ideal, witness and ring must share the variable count")
    return WitnessReport(
        series_equal=hilbert_series(I).same_function(hilbert_series(W)),
        powers_contained=all(contains(W, p) for p in ring.power_ideal().gens),
        lex_plus_powers=is_lpp(W, ring),
    )


def artinian_reduction_witness(h: Sequence[int], ring: CapVector) -> MonomialIdeal:
    """Artinian LPP ideal in ``t`` variables whose quotient has Hilbert function ``h``.

    Dimension zero makes the quotient Cohen-Macaulay.
    """
    if ring.t != ring.n:
        raise ValueError("the artinian witness needs every variable capped")
    h = list(h)
    if not h or h[0] != 1:
        raise ValueError("h must start with 1")
    if any(v < 0 for v in h):
        raise ValueError(f"h has a negative entry: {h}")
    return lpp_from_hilbert(h + [0], ring)


# -- recursive construction --------------------------------------------------


@dataclass
class RecursionTrace:
    """One degree step of the inductive construction in the top-level ring.

    ``factors`` are the variable indices of ``f_1`` in the chosen order; the
    ``pieces`` of level ``i`` are the degree ``d-i`` and ``d-i+1`` parts of
    the child witness ``L_i`` (in the ring on ``x_2..x_n``).
    """

    d: int
    f1: Monomial
    factors: list[int]
    order_counts: list[dict[int, int]]
    J: list[MonomialIdeal]
    J_images: list[MonomialIdeal]
    pieces: list[tuple[frozenset, frozenset]]
    K: list[frozenset]
    sizes: dict[int, int]
    segment: int
    nested: list[bool] = field(default_factory=list)


@dataclass
class RecursiveResult:
    hilbert: list[int]
    segments: list[int]
    traces: list[RecursionTrace]


def _lex_greatest_in(I: MonomialIdeal, a: int) -> Optional[Monomial]:
    for m in enumerate_monomials(I.n, a):
        if contains(I, m):
            return m
    return None


def _lpp_piece(ring: CapVector, H: Sequence[int], j: int) -> frozenset:
    """Degree-``j`` part of the LPP ideal in ``ring`` with Hilbert function ``H``."""
    if j < 0:
        return frozenset()
    caps = ring.per_variable()
    powers = [m for m in enumerate_monomials(ring.n, j) if not m.respects(caps)]
    seg = lex_segment(ring, j, cl_count(ring, j) - H[j])
    return frozenset(powers) | frozenset(seg.members)


class _Recursion:
    def __init__(self) -> None:
        self.memo: dict[tuple[MonomialIdeal, CapVector], list[int]] = {}

    def hilbert(self, I: MonomialIdeal, ring: CapVector, D: int, traces=None) -> list[int]:
        key = (I, ring)
        cached = self.memo.get(key)
        if cached is not None and len(cached) > D and traces is None:
            return cached[: D + 1]
        if ring.t == 0:
            # no powers to respect: the base of the induction
            out = [hilbert_function(I, j) for j in range(D + 1)]
        else:
            out = []
            carried: Optional[int] = None
            for d in range(D + 1):
                h_d, h_next, trace = self.step(I, ring, d, D)
                if carried is not None and carried != h_d:
                    raise ConstructionError(
                        f"degree {d}: step {d - 1} gave {carried}, step {d} gave {h_d}"
                    )
                carried = h_next
                out.append(h_d)
                if traces is not None:
                    traces.append(trace)
        self.memo[key] = out
        return out

    def step(self, I: MonomialIdeal, ring: CapVector, d: int, D: int):
        n, r = I.n, ring.caps[0]
        f1 = _lex_greatest_in(I, r)
        if f1 is None:
            raise HypothesisViolation(f"{I!r} has no monomial of degree {r}")

        # order the factors so each one meets the current colon ideal maximally
        remaining = Counter(j for j, e in enumerate(f1, 1) for _ in range(e))
        order: list[int] = []
        order_counts: list[dict[int, int]] = []
        current = I
        for i in range(r):
            deg = d - i
            counts = {}
            for v in sorted(remaining):
                xv = Monomial.variable(n, v)
                counts[v] = graded_piece_dim(colon(current, xv), deg - 1) if deg >= 1 else 0
            v = min(counts, key=lambda u: (-counts[u], u))
            order.append(v)
            order_counts.append(counts)
            remaining[v] -= 1
            if not remaining[v]:
                del remaining[v]
            current = colon(current, Monomial.variable(n, v))

        prefix = [Monomial.unit(n)]
        for v in order[:-1]:
            prefix.append(prefix[-1].times_variable(v))
        J, images = [], []
        for i in range(r):
            base = colon(I, prefix[i])
            ell = Monomial.variable(n, order[i])
            if i == r - 1 and not contains(base, ell):
                raise ConstructionError(f"last factor x{order[i]} not in the final colon ideal")
            if i < r - 1:
                for j in (d, d + 1):
                    if not ses_identity_check(base, ell, j - i):
                        raise ConstructionError(
                            f"short exact sequence identity fails at level {i}, degree {j - i}"
                        )
            Ji = add(base, MonomialIdeal(n, [ell]))
            J.append(Ji)
            images.append(quotient_mod_variable(Ji, order[i]))
        for j in (d, d + 1):
            split = sum(hilbert_function(J[i], j - i) for i in range(r))
            if split != hilbert_function(I, j):
                raise ConstructionError(f"Hilbert function does not split in degree {j}")

        child_ring = ring.tail()
        pieces = []
        for i in range(r):
            Hc = self.hilbert(images[i], child_ring, D + 1)
            pieces.append((_lpp_piece(child_ring, Hc, d - i), _lpp_piece(child_ring, Hc, d - i + 1)))
        # L_{i, d-i} inside L_{i+1, d-i}; the latter is the upper piece of level i+1
        nested = [pieces[i][0] <= pieces[i + 1][1] for i in range(r - 1)]
        if not all(nested):
            bad = nested.index(False)
            raise ConstructionError(
                f"degree {d}: level {bad} piece is not inside level {bad + 1} piece"
            )

        def lift(z: Monomial, i: int) -> Monomial:
            return Monomial((i,) + tuple(z))

        K = [frozenset(lift(z, i) for part in pieces[i] for z in part) for i in range(r)]
        gens = [m for Ki in K for m in Ki] + [Monomial.variable(n, 1, r)]
        L = MonomialIdeal(n, gens)

        sizes = {}
        for j in (d, d + 1):
            in_L = set(L.degree_piece(j))
            direct = {m for Ki in K for m in Ki if m.degree == j}
            direct |= {m for m in enumerate_monomials(n, j) if m[0] >= r}
            if in_L != direct:
                raise ConstructionError(f"degree {j}: the generated ideal leaves the K sets")
            lhs = num_monomials(n, j) - len(in_L)
            rhs = sum(
                num_monomials(n - 1, j - i) - len(pieces[i][j - d]) for i in range(r)
            )
            if lhs != rhs:
                raise ConstructionError(f"degree {j}: counting identity fails ({lhs} != {rhs})")
            sizes[j] = lhs
        caps = ring.per_variable()
        segment = sum(1 for m in L.degree_piece(d) if m.respects(caps))

        trace = RecursionTrace(
            d=d,
            f1=f1,
            factors=order,
            order_counts=order_counts,
            J=J,
            J_images=images,
            pieces=pieces,
            K=K,
            sizes=sizes,
            segment=segment,
            nested=nested,
        )
        return sizes[d], sizes[d + 1], trace


def egh_witness_recursive(I: MonomialIdeal, ring: CapVector, D: int) -> RecursiveResult:
    """Per-degree data of the witness, rebuilt by the inductive construction.

    ``segments[d]`` counts the cap-respecting degree-``d`` monomials of the
    ideal assembled at step ``d``; it must match :func:`egh_witness` degree by degree.
    """
    if ring.n != I.n:
        raise ValueError(f"ring has {ring.n} variables, ideal has {I.n}")
    traces: list[RecursionTrace] = []
    H = _Recursion().hilbert(I, ring, D, traces if ring.t else None)
    if traces:
        segments = [tr.segment for tr in traces]
    else:
        segments = [graded_piece_dim(I, d) for d in range(D + 1)]
    return RecursiveResult(H, segments, traces)


def describe_trace(tr: RecursionTrace) -> str:
    order = "*".join(f"x{v}" for v in tr.factors)
    return f"d={tr.d} f1={format_monomial(tr.f1)} order={order} sizes={tr.sizes}"
