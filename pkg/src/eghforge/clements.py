"""Clements-Lindstrom rings, lex segments and lex-plus-powers ideals.

A :class:`CapVector` fixes the ring ``S/(x_1^{a_1}, ..., x_t^{a_t})``; its
degree-``d`` monomial basis is the cap-respecting monomials of degree ``d``
in descending lex order, and a lex segment is a prefix of that list.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .ideals import MonomialIdeal, contains
from .monomials import Monomial, enumerate_monomials, format_monomial


class CapError(ValueError):
    pass


class LppInfeasible(ValueError):
    """The target values are not the Hilbert function of any LPP ideal in the ring.

    ``degree`` is the first offending degree; for gluing failures ``grown``
    and ``segment`` are the two sets whose inclusion failed.
    """

    def __init__(self, message: str, degree: int, grown=None, segment=None):
        super().__init__(message)
        self.degree = degree
        self.grown = grown
        self.segment = segment

    def to_json(self) -> dict:
        out: dict = {"error": "infeasible", "degree": self.degree, "message": str(self)}
        if self.grown is not None:
            out["span_growth"] = [format_monomial(m) for m in sorted(self.grown, reverse=True)]
            out["next_segment"] = [format_monomial(m) for m in self.segment]
        return out


@dataclass(frozen=True)
class CapVector:
    """Caps ``a_1 <= ... <= a_t`` on the first ``t`` of ``n`` variables."""

    n: int
    caps: tuple[int, ...]

    def __post_init__(self) -> None:
        caps = tuple(int(a) for a in self.caps)
        object.__setattr__(self, "caps", caps)
        if len(caps) > self.n:
            raise CapError(f"{len(caps)} caps for only {self.n} variables")
        if any(a < 1 for a in caps):
            raise CapError("caps must be at least 1")
        if any(a > b for a, b in zip(caps, caps[1:])):
            raise CapError("caps must be non-decreasing")

    @property
    def t(self) -> int:
        return len(self.caps)

    def per_variable(self) -> tuple[Optional[int], ...]:
        return self.caps + (None,) * (self.n - self.t)

    def power_ideal(self) -> MonomialIdeal:
        return MonomialIdeal(
            self.n, [Monomial.variable(self.n, i, a) for i, a in enumerate(self.caps, 1)]
        )

    def tail(self) -> "CapVector":
        """The ring on ``x_2..x_n`` with caps ``a_2..a_t``."""
        if self.n == 0:
            raise CapError("no variable to drop")
        return CapVector(self.n - 1, self.caps[1:])

    def to_json(self) -> dict:
        return {"vars": self.n, "caps": list(self.caps)}

    @classmethod
    def from_json(cls, obj: dict) -> "CapVector":
        return cls(int(obj["vars"]), tuple(obj["caps"]))


def basis(ring: CapVector, d: int) -> tuple[Monomial, ...]:
    return enumerate_monomials(ring.n, d, ring.per_variable())


def cl_count(ring: CapVector, d: int) -> int:
    """Number of cap-respecting degree-``d`` monomials.

    Counted as the ``t^d`` coefficient of a product of truncated geometric
    series, without listing monomials.
    """
    if d < 0:
        return 0
    coeffs = [1] + [0] * d
    for cap in ring.per_variable():
        nxt = [0] * (d + 1)
        for k in range(d + 1):
            lo = 0 if cap is None else max(0, k - cap + 1)
            nxt[k] = sum(coeffs[lo : k + 1])
        coeffs = nxt
    return coeffs[d]


@dataclass(frozen=True)
class LexSegment:
    ring: CapVector
    d: int
    members: tuple[Monomial, ...]

    def __len__(self) -> int:
        return len(self.members)

    def is_prefix(self) -> bool:
        return self.members == basis(self.ring, self.d)[: len(self.members)]


def lex_segment(ring: CapVector, d: int, size: int) -> LexSegment:
    full = basis(ring, d)
    if not 0 <= size <= len(full):
        raise CapError(f"segment size {size} outside 0..{len(full)} in degree {d}")
    return LexSegment(ring, d, full[:size])


def span_growth(ring: CapVector, monomials) -> set[Monomial]:
    """``S_1 V`` restricted to cap-respecting monomials."""
    caps = ring.per_variable()
    out = set()
    for u in monomials:
        for j, c in enumerate(caps):
            # only coordinate j moves, so only its cap needs checking
            if c is None or u[j] + 1 < c:
                out.add(Monomial._trusted(u[:j] + (u[j] + 1,) + u[j + 1 :]))
    return out


def segment_span_growth(seg: LexSegment) -> set[Monomial]:
    return span_growth(seg.ring, seg.members)


def segment_sizes(H: Sequence[int], ring: CapVector) -> list[int]:
    sizes = []
    for d, h in enumerate(H):
        if h < 0:
            raise LppInfeasible(f"negative target {h} in degree {d}", d)
        s = cl_count(ring, d) - h
        if s < 0:
            raise LppInfeasible(
                f"target {h} exceeds the ring's dimension {cl_count(ring, d)} in degree {d}", d
            )
        sizes.append(s)
    return sizes


def lpp_from_hilbert(H: Sequence[int], ring: CapVector) -> MonomialIdeal:
    """The lex-plus-powers ideal whose quotient has Hilbert function ``H`` up to ``len(H)-1``.

    Raises :class:`LppInfeasible` when some degree is out of range or a lex
    segment fails to contain the span growth of the previous one.
    """
    if H and H[0] > 1:
        raise LppInfeasible("H(0) must be 0 or 1", 0)
    sizes = segment_sizes(H, ring)
    gens = list(ring.power_ideal().gens)
    prev: Optional[LexSegment] = None
    for d, s in enumerate(sizes):
        seg = lex_segment(ring, d, s)
        grown = segment_span_growth(prev) if prev is not None else set()
        if not grown <= set(seg.members):
            raise LppInfeasible(
                f"lex segment in degree {d} does not contain the span of degree {d - 1}",
                d,
                grown=grown,
                segment=seg.members,
            )
        gens.extend(m for m in seg.members if m not in grown)
        prev = seg
    return MonomialIdeal(ring.n, gens)


def is_lpp(I: MonomialIdeal, ring: CapVector, max_degree: Optional[int] = None) -> bool:
    """Powers present and every graded piece meets the CL basis in a lex prefix.

    Pieces are checked through one degree past the largest generator; beyond
    that the span of a lex segment stays lex, by Clements-Lindstrom.
    """
    if I.n != ring.n:
        return False
    if not all(contains(I, p) for p in ring.power_ideal().gens):
        return False
    top = I.max_degree + 1 if max_degree is None else max_degree
    caps = ring.per_variable()
    by_degree: dict[int, list[Monomial]] = {}
    for g in I.gens:
        if g.respects(caps):
            by_degree.setdefault(g.degree, []).append(g)
    # a cap-respecting multiple of a generator passes only through
    # cap-respecting monomials, so each piece is new generators plus growth
    piece: set[Monomial] = set()
    for d in range(top + 1):
        piece = span_growth(ring, piece) | set(by_degree.get(d, ()))
        if piece != set(basis(ring, d)[: len(piece)]):
            return False
    return True
