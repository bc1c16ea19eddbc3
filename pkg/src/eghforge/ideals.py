"""Monomial ideals on a minimal generating set.

Everything here is combinatorial: membership is divisibility, and graded
dimensions are monomial counts, so no coefficient field ever enters.
"""

from __future__ import annotations

import json
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .monomials import (
    Monomial,
    MonomialError,
    enumerate_monomials,
    format_monomial,
    num_monomials,
    parse_monomial,
)

# Inclusion-exclusion over generator subsets is used up to this many generators.
MAX_INCLUSION_EXCLUSION_GENS = 18
# graded_piece_dim enumerates the degree-d basis when it is at most this large.
ENUMERATION_LIMIT = 5000


class IdealError(ValueError):
    """Operation undefined for this ideal (zero or unit where proper nonzero is needed)."""


def minimal_generators(raw: Iterable[Monomial]) -> tuple[Monomial, ...]:
    kept: list[Monomial] = []
    for m in sorted(set(raw), key=Monomial.sort_key):
        if not any(g.divides(m) for g in kept):
            kept.append(m)
    return tuple(sorted(kept, reverse=True))


class MonomialIdeal:
    """Monomial ideal in ``n`` variables, stored by its minimal generators.

    Generators are kept in descending lex order.  The unit monomial as a
    generator represents the whole ring, no generators the zero ideal.
    """

    def __init__(self, n: int, gens: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise IdealError("negative variable count")
        mons = [m if isinstance(m, Monomial) else Monomial(m) for m in gens]
        for m in mons:
            if len(m) != n:
                raise MonomialError(f"generator {m!r} does not live in {n} variables")
        self.n = n
        self.gens: tuple[Monomial, ...] = minimal_generators(mons)

    @classmethod
    def zero(cls, n: int) -> "MonomialIdeal":
        return cls(n)

    @classmethod
    def unit(cls, n: int) -> "MonomialIdeal":
        return cls(n, [Monomial.unit(n)])

    @classmethod
    def from_strings(cls, n: int, gens: Iterable[str]) -> "MonomialIdeal":
        return cls(n, [parse_monomial(g, n) for g in gens])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.n == other.n and self.gens == other.gens

    def __hash__(self) -> int:
        return hash((self.n, self.gens))

    def __repr__(self) -> str:
        return f"MonomialIdeal({self.n}, [{', '.join(map(format_monomial, self.gens))}])"

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return add(self, other)

    def __contains__(self, m: Sequence[int]) -> bool:
        return contains(self, m)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(g.is_unit() for g in self.gens)

    def is_squarefree(self) -> bool:
        return all(g.is_squarefree() for g in self.gens)

    @cached_property
    def max_degree(self) -> int:
        return max((g.degree for g in self.gens), default=0)

    def degree_piece(self, d: int) -> list[Monomial]:
        """Degree-``d`` monomials of the ideal, descending lex."""
        return [m for m in enumerate_monomials(self.n, d) if contains(self, m)]

    def to_json(self) -> dict:
        return {"vars": self.n, "gens": [format_monomial(g) for g in self.gens]}

    @classmethod
    def from_json(cls, obj: dict) -> "MonomialIdeal":
        try:
            n = int(obj["vars"])
            gens = obj["gens"]
        except (KeyError, TypeError) as exc:
            raise IdealError(f"ideal JSON needs 'vars' and 'gens': {exc}") from None
        return cls.from_strings(n, gens)


def minimalize(n: int, raw: Iterable[Sequence[int]]) -> MonomialIdeal:
    return MonomialIdeal(n, raw)


def contains(I: MonomialIdeal, m: Sequence[int]) -> bool:
    if len(m) != I.n:
        raise MonomialError(f"monomial in {len(m)} variables, ideal in {I.n}")
    return any(all(a <= b for a, b in zip(g, m)) for g in I.gens)


def colon(I: MonomialIdeal, m: Sequence[int]) -> MonomialIdeal:
    """``(I : m)``, generated by ``g / gcd(g, m)`` over the generators ``g``."""
    if len(m) != I.n:
        raise MonomialError(f"monomial in {len(m)} variables, ideal in {I.n}")
    return MonomialIdeal(I.n, [[max(a - b, 0) for a, b in zip(g, m)] for g in I.gens])


def add(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    if I.n != J.n:
        raise MonomialError(f"cannot add ideals in {I.n} and {J.n} variables")
    return MonomialIdeal(I.n, I.gens + J.gens)


def add_variable(I: MonomialIdeal, j: int) -> MonomialIdeal:
    return add(I, MonomialIdeal(I.n, [Monomial.variable(I.n, j)]))


def quotient_mod_variable(I: MonomialIdeal, j: int) -> MonomialIdeal:
    """Image of ``I`` after setting ``x_j = 0``, re-indexed into ``n - 1`` variables."""
    if not 1 <= j <= I.n:
        raise IdealError(f"variable index {j} outside 1..{I.n}")
    return MonomialIdeal(I.n - 1, [g.drop_variable(j) for g in I.gens if g[j - 1] == 0])


def _require_proper_nonzero(I: MonomialIdeal, what: str) -> None:
    if I.is_zero():
        raise IdealError(f"{what} is undefined for the zero ideal")
    if I.is_unit():
        raise IdealError(f"{what} is undefined for the unit ideal")


def minimal_vertex_cover(I: MonomialIdeal) -> frozenset[int]:
    """A smallest set of variables meeting the support of every generator.

    Branch and bound: branch on the variables of an uncovered support of
    least size, prune once the partial cover cannot beat the incumbent.
    """
    _require_proper_nonzero(I, "height")
    edges = sorted({g.support for g in I.gens}, key=len)
    # drop supports containing another support: covering the smaller one suffices
    reduced: list[frozenset[int]] = []
    for e in edges:
        if not any(f <= e for f in reduced):
            reduced.append(e)

    best: list[frozenset[int]] = [frozenset(range(1, I.n + 1))]

    def search(chosen: frozenset[int]) -> None:
        if len(chosen) >= len(best[0]):
            return
        uncovered = [e for e in reduced if not (e & chosen)]
        if not uncovered:
            best[0] = chosen
            return
        # disjoint uncovered edges each need their own vertex
        lower, used = 0, set()
        for e in uncovered:
            if not (e & used):
                lower += 1
                used |= e
        if len(chosen) + lower >= len(best[0]):
            return
        for v in sorted(min(uncovered, key=len)):
            search(chosen | {v})

    search(frozenset())
    return best[0]


def height(I: MonomialIdeal) -> int:
    return len(minimal_vertex_cover(I))


def generator_degree_range(I: MonomialIdeal) -> tuple[int, int]:
    _require_proper_nonzero(I, "generator degree range")
    degs = [g.degree for g in I.gens]
    return min(degs), max(degs)


def monomial_regular_sequence(
    I: MonomialIdeal,
    caps: Optional[Sequence[int]] = None,
    max_nodes: int = 200_000,
) -> Optional[tuple[Monomial, ...]]:
    """Search for monomials in ``I`` with pairwise disjoint supports.

    With ``caps = (a_1, ..., a_t)`` the i-th monomial has degree ``a_i``; it is
    a minimal generator ``g`` with ``deg g <= a_i`` padded by a power of the
    first variable of its own support, so the support (and hence regularity)
    is unchanged.  Without caps, ``height(I)`` generators are sought with no
    padding.  Returns ``None`` when the bounded search finds nothing, which
    does not prove that no regular sequence exists.
    """
    if I.is_unit():
        return None
    if caps is None:
        if I.is_zero():
            return ()
        t = height(I)
        targets: list[Optional[int]] = [None] * t
    else:
        targets = list(caps)
    gens = [g for g in I.gens if not g.is_unit()]
    nodes = 0

    def pad(g: Monomial, a: Optional[int]) -> Monomial:
        if a is None or a == g.degree:
            return g
        first = min(g.support)
        return g * Monomial.variable(I.n, first, a - g.degree)

    chosen: list[Monomial] = []

    def rec(i: int, used: frozenset[int]) -> bool:
        nonlocal nodes
        if i == len(targets):
            return True
        nodes += 1
        if nodes > max_nodes:
            return False
        a = targets[i]
        for g in gens:
            if a is not None and g.degree > a:
                continue
            if g.support & used:
                continue
            chosen.append(pad(g, a))
            if rec(i + 1, used | g.support):
                return True
            chosen.pop()
        return False

    if rec(0, frozenset()):
        return tuple(chosen)
    return None


# -- graded piece dimensions -------------------------------------------------


@lru_cache(maxsize=2048)
def lcm_degree_signs(I: MonomialIdeal) -> dict[int, int]:
    """Map ``k -> sum of (-1)^|T|`` over generator subsets ``T`` with ``deg lcm T = k``.

    The empty subset contributes ``+1`` at degree 0.  This is the numerator of
    the Hilbert series of ``S/I`` by inclusion-exclusion.
    """
    gens = I.gens
    if len(gens) > MAX_INCLUSION_EXCLUSION_GENS:
        raise IdealError(
            f"inclusion-exclusion limited to {MAX_INCLUSION_EXCLUSION_GENS} generators"
        )
    out: dict[int, int] = {}

    def rec(start: int, lcm: tuple[int, ...], sign: int) -> None:
        k = sum(lcm)
        out[k] = out.get(k, 0) + sign
        for i in range(start, len(gens)):
            rec(i + 1, tuple(max(a, b) for a, b in zip(lcm, gens[i])), -sign)

    rec(0, (0,) * I.n, 1)
    return {k: v for k, v in out.items() if v}


def _count_by_enumeration(I: MonomialIdeal, d: int) -> int:
    return sum(1 for m in enumerate_monomials(I.n, d) if contains(I, m))


def _count_by_inclusion_exclusion(I: MonomialIdeal, d: int) -> int:
    signs = lcm_degree_signs(I)
    return -sum(c * num_monomials(I.n, d - k) for k, c in signs.items() if k > 0)


def _count_by_pivot(I: MonomialIdeal, d: int, memo: dict) -> int:
    """``|I_d|`` splitting monomials by divisibility by a most frequent variable.

    Monomials not divisible by ``x_j`` lie in ``I`` iff their image lies in
    ``I mod x_j``; those divisible are ``x_j * u`` with ``u`` in ``(I : x_j)``.
    """
    if d < 0 or I.is_zero():
        return 0
    if I.is_unit():
        return num_monomials(I.n, d)
    key = (I, d)
    if key in memo:
        return memo[key]
    if len(I.gens) <= MAX_INCLUSION_EXCLUSION_GENS:
        val = _count_by_inclusion_exclusion(I, d)
    else:
        freq = [0] * I.n
        for g in I.gens:
            for v in g.support:
                freq[v - 1] += 1
        j = max(range(I.n), key=lambda i: (freq[i], -i)) + 1
        xj = Monomial.variable(I.n, j)
        val = _count_by_pivot(quotient_mod_variable(I, j), d, memo) + _count_by_pivot(
            colon(I, xj), d - 1, memo
        )
    memo[key] = val
    return val


def graded_piece_dim(I: MonomialIdeal, d: int, method: str = "auto") -> int:
    """Number of degree-``d`` monomials in ``I``.

    ``method`` is ``"enumerate"``, ``"formula"`` (inclusion-exclusion, or the
    pivot recursion beyond the generator limit) or ``"auto"``.
    """
    if d < 0:
        return 0
    if method == "auto":
        method = "enumerate" if num_monomials(I.n, d) <= ENUMERATION_LIMIT else "formula"
    if method == "enumerate":
        return _count_by_enumeration(I, d)
    if method == "formula":
        return _count_by_pivot(I, d, {})
    raise ValueError(f"unknown method {method!r}")


# -- file formats ------------------------------------------------------------


def parse_ideal_text(text: str) -> MonomialIdeal:
    """Read either the JSON form or the ``vars: n`` / one-monomial-per-line form."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return MonomialIdeal.from_json(json.loads(stripped))
    lines = [ln.strip() for ln in stripped.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].lower().startswith("vars:"):
        raise IdealError("plain-text ideal must start with a 'vars: n' header")
    try:
        n = int(lines[0].split(":", 1)[1])
    except ValueError:
        raise IdealError(f"bad header line {lines[0]!r}") from None
    return MonomialIdeal.from_strings(n, lines[1:])


def disjoint_support_pairs(ms: Sequence[Monomial]) -> bool:
    return all(not (a.support & b.support) for a, b in combinations(ms, 2))
