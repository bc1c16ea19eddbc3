"""Exponent-vector monomials, the degree-then-lex order, and enumeration.

Variables are indexed ``1..n`` and ``x1`` is the lex-greatest variable.  A
monomial is an immutable tuple of non-negative exponents, so it hashes and
compares for equality like a tuple; the ordering operators implement the
graded lex order (degree first, then the first differing exponent).
"""

from __future__ import annotations

import re
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Optional, Sequence

Caps = Sequence[Optional[int]]


class MonomialError(ValueError):
    """Malformed monomial text or mismatched ambient variable counts."""


class Monomial(tuple):
    __slots__ = ()

    def __new__(cls, exponents: Iterable[int] = ()) -> "Monomial":
        exps = tuple(int(e) for e in exponents)
        for e in exps:
            if e < 0:
                raise MonomialError(f"negative exponent in {exps}")
        return super().__new__(cls, exps)

    @classmethod
    def _trusted(cls, exps) -> "Monomial":
        # skips validation; callers guarantee non-negative integer exponents
        return tuple.__new__(cls, exps)

    @classmethod
    def unit(cls, n: int) -> "Monomial":
        return cls((0,) * n)

    @classmethod
    def variable(cls, n: int, j: int, power: int = 1) -> "Monomial":
        """The monomial ``x_j^power`` in ``n`` variables (``j`` is 1-based)."""
        if not 1 <= j <= n:
            raise MonomialError(f"variable index {j} outside 1..{n}")
        exps = [0] * n
        exps[j - 1] = power
        return cls(exps)

    @property
    def n(self) -> int:
        return len(self)

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def support(self) -> frozenset[int]:
        """1-based indices of the variables that occur."""
        return frozenset(i + 1 for i, e in enumerate(self) if e)

    def is_unit(self) -> bool:
        return not any(self)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self)

    def _check(self, other: "Monomial") -> None:
        if len(self) != len(other):
            raise MonomialError(
                f"ambient variable counts differ: {len(self)} vs {len(other)}"
            )

    def divides(self, other: "Monomial") -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self, other))

    def __mul__(self, other: "Monomial") -> "Monomial":  # type: ignore[override]
        self._check(other)
        return Monomial._trusted([a + b for a, b in zip(self, other)])

    def __truediv__(self, other: "Monomial") -> "Monomial":
        self._check(other)
        if not other.divides(self):
            raise MonomialError(f"{format_monomial(other)} does not divide {format_monomial(self)}")
        return Monomial(a - b for a, b in zip(self, other))

    def gcd(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial._trusted([min(a, b) for a, b in zip(self, other)])

    def lcm(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial._trusted([max(a, b) for a, b in zip(self, other)])

    def times_variable(self, j: int) -> "Monomial":
        exps = list(self)
        exps[j - 1] += 1
        return Monomial._trusted(exps)

    def drop_variable(self, j: int) -> "Monomial":
        """Forget coordinate ``j``; remaining variables keep their relative order."""
        return Monomial._trusted(self[: j - 1] + self[j:])

    def respects(self, caps: Caps) -> bool:
        """True iff every exponent is strictly below its cap (``None`` = unbounded)."""
        return all(c is None or e < c for e, c in zip(self, caps))

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (sum(self), tuple(self))

    def __lt__(self, other: tuple) -> bool:  # type: ignore[override]
        return compare_lex(self, other) < 0

    def __le__(self, other: tuple) -> bool:  # type: ignore[override]
        return compare_lex(self, other) <= 0

    def __gt__(self, other: tuple) -> bool:  # type: ignore[override]
        return compare_lex(self, other) > 0

    def __ge__(self, other: tuple) -> bool:  # type: ignore[override]
        return compare_lex(self, other) >= 0

    def __add__(self, other):  # tuple concatenation makes no sense here
        return NotImplemented

    def __repr__(self) -> str:
        return f"Monomial({format_monomial(self)!r}, n={len(self)})"

    def __str__(self) -> str:
        return format_monomial(self)


def compare_lex(u: Sequence[int], v: Sequence[int]) -> int:
    """Three-way comparison in the graded lex order: -1, 0 or 1."""
    if len(u) != len(v):
        raise MonomialError(f"ambient variable counts differ: {len(u)} vs {len(v)}")
    du, dv = sum(u), sum(v)
    if du != dv:
        return -1 if du < dv else 1
    for a, b in zip(u, v):
        if a != b:
            return -1 if a < b else 1
    return 0


def num_monomials(n: int, d: int) -> int:
    """Number of degree-``d`` monomials in ``n`` variables (``n = 0`` allowed)."""
    if d < 0:
        return 0
    if n == 0:
        return 1 if d == 0 else 0
    return comb(n + d - 1, d)


def iter_monomials(n: int, d: int, caps: Optional[Caps] = None) -> Iterator[Monomial]:
    """Yield degree-``d`` monomials respecting ``caps`` in strictly descending lex."""
    return iter(enumerate_monomials(n, d, caps))


@lru_cache(maxsize=65536)
def _suffixes(caps: tuple, d: int) -> tuple[tuple[int, ...], ...]:
    """Exponent tuples over ``caps`` of total degree ``d``, descending lex.

    The first exponent is fixed largest first, so every prefix of the output
    is a lex segment.
    """
    if not caps:
        return ((),) if d == 0 else ()
    c = caps[0]
    top = d if c is None else min(d, c - 1)
    out = []
    for e in range(top, -1, -1):
        for rest in _suffixes(caps[1:], d - e):
            out.append((e,) + rest)
    return tuple(out)


@lru_cache(maxsize=4096)
def _enumerate_cached(n: int, d: int, caps: tuple) -> tuple[Monomial, ...]:
    if d < 0:
        return ()
    return tuple(Monomial._trusted(e) for e in _suffixes(caps, d))


def enumerate_monomials(n: int, d: int, caps: Optional[Caps] = None) -> tuple[Monomial, ...]:
    """All degree-``d`` monomials respecting ``caps``, descending lex (cached)."""
    if caps is None:
        caps = (None,) * n
    elif len(caps) != n:
        raise MonomialError(f"caps has length {len(caps)}, expected {n}")
    return _enumerate_cached(n, d, tuple(caps))


_TERM = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_monomial(text: str, n: int) -> Monomial:
    """Parse ``x1^2*x3`` (or ``1``) into a monomial in ``n`` variables."""
    s = text.replace(" ", "")
    if not s:
        raise MonomialError("empty monomial text")
    exps = [0] * n
    if s == "1":
        return Monomial(exps)
    for part in s.split("*"):
        m = _TERM.match(part)
        if m is None:
            raise MonomialError(f"cannot parse monomial factor {part!r} in {text!r}")
        j = int(m.group(1))
        if not 1 <= j <= n:
            raise MonomialError(f"variable x{j} outside x1..x{n} in {text!r}")
        exps[j - 1] += int(m.group(2) or 1)
    return Monomial(exps)


def format_monomial(m: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(m, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) if parts else "1"
