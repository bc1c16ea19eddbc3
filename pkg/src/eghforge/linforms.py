"""Products of linear forms inside monomial ideals.

A product of linear forms cuts out a union of hyperplanes, so ``f_1, ..., f_t``
(each a product of linear forms) is a regular sequence exactly when every
choice of one factor from each ``f_i`` gives linearly independent forms.
All arithmetic is exact over the rationals.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm, prod
from typing import Iterable, Optional, Sequence

from .ideals import MonomialIdeal, contains, monomial_regular_sequence
from .monomials import Monomial, enumerate_monomials

# verify_regular_sequence refuses inputs with more factor selections than this
MAX_SELECTIONS = 10**7
COEFFICIENT_POOL = (-2, -1, 1, 2)


class LinearFormError(ValueError):
    pass


@dataclass(frozen=True)
class LinearForm:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if not any(self.coeffs):
            raise LinearFormError("a linear form needs a nonzero coefficient")

    @classmethod
    def variable(cls, n: int, j: int) -> "LinearForm":
        return cls(tuple(1 if i == j else 0 for i in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def scaled(self, c: Fraction) -> "LinearForm":
        return LinearForm(tuple(c * a for a in self.coeffs))

    def __str__(self) -> str:
        return format_linear_form(self)


@dataclass(frozen=True)
class ProductOfLinearForms:
    factors: tuple[LinearForm, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise LinearFormError("a product needs at least one factor")
        if len({f.n for f in self.factors}) != 1:
            raise LinearFormError("factors live in different ambient rings")

    @classmethod
    def from_monomial(cls, m: Monomial) -> "ProductOfLinearForms":
        factors = []
        for j, e in enumerate(m, start=1):
            factors.extend([LinearForm.variable(len(m), j)] * e)
        return cls(tuple(factors))

    @property
    def n(self) -> int:
        return self.factors[0].n

    @property
    def degree(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        return ";".join(format_linear_form(f) for f in self.factors)


_LIN_TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)?\*?x(\d+)")


def parse_linear_form(text: str, n: int) -> LinearForm:
    """Parse ``x1+2*x2-x3`` (rational coefficients like ``1/2*x1`` allowed)."""
    s = text.replace(" ", "")
    coeffs = [Fraction(0)] * n
    pos = 0
    while pos < len(s):
        m = _LIN_TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise LinearFormError(f"cannot parse linear form {text!r} at position {pos}")
        if pos > 0 and not m.group(1):
            raise LinearFormError(f"missing sign before term at position {pos} in {text!r}")
        j = int(m.group(3))
        if not 1 <= j <= n:
            raise LinearFormError(f"variable x{j} outside x1..x{n}")
        c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        coeffs[j - 1] += -c if m.group(1) == "-" else c
        pos = m.end()
    return LinearForm(tuple(coeffs))


def format_linear_form(f: LinearForm) -> str:
    out = ""
    for j, c in enumerate(f.coeffs, start=1):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = f"x{j}" if mag == 1 else f"{mag}*x{j}"
        out += (("-" if sign == "-" else "") if not out else sign) + body
    return out


def parse_product(text: str, n: int) -> ProductOfLinearForms:
    return ProductOfLinearForms(tuple(parse_linear_form(p, n) for p in text.split(";")))


def expand(f: ProductOfLinearForms) -> dict[Monomial, Fraction]:
    poly: dict[tuple[int, ...], Fraction] = {(0,) * f.n: Fraction(1)}
    for lf in f.factors:
        nxt: dict[tuple[int, ...], Fraction] = {}
        for m, c in poly.items():
            for j, a in enumerate(lf.coeffs):
                if a:
                    key = m[:j] + (m[j] + 1,) + m[j + 1 :]
                    nxt[key] = nxt.get(key, Fraction(0)) + c * a
        poly = {m: c for m, c in nxt.items() if c}
    return {Monomial(m): c for m, c in poly.items()}


def expand_support(f: ProductOfLinearForms) -> frozenset[Monomial]:
    return frozenset(expand(f))


def contained_in(f: ProductOfLinearForms, I: MonomialIdeal) -> bool:
    if f.n != I.n:
        raise LinearFormError(f"product in {f.n} variables, ideal in {I.n}")
    return all(contains(I, m) for m in expand_support(f))


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank by fraction-free (Bareiss) elimination on integer-scaled rows."""
    mat = []
    for r in rows:
        den = lcm(*(Fraction(c).denominator for c in r)) if r else 1
        mat.append([int(Fraction(c) * den) for c in r])
    if not mat:
        return 0
    m, ncols = len(mat), len(mat[0])
    rk, prev = 0, 1
    for col in range(ncols):
        if rk == m:
            break
        piv = next((i for i in range(rk, m) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rk], mat[piv] = mat[piv], mat[rk]
        p = mat[rk][col]
        for i in range(rk + 1, m):
            for j in range(col + 1, ncols):
                mat[i][j] = (p * mat[i][j] - mat[i][col] * mat[rk][j]) // prev
            mat[i][col] = 0
        prev = p
        rk += 1
    return rk


@dataclass(frozen=True)
class RegularSequenceCertificate:
    """Outcome of the rank criterion.

    ``witness`` is a deficient factor selection (0-based factor index per
    product) when ``regular`` is false.
    """

    regular: bool
    selections_checked: int
    witness: Optional[tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.regular

    def to_json(self, fs: Sequence[ProductOfLinearForms] = ()) -> dict:
        out: dict = {"regular": self.regular, "selections_checked": str(self.selections_checked)}
        if self.witness is not None:
            out["witness_selection"] = list(self.witness)
            if fs and len(fs) == len(self.witness):
                out["witness_forms"] = [
                    format_linear_form(f.factors[i]) for f, i in zip(fs, self.witness)
                ]
        return out


def verify_regular_sequence(fs: Sequence[ProductOfLinearForms]) -> RegularSequenceCertificate:
    fs = list(fs)
    t = len(fs)
    if t == 0:
        return RegularSequenceCertificate(True, 0)
    n = fs[0].n
    if any(f.n != n for f in fs):
        raise LinearFormError("products live in different ambient rings")
    if t > n:
        return RegularSequenceCertificate(False, 0, (0,) * t)
    total = prod(f.degree for f in fs)
    if total > MAX_SELECTIONS:
        raise LinearFormError(f"{total} factor selections exceed the limit {MAX_SELECTIONS}")
    checked = 0
    for sel in product(*(range(f.degree) for f in fs)):
        checked += 1
        if rank([f.factors[i].coeffs for f, i in zip(fs, sel)]) < t:
            return RegularSequenceCertificate(False, checked, sel)
    return RegularSequenceCertificate(True, checked)


def _random_product(
    I: MonomialIdeal, a: int, rng: random.Random
) -> Optional[ProductOfLinearForms]:
    """One random candidate ``m * l_1 * ... * l_k`` of degree ``a``.

    ``m`` is a monomial and each ``l`` a linear form with coefficients from
    ``COEFFICIENT_POOL`` on a random subset of the variables allowed for it.
    Candidates outside ``I`` are discarded by the caller.
    """
    n = I.n
    k = rng.choice([0, 1, 1, 2]) if a >= 2 else rng.choice([0, 1])
    k = min(k, a)
    base_deg = a - k
    bases = enumerate_monomials(n, base_deg)
    if k == 0:
        members = [m for m in bases if contains(I, m)]
        return ProductOfLinearForms.from_monomial(rng.choice(members)) if members else None
    base = rng.choice(bases)
    factors = [LinearForm.variable(n, j) for j, e in enumerate(base, 1) for _ in range(e)]
    if k == 1:
        allowed = [j for j in range(1, n + 1) if contains(I, base.times_variable(j))]
    else:
        allowed = sorted({v for g in I.gens for v in g.support})
    if not allowed:
        return None
    for _ in range(k):
        size = rng.randint(1, len(allowed))
        chosen = rng.sample(allowed, size)
        coeffs = [0] * n
        for j in chosen:
            coeffs[j - 1] = rng.choice(COEFFICIENT_POOL)
        factors.append(LinearForm(tuple(coeffs)))
    return ProductOfLinearForms(tuple(factors))


def search_regular_sequence(
    I: MonomialIdeal,
    caps: Sequence[int],
    seed: int = 0,
    attempts: int = 2000,
) -> Optional[tuple[ProductOfLinearForms, ...]]:
    """Find products of linear forms in ``I`` forming a regular sequence of type ``caps``.

    A monomial certificate is tried first.  Otherwise candidates are drawn
    one position at a time from a ``random.Random(seed)`` stream and kept
    only if they lie in ``I`` and extend the verified prefix; ``attempts``
    bounds the total number of draws.  ``None`` means no certificate was
    found, not that none exists.
    """
    caps = list(caps)
    mono = monomial_regular_sequence(I, caps)
    if mono is not None:
        return tuple(ProductOfLinearForms.from_monomial(m) for m in mono)
    if I.is_zero() or I.is_unit() or len(caps) > I.n:
        return None
    rng = random.Random(seed)
    chosen: list[ProductOfLinearForms] = []
    draws = 0
    # restart the prefix after this many consecutive failures at one position
    stall_limit = max(20, attempts // 20)
    stall = 0
    while draws < attempts:
        if len(chosen) == len(caps):
            return tuple(chosen)
        draws += 1
        cand = _random_product(I, caps[len(chosen)], rng)
        if cand is not None and contained_in(cand, I) and verify_regular_sequence(chosen + [cand]):
            chosen.append(cand)
            stall = 0
            continue
        stall += 1
        if stall >= stall_limit and chosen:
            chosen.clear()
            stall = 0
    return tuple(chosen) if len(chosen) == len(caps) else None


def forms_to_json(fs: Iterable[ProductOfLinearForms]) -> list[str]:
    return [str(f) for f in fs]


def monomial_text(f: ProductOfLinearForms) -> str:
    """Readable product, e.g. ``x3*(x1+x2)``."""
    parts = []
    for lf in f.factors:
        s = format_linear_form(lf)
        parts.append(s if re.fullmatch(r"x\d+", s) else f"({s})")
    return "*".join(parts)

