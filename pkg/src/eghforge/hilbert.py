"""Hilbert functions and series of monomial quotients ``S/I``.

Series are stored as an integer numerator over ``(1-t)^n``.  Polynomials are
dense coefficient lists, constant term first, with trailing zeros trimmed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .ideals import (
    MAX_INCLUSION_EXCLUSION_GENS,
    IdealError,
    MonomialIdeal,
    add_variable,
    colon,
    graded_piece_dim,
    height,
    lcm_degree_signs,
    quotient_mod_variable,
)
from .monomials import Monomial, num_monomials

Poly = tuple[int, ...]


def _trim(coeffs: Sequence[int]) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(p: Sequence[int], q: Sequence[int]) -> Poly:
    out = [0] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return _trim(out)


def poly_mul(p: Sequence[int], q: Sequence[int]) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def poly_shift(p: Sequence[int], k: int) -> Poly:
    return _trim((0,) * k + tuple(p)) if p else ()


def divide_one_minus_t(p: Sequence[int]) -> Optional[Poly]:
    """``p / (1 - t)`` when the division is exact, else ``None``."""
    if sum(p) != 0:
        return None
    # q_k = p_0 + ... + p_k
    out, acc = [], 0
    for c in p[:-1]:
        acc += c
        out.append(acc)
    return _trim(out)


def poly_str(p: Sequence[int], var: str = "t") -> str:
    terms = []
    for k, c in enumerate(p):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        elif k == 1:
            body = var if mag == 1 else f"{mag}*{var}"
        else:
            body = f"{var}^{k}" if mag == 1 else f"{mag}*{var}^{k}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    head_sign, head = terms[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


@dataclass(frozen=True)
class HilbertSeries:
    """``numerator(t) / (1-t)^n``."""

    n: int
    numerator: Poly

    def coefficient(self, d: int) -> int:
        if d < 0:
            return 0
        return sum(c * num_monomials(self.n, d - k) for k, c in enumerate(self.numerator))

    def expand(self, D: int) -> list[int]:
        return [self.coefficient(d) for d in range(D + 1)]

    def reduced(self) -> tuple[Poly, int]:
        """Cancel ``(1-t)`` factors: returns ``(Q, dim)`` with ``Q(1) != 0`` (unless zero)."""
        num, power = self.numerator, self.n
        while power > 0 and num:
            q = divide_one_minus_t(num)
            if q is None:
                break
            num, power = q, power - 1
        return num, power

    def same_function(self, other: "HilbertSeries") -> bool:
        """Equality as rational functions, independent of the denominator exponent."""
        return self.reduced() == other.reduced()

    def __str__(self) -> str:
        return f"({poly_str(self.numerator)}) / (1-t)^{self.n}"

    def to_json(self) -> dict:
        return {"numerator": [str(c) for c in self.numerator], "denom_power": self.n}

    @classmethod
    def from_json(cls, obj: dict) -> "HilbertSeries":
        return cls(int(obj["denom_power"]), _trim(int(c) for c in obj["numerator"]))


def hilbert_function(I: MonomialIdeal, d: int) -> int:
    return num_monomials(I.n, d) - graded_piece_dim(I, d)


def _numerator(I: MonomialIdeal, memo: dict) -> Poly:
    if I.is_unit():
        return ()
    if I.is_zero():
        return (1,)
    if I in memo:
        return memo[I]
    linear = [min(g.support) for g in I.gens if g.degree == 1]
    supports = [g.support for g in I.gens]
    if linear:
        # S/(I + x_j) is the quotient by the image ideal in one variable fewer
        j = linear[0]
        out = poly_mul((1, -1), _numerator(quotient_mod_variable(I, j), memo))
    elif len(I.gens) <= MAX_INCLUSION_EXCLUSION_GENS:
        signs = lcm_degree_signs(I)
        out = _trim([signs.get(k, 0) for k in range(max(signs) + 1)])
    elif all(not (a & b) for i, a in enumerate(supports) for b in supports[i + 1 :]):
        out = (1,)
        for g in I.gens:
            out = poly_mul(out, poly_add((1,), poly_shift((-1,), g.degree)))
    else:
        freq = [0] * I.n
        for s in supports:
            for v in s:
                freq[v - 1] += 1
        j = max(range(I.n), key=lambda i: (freq[i], -i)) + 1
        xj = Monomial.variable(I.n, j)
        # 0 -> S/(I:x_j)(-1) -> S/I -> S/(I + x_j) -> 0
        out = poly_add(
            _numerator(add_variable(I, j), memo),
            poly_shift(_numerator(colon(I, xj), memo), 1),
        )
    memo[I] = out
    return out


def hilbert_series(I: MonomialIdeal) -> HilbertSeries:
    return HilbertSeries(I.n, _numerator(I, {}))


def q_polynomial(I: MonomialIdeal) -> tuple[Poly, int]:
    """Reduced numerator ``Q`` and Krull dimension of ``S/I``."""
    if I.is_unit():
        raise IdealError("S/I is zero for the unit ideal")
    Q, dim = hilbert_series(I).reduced()
    expected = I.n - (0 if I.is_zero() else height(I))
    if dim != expected:
        raise AssertionError(f"Krull dimension {dim} disagrees with n - height = {expected}")
    return Q, dim


def ses_identity_check(I: MonomialIdeal, m: Monomial, d: int) -> bool:
    """``H(S/I, d) = H(S/(I + <m>), d) + H(S/(I:m), d - deg m)``."""
    if m.is_unit():
        raise ValueError("the multiplier must be a non-unit monomial")
    lhs = hilbert_function(I, d)
    rhs = hilbert_function(I + MonomialIdeal(I.n, [m]), d)
    if d >= m.degree:
        rhs += hilbert_function(colon(I, m), d - m.degree)
    return lhs == rhs


def default_verification_bound(I: MonomialIdeal) -> int:
    return I.max_degree + I.n + 2
