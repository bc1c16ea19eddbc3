"""Simplicial complexes, Stanley-Reisner ideals and the balanced transfer.

Vertices carry string labels; vertex ``i`` (1-based, in the stored order)
corresponds to the variable ``x_i`` of the Stanley-Reisner ring.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Optional, Sequence

from .clements import CapVector, LppInfeasible
from .egh import Trust, artinian_reduction_witness, choose_degree_sequence
from .hilbert import q_polynomial
from .ideals import IdealError, MonomialIdeal, height, quotient_mod_variable
from .linforms import ProductOfLinearForms

log = logging.getLogger(__name__)


class ComplexError(ValueError):
    pass


class TransferError(ValueError):
    """The balanced transfer pipeline stopped; ``step`` names where."""

    def __init__(self, message: str, step: str):
        super().__init__(f"step {step}: {message}")
        self.step = step


def _maximal(sets: Iterable[frozenset]) -> frozenset[frozenset]:
    uniq = sorted(set(sets), key=len, reverse=True)
    kept: list[frozenset] = []
    for s in uniq:
        if not any(s <= k for k in kept):
            kept.append(s)
    return frozenset(kept)


@dataclass(frozen=True)
class SimplicialComplex:
    """A complex given by its facets.

    The complex ``{∅}`` (no vertices, one empty face) is allowed; it is what
    the link of a facet looks like.
    """

    vertices: tuple[str, ...]
    facets: frozenset[frozenset[str]]

    def __post_init__(self) -> None:
        verts = tuple(str(v) for v in self.vertices)
        if len(set(verts)) != len(verts):
            raise ComplexError("duplicate vertex labels")
        facets = _maximal(frozenset(str(v) for v in F) for F in self.facets)
        if not facets:
            facets = frozenset([frozenset()])
        used = set().union(*facets)
        if used - set(verts):
            raise ComplexError(f"facets use unknown vertices {sorted(used - set(verts))}")
        if set(verts) - used:
            raise ComplexError(f"vertices {sorted(set(verts) - used)} lie in no facet")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "facets", facets)

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable], vertices: Optional[Sequence] = None):
        facets = [frozenset(str(v) for v in F) for F in facets]
        if vertices is None:
            vertices = sorted(set().union(*facets), key=_label_key)
        return cls(tuple(str(v) for v in vertices), frozenset(facets))

    @property
    def dim(self) -> int:
        return max(len(F) for F in self.facets) - 1

    def faces(self) -> set[frozenset[str]]:
        out: set[frozenset[str]] = set()
        for F in self.facets:
            items = sorted(F)
            for k in range(len(items) + 1):
                out.update(frozenset(c) for c in combinations(items, k))
        return out

    def is_face(self, F: Iterable[str]) -> bool:
        s = frozenset(F)
        return any(s <= G for G in self.facets)

    def link(self, F: Iterable[str]) -> "SimplicialComplex":
        s = frozenset(F)
        facets = [G - s for G in self.facets if s <= G]
        if not facets:
            raise ComplexError(f"{sorted(s)} is not a face")
        verts = [v for v in self.vertices if any(v in G for G in facets)]
        return SimplicialComplex(tuple(verts), frozenset(facets))

    def relabel(self, mapping: dict) -> "SimplicialComplex":
        return SimplicialComplex(
            tuple(mapping[v] for v in self.vertices),
            frozenset(frozenset(mapping[v] for v in F) for F in self.facets),
        )

    def to_json(self) -> dict:
        order = {v: i for i, v in enumerate(self.vertices)}
        facets = sorted(
            (sorted(F, key=order.__getitem__) for F in self.facets),
            key=lambda F: [order[v] for v in F],
        )
        return {"vertices": list(self.vertices), "facets": facets}

    @classmethod
    def from_json(cls, obj: dict) -> "SimplicialComplex":
        try:
            return cls.from_facets(obj["facets"], obj.get("vertices"))
        except (KeyError, TypeError) as exc:
            raise ComplexError(f"complex JSON needs 'facets': {exc}") from None


def _label_key(v: str):
    return (0, int(v), v) if v.isdigit() else (1, 0, v)


@dataclass(frozen=True)
class VertexPartition:
    """Blocks ``V_1..V_r`` with bounds ``b_1..b_r``.

    A bound of 0 is allowed only for an empty block (a cap equal to 1 in the
    transfer eliminates its variable).
    """

    blocks: tuple[frozenset[str], ...]
    bounds: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(frozenset(b) for b in self.blocks))
        object.__setattr__(self, "bounds", tuple(int(b) for b in self.bounds))
        if len(self.blocks) != len(self.bounds):
            raise ComplexError("one bound per block")
        seen: set[str] = set()
        for B, b in zip(self.blocks, self.bounds):
            if B & seen:
                raise ComplexError("blocks overlap")
            seen |= B
            if b < 0 or (b == 0 and B):
                raise ComplexError("bounds must be positive on nonempty blocks")

    def covers(self, vertices: Iterable[str]) -> bool:
        return set().union(*self.blocks) == set(vertices) if self.blocks else not list(vertices)

    def to_json(self, order: Optional[Sequence[str]] = None) -> dict:
        pos = {v: i for i, v in enumerate(order)} if order else {}
        key = (lambda v: (pos.get(v, len(pos)), v))
        return {"blocks": [sorted(B, key=key) for B in self.blocks], "bounds": list(self.bounds)}

    @classmethod
    def from_json(cls, obj: dict) -> "VertexPartition":
        return cls(tuple(frozenset(str(v) for v in B) for B in obj["blocks"]), tuple(obj["bounds"]))


# -- Stanley-Reisner correspondence ----------------------------------------------


def minimal_nonfaces(cx: SimplicialComplex) -> list[frozenset[str]]:
    faces = cx.faces()
    out = []
    by_size: dict[int, list[frozenset[str]]] = {}
    for F in faces:
        by_size.setdefault(len(F), []).append(F)
    for k in range(1, len(cx.vertices) + 1):
        cands = set()
        for G in by_size.get(k - 1, []):
            for v in cx.vertices:
                if v not in G:
                    cands.add(G | {v})
        for C in cands:
            if C in faces:
                continue
            if all(C - {v} in faces for v in C):
                out.append(C)
    return out


def stanley_reisner(cx: SimplicialComplex) -> MonomialIdeal:
    index = {v: i for i, v in enumerate(cx.vertices)}
    n = len(cx.vertices)
    gens = []
    for C in minimal_nonfaces(cx):
        e = [0] * n
        for v in C:
            e[index[v]] = 1
        gens.append(e)
    return MonomialIdeal(n, gens)


def complex_of(I: MonomialIdeal, labels: Optional[Sequence[str]] = None) -> SimplicialComplex:
    """Complex whose faces are the supports of squarefree monomials outside ``I``.

    Vertices whose variable lies in ``I`` are not faces; they are dropped and
    a warning is logged.
    """
    if not I.is_squarefree():
        raise ComplexError("the Stanley-Reisner correspondence needs a squarefree ideal")
    if I.is_unit():
        raise ComplexError("the unit ideal has no faces")
    labels = [str(i) for i in range(1, I.n + 1)] if labels is None else [str(v) for v in labels]
    if len(labels) != I.n:
        raise ComplexError("one label per variable")
    supports = [frozenset(g.support) for g in I.gens]
    omitted = [i for i in range(1, I.n + 1) if frozenset([i]) in supports]
    if omitted:
        log.warning("variables %s lie in the ideal; their vertices are omitted", omitted)
    live = [i for i in range(1, I.n + 1) if i not in omitted]

    # grow faces one vertex at a time in increasing index order
    facets: list[frozenset[int]] = []
    level: list[frozenset[int]] = [frozenset()]
    while level:
        nxt = []
        for F in level:
            extended = False
            for v in live:
                if v in F:
                    continue
                G = F | {v}
                if any(s <= G for s in supports):
                    continue
                extended = True
                if v > max(F, default=0):
                    nxt.append(G)
            if not extended:
                facets.append(F)
        level = nxt
    return SimplicialComplex(
        tuple(labels[i - 1] for i in live),
        frozenset(frozenset(labels[i - 1] for i in F) for F in facets),
    )


# -- face numbers ------------------------------------------------------------


def f_vector(cx: SimplicialComplex) -> tuple[int, ...]:
    counts = [0] * (cx.dim + 2)
    for F in cx.faces():
        counts[len(F)] += 1
    return tuple(counts)


def h_from_f(f: Sequence[int]) -> tuple[int, ...]:
    """Coefficients of ``sum_i f_{i-1} (t-1)^{d-i}``, read from ``t^d`` downwards."""
    d = len(f) - 1
    return tuple(
        sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1))
        for k in range(d + 1)
    )


def f_from_h(h: Sequence[int]) -> tuple[int, ...]:
    d = len(h) - 1
    return tuple(sum(comb(d - i, k - i) * h[i] for i in range(k + 1)) for k in range(d + 1))


def h_vector(cx: SimplicialComplex) -> tuple[int, ...]:
    return h_from_f(f_vector(cx))


def _strip(v: Sequence[int]) -> tuple[int, ...]:
    v = list(v)
    while len(v) > 1 and v[-1] == 0:
        v.pop()
    return tuple(v)


def same_h(a: Sequence[int], b: Sequence[int]) -> bool:
    """h-vectors agree up to trailing zeros."""
    return _strip(a) == _strip(b)


def is_flag(cx: SimplicialComplex) -> bool:
    return all(len(C) == 2 for C in minimal_nonfaces(cx))


def is_balanced(cx: SimplicialComplex, P: VertexPartition) -> bool:
    if not P.covers(cx.vertices):
        raise ComplexError("the partition must cover exactly the vertex set")
    if cx.dim + 1 != sum(P.bounds):
        return False
    return all(len(F & B) <= b for F in cx.facets for B, b in zip(P.blocks, P.bounds))


# -- polarization --------------------------------------------------------------


@dataclass(frozen=True)
class Polarization:
    ideal: MonomialIdeal
    names: tuple[str, ...]
    blocks: tuple[tuple[str, ...], ...]


def polarize(I: MonomialIdeal, widths: Optional[Sequence[int]] = None) -> Polarization:
    """Split ``x_i^e`` into ``x_i * y_{i,1} * ... * y_{i,e-1}``.

    New variables are ordered ``x1, y1_1, ..., x2, y2_1, ...``; block ``i``
    lists ``x_i`` and its ``y`` variables.  ``widths`` pads block ``i`` to at
    least ``widths[i]`` variables; the padding occurs in no generator.
    """
    if I.is_unit():
        raise IdealError("cannot polarize the unit ideal")
    top = [max((g[i] for g in I.gens), default=0) for i in range(I.n)]
    if widths is not None:
        if len(widths) != I.n:
            raise IdealError(f"{len(widths)} widths for {I.n} variables")
        top = [max(a, int(w)) for a, w in zip(top, widths)]
    names: list[str] = []
    blocks = []
    start = []
    for i in range(I.n):
        start.append(len(names))
        block = [f"x{i + 1}"] + [f"y{i + 1}_{k}" for k in range(1, top[i])]
        names.extend(block)
        blocks.append(tuple(block))
    gens = []
    for g in I.gens:
        e = [0] * len(names)
        for i, a in enumerate(g):
            for k in range(a):
                e[start[i] + k] = 1
        gens.append(e)
    return Polarization(MonomialIdeal(len(names), gens), tuple(names), tuple(blocks))


# -- homology and Cohen-Macaulayness --------------------------------------------


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    mat = [[x % p for x in r] for r in rows]
    if not mat:
        return 0
    rk, ncols = 0, len(mat[0])
    for col in range(ncols):
        piv = next((i for i in range(rk, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rk], mat[piv] = mat[piv], mat[rk]
        inv = pow(mat[rk][col], -1, p)
        mat[rk] = [x * inv % p for x in mat[rk]]
        for i in range(len(mat)):
            if i != rk and mat[i][col]:
                c = mat[i][col]
                mat[i] = [(x - c * y) % p for x, y in zip(mat[i], mat[rk])]
        rk += 1
        if rk == len(mat):
            break
    return rk


def reduced_homology_ranks(cx: SimplicialComplex, p: int = 2) -> tuple[int, ...]:
    """Ranks of reduced homology over GF(p) in dimensions ``-1..dim``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    order = {v: i for i, v in enumerate(cx.vertices)}
    by_dim: dict[int, list[tuple[str, ...]]] = {}
    for F in cx.faces():
        by_dim.setdefault(len(F) - 1, []).append(tuple(sorted(F, key=order.__getitem__)))
    for k in by_dim:
        by_dim[k].sort(key=lambda F: [order[v] for v in F])
    top = cx.dim

    def boundary_rank(k: int) -> int:
        # boundary map from k-faces to (k-1)-faces
        if k < 0 or k > top:
            return 0
        lower = {F: i for i, F in enumerate(by_dim[k - 1])}
        rows = []
        for F in by_dim[k]:
            row = [0] * len(lower)
            for j in range(len(F)):
                row[lower[F[:j] + F[j + 1 :]]] = (-1) ** j
            rows.append(row)
        return rank_mod_p(rows, p)

    ranks = [boundary_rank(k) for k in range(top + 2)]
    return tuple(
        len(by_dim[k]) - ranks[k + 1] - (ranks[k] if k >= 0 else 0) for k in range(-1, top + 1)
    )


def is_cohen_macaulay(cx: SimplicialComplex, p: int = 2) -> bool:
    """Reisner's criterion over GF(p): every link has homology only in top dimension."""
    for F in sorted(cx.faces(), key=len):
        lk = cx.link(F)
        ranks = reduced_homology_ranks(lk, p)
        # ranks[k + 1] is dimension k; everything below lk.dim must vanish
        if any(ranks[: lk.dim + 1]):
            return False
    return True


# -- the transfer ------------------------------------------------------------


@dataclass
class TransferResult:
    complex: SimplicialComplex
    partition: VertexPartition
    caps: tuple[int, ...]
    h_input: tuple[int, ...]
    h_output: tuple[int, ...]
    witness: MonomialIdeal
    certificate: Optional[tuple[ProductOfLinearForms, ...]]
    checks: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    characteristic: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def balanced_transfer(
    cx: SimplicialComplex,
    caps: Optional[Sequence[int]] = None,
    trust: Trust | str = Trust.LINEAR,
    p: Optional[int] = 2,
    seed: int = 0,
) -> TransferResult:
    """Balanced complex with the h-vector of a Cohen-Macaulay complex ``cx``.

    Steps: Stanley-Reisner ideal and its height ``t``; the type ``A`` of a
    regular sequence in it; the h-vector; the artinian LPP ideal in ``t``
    variables with that Hilbert function; its polarization; the complex of
    the polarization with blocks ``{x_i, y_{i,1}, ...}`` bounded by ``a_i - 1``.
    """
    trust = Trust(trust)
    notes: list[str] = []
    I = stanley_reisner(cx)
    if I.is_zero():
        raise TransferError("a simplex has the zero Stanley-Reisner ideal", "1")
    t = height(I)
    cm_input = None
    if p is not None:
        cm_input = is_cohen_macaulay(cx, p)
        if not cm_input:
            log.warning("input is not Cohen-Macaulay over GF(%d)", p)
            notes.append(f"input not Cohen-Macaulay over GF({p})")

    certificate = None
    if caps is None and is_flag(cx):
        caps = (2,) * t
        notes.append("flag input: degrees (2, ..., 2) suggested")
        try:
            certificate = choose_degree_sequence(I, caps, trust, seed=seed).certificate
        except LookupError:
            notes.append("no certificate found; degree-2 sequence taken as known for flag CM input")
        A = tuple(caps)
    else:
        try:
            choice = choose_degree_sequence(I, caps, trust, seed=seed)
        except (ValueError, LookupError) as exc:
            raise TransferError(str(exc), "2") from exc
        A, certificate = choice.ring.caps, choice.certificate

    h = h_vector(cx)
    if any(v < 0 for v in h):
        raise TransferError(f"h-vector {h} has a negative entry", "3")
    h_trim = list(_strip(h))
    try:
        L = artinian_reduction_witness(h_trim, CapVector(t, A))
    except LppInfeasible as exc:
        raise TransferError(f"h-vector not realizable with caps {A}: {exc}", "4") from exc

    # caps equal to 1 put x_i itself in L; drop those variables first
    reduced = L
    for i in sorted((i for i, a in enumerate(A, 1) if a == 1), reverse=True):
        reduced = quotient_mod_variable(reduced, i)
    # a block keeps all a_i vertices even when L never uses x_i^{a_i}
    pol = polarize(reduced, [a for a in A if a != 1])
    labels: list[str] = []
    blocks, bounds = [], []
    blocks_by_cap = iter(pol.blocks)
    for i, a in enumerate(A, 1):
        bounds.append(a - 1)
        if a == 1:
            blocks.append(frozenset())
            continue
        size = len(next(blocks_by_cap))
        if size != a:
            raise TransferError(f"block {i} has {size} variables, expected {a}", "5")
        names = [f"x{i}"] + [f"y{i}_{k}" for k in range(1, a)]
        labels.extend(names)
        blocks.append(frozenset(names))
    gamma = complex_of(pol.ideal, labels)
    partition = VertexPartition(tuple(blocks), tuple(bounds))

    h_out = h_vector(gamma)
    checks = {
        "h_vector_equal": same_h(h_out, h),
        "balanced": is_balanced(gamma, partition),
        "dimension_sum": gamma.dim + 1 == sum(a - 1 for a in A),
        "witness_hilbert_is_h": same_h(q_polynomial(L)[0], h_trim),
    }
    if p is not None:
        checks["cohen_macaulay"] = is_cohen_macaulay(gamma, p)
    result = TransferResult(
        complex=gamma,
        partition=partition,
        caps=tuple(A),
        h_input=tuple(h),
        h_output=tuple(h_out),
        witness=L,
        certificate=certificate,
        checks=checks,
        notes=notes,
        characteristic=p,
    )
    if cm_input is not None:
        result.notes.append(f"input Cohen-Macaulay over GF({p}): {cm_input}")
    return result
