"""Ideals of F_p[x_1..x_d]: Groebner bases, normal forms, membership.

The Buchberger loop works on raw ``{exponents: coeff}`` dicts and only wraps
results as :class:`MultiPoly` at the boundary.  Generators are first
row-reduced as vectors over F_p: root ideals often arrive with thousands of
linearly dependent low-degree generators, and the pre-pass collapses them
before any S-polynomial is formed.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from operator import add, sub
from typing import Sequence

from .errors import RingMismatchError
from .poly import MultiPoly, Ring

__all__ = [
    "MonomialOrder",
    "GREVLEX",
    "LEX",
    "IdealBasis",
    "GroebnerBasis",
    "groebner",
    "normal_form",
    "contains",
    "is_subideal",
    "ideal_equal",
    "frobenius_power",
]


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"
    perm: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def _permute(self, m):
        return m if self.perm is None else tuple(m[i] for i in self.perm)

    def key(self, m):
        """Ascending sort key: larger key means larger monomial."""
        m = self._permute(m)
        if self.kind == "grevlex":
            return (sum(m), tuple(-a for a in reversed(m)))
        return m

    def neg_key(self, m):
        m = self._permute(m)
        if self.kind == "grevlex":
            return (-sum(m), tuple(reversed(m)))
        return tuple(-a for a in m)

    def leading(self, terms: dict):
        m = max(terms, key=self.key)
        return m, terms[m]


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _scale(terms: dict, c: int, p: int) -> dict:
    return {m: v * c % p for m, v in terms.items()}


class _Reducer:
    """Division of raw polynomials by a list of monic raw polynomials."""

    def __init__(self, order: MonomialOrder, p: int):
        self.order = order
        self.p = p
        self.lms: list = []
        self.polys: list = []

    def append(self, lm, terms):
        self.lms.append(lm)
        self.polys.append(terms)

    def reduce(self, terms: dict, track: bool = False, skip: int | None = None):
        """Return ``(remainder, quotients)``; quotients map basis index to raw terms."""
        p = self.p
        neg = self.order.neg_key
        terms = dict(terms)
        heap = [(neg(m), m) for m in terms]
        heapq.heapify(heap)
        rem = {}
        quots: dict = {}
        lms, polys = self.lms, self.polys
        while heap:
            _, m = heapq.heappop(heap)
            c = terms.pop(m, None)
            if c is None:
                continue
            dm = sum(m)
            for j, lm in enumerate(lms):
                if j == skip or sum(lm) > dm or not _divides(lm, m):
                    continue
                mult = tuple(map(sub, m, lm))
                for gm, gc in polys[j].items():
                    if gm == lm:
                        continue
                    nm = tuple(map(add, gm, mult))
                    old = terms.get(nm)
                    v = ((old or 0) - c * gc) % p
                    if v:
                        terms[nm] = v
                        if old is None:
                            heapq.heappush(heap, (neg(nm), nm))
                    elif old is not None:
                        del terms[nm]
                if track:
                    q = quots.setdefault(j, {})
                    q[mult] = (q.get(mult, 0) + c) % p
                break
            else:
                rem[m] = c
        return rem, quots


class IdealBasis:
    """A list of generators in a common ring, with a per-order GB cache."""

    def __init__(self, generators: Sequence[MultiPoly], ring: Ring | None = None):
        generators = list(generators)
        if ring is None:
            if not generators:
                raise ValueError("ring required for an empty generator list")
            ring = generators[0].ring
        for g in generators:
            if g.ring != ring:
                raise RingMismatchError(f"generator {g} not in {ring}")
        self.ring = ring
        self.generators = generators
        self._gb_cache: dict = {}

    def gb(self, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
        if order not in self._gb_cache:
            self._gb_cache[order] = groebner(self, order)
        return self._gb_cache[order]

    def is_unit(self) -> bool:
        return self.gb().is_unit()

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.generators)

    def render(self) -> list[str]:
        return [g.render() for g in self.generators]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self):
        return f"IdealBasis({self.render()})"


class GroebnerBasis:
    """Reduced, monic Groebner basis; optional cofactors in the input generators."""

    def __init__(self, ring: Ring, elements, order: MonomialOrder, cofactors=None, source=None):
        self.ring = ring
        self.elements: list[MultiPoly] = elements
        self.order = order
        self.cofactors: list[list[MultiPoly]] | None = cofactors
        self.source: list[MultiPoly] | None = source
        self._reducer = _Reducer(order, int(ring.p))
        for g in elements:
            lm, _ = order.leading(g.terms)
            self._reducer.append(lm, g.terms)

    @property
    def leading_monomials(self) -> list[tuple]:
        return list(self._reducer.lms)

    def is_unit(self) -> bool:
        return any(not any(lm) for lm in self._reducer.lms)

    def is_zero(self) -> bool:
        return not self.elements

    def ideal(self) -> IdealBasis:
        basis = IdealBasis(self.elements, self.ring)
        basis._gb_cache[self.order] = self
        return basis

    def render(self) -> list[str]:
        return [g.render() for g in self.elements]

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"GroebnerBasis({self.render()})"


# -- Buchberger ------------------------------------------------------------


class _Element:
    __slots__ = ("lm", "terms", "cof")

    def __init__(self, lm, terms, cof):
        self.lm = lm
        self.terms = terms
        self.cof = cof


def _cof_combine(ring, parts):
    """Sum of ``coeff * x**shift * cofactor`` over ``(coeff, shift, cof)`` triples."""
    out: dict = {}
    for c, shift, cof in parts:
        for i, h in cof.items():
            term = h.shift(shift, c)
            out[i] = out[i] + term if i in out else term
    return {i: h for i, h in out.items() if not h.is_zero()}


def _cof_subtract_quotients(ring, cof, quots, basis):
    """``cof - sum(q_j * cof_j)`` for raw quotient dicts ``q_j``."""
    out = dict(cof)
    for j, q in quots.items():
        qpoly = MultiPoly(ring, q)
        for i, h in basis[j].cof.items():
            term = -(qpoly * h)
            out[i] = out[i] + term if i in out else term
    return {i: h for i, h in out.items() if not h.is_zero()}


def _make_monic(elem_terms, lm, cof, p):
    lc = elem_terms[lm]
    if lc == 1:
        return elem_terms, cof
    inv = pow(lc, p - 2, p)
    terms = _scale(elem_terms, inv, p)
    if cof is not None:
        cof = {i: h.scale(inv) for i, h in cof.items()}
    return terms, cof


def _linear_prepass(ring, gens, order, p, track):
    """Row-reduce generators as coefficient vectors; returns independent monic rows."""
    pivots: dict = {}
    rows: list[_Element] = []
    neg = order.neg_key
    for idx, g in enumerate(gens):
        if g.is_zero():
            continue
        terms = dict(g.terms)
        cof = {idx: ring.one()} if track else None
        heap = [(neg(m), m) for m in terms]
        heapq.heapify(heap)
        while heap:
            _, m = heapq.heappop(heap)
            c = terms.get(m)
            if c is None:
                continue
            row = pivots.get(m)
            if row is None:
                continue
            for rm, rc in row.terms.items():
                old = terms.get(rm)
                v = ((old or 0) - c * rc) % p
                if v:
                    terms[rm] = v
                    if old is None:
                        heapq.heappush(heap, (neg(rm), rm))
                elif old is not None:
                    del terms[rm]
            if track:
                for i, h in row.cof.items():
                    term = h.scale(-c)
                    cof[i] = cof[i] + term if i in cof else term
                cof = {i: h for i, h in cof.items() if not h.is_zero()}
        if not terms:
            continue
        lead = max(terms, key=order.key)
        terms, cof = _make_monic(terms, lead, cof, p)
        elem = _Element(lead, terms, cof)
        pivots[lead] = elem
        rows.append(elem)
        if not any(lead):
            return [elem]
    return rows


def _buchberger(ring, rows: list[_Element], order, p, track):
    basis: list[_Element] = []
    reducer = _Reducer(order, p)
    pending: set = set()
    heap: list = []

    def add_element(elem):
        k = len(basis)
        basis.append(elem)
        reducer.append(elem.lm, elem.terms)
        for i in range(k):
            lcm = tuple(map(max, basis[i].lm, elem.lm))
            pending.add((i, k))
            heapq.heappush(heap, (sum(lcm), order.key(lcm), i, k))

    for elem in rows:
        add_element(elem)
    if len(basis) == 1 and not any(basis[0].lm):
        return basis

    while heap:
        _, _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        gi, gj = basis[i], basis[j]
        lcm = tuple(map(max, gi.lm, gj.lm))
        if all(a == 0 or b == 0 for a, b in zip(gi.lm, gj.lm)):
            continue
        chained = False
        for k, gk in enumerate(basis):
            if k in (i, j) or not _divides(gk.lm, lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                chained = True
                break
        if chained:
            continue
        si = tuple(map(sub, lcm, gi.lm))
        sj = tuple(map(sub, lcm, gj.lm))
        spoly: dict = {}
        for m, c in gi.terms.items():
            spoly[tuple(map(add, m, si))] = c
        for m, c in gj.terms.items():
            nm = tuple(map(add, m, sj))
            v = (spoly.get(nm, 0) - c) % p
            if v:
                spoly[nm] = v
            else:
                spoly.pop(nm, None)
        rem, quots = reducer.reduce(spoly, track=track)
        if not rem:
            continue
        cof = None
        if track:
            cof = _cof_combine(ring, [(1, si, gi.cof), (p - 1, sj, gj.cof)])
            cof = _cof_subtract_quotients(ring, cof, quots, basis)
        lead = max(rem, key=order.key)
        rem, cof = _make_monic(rem, lead, cof, p)
        add_element(_Element(lead, rem, cof))
        if not any(lead):
            return [basis[-1]]
    return basis


def _interreduce(ring, basis: list[_Element], order, p, track):
    keep = []
    for i, g in enumerate(basis):
        redundant = False
        for j, h in enumerate(basis):
            if i == j or not _divides(h.lm, g.lm):
                continue
            if h.lm != g.lm or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(g)
    reducer = _Reducer(order, p)
    for g in keep:
        reducer.append(g.lm, g.terms)
    out = []
    for k, g in enumerate(keep):
        rem, quots = reducer.reduce(g.terms, track=track, skip=k)
        cof = _cof_subtract_quotients(ring, g.cof, quots, keep) if track else None
        out.append(_Element(g.lm, rem, cof))
    out.sort(key=lambda e: order.key(e.lm))
    return out


def groebner(basis: IdealBasis, order: MonomialOrder = GREVLEX, track_cofactors: bool = False) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``basis``."""
    if isinstance(basis, (list, tuple)):
        basis = IdealBasis(basis)
    ring = basis.ring
    p = int(ring.p)
    gens = basis.generators
    rows = _linear_prepass(ring, gens, order, p, track_cofactors)
    if rows:
        elems = _buchberger(ring, rows, order, p, track_cofactors)
        elems = _interreduce(ring, elems, order, p, track_cofactors)
    else:
        elems = []
    elements = [MultiPoly(ring, e.terms, normalize=False) for e in elems]
    cofactors = None
    if track_cofactors:
        zero = ring.zero()
        cofactors = [[e.cof.get(i, zero) for i in range(len(gens))] for e in elems]
    return GroebnerBasis(ring, elements, order, cofactors, source=list(gens))


def _as_gb(J, order=GREVLEX) -> GroebnerBasis:
    if isinstance(J, GroebnerBasis):
        return J
    if isinstance(J, (list, tuple)):
        J = IdealBasis(J)
    return J.gb(order)


def normal_form(g: MultiPoly, gb: GroebnerBasis, with_quotients: bool = False):
    """Remainder of ``g`` modulo ``gb``; optionally the quotients as well.

    ``g == sum(q_i * gb.elements[i]) + remainder`` exactly.
    """
    if g.ring != gb.ring:
        raise RingMismatchError(f"{g.ring} vs {gb.ring}")
    rem, quots = gb._reducer.reduce(g.terms, track=with_quotients)
    remainder = MultiPoly(g.ring, rem, normalize=False)
    if not with_quotients:
        return remainder, None
    zero = g.ring.zero()
    quotients = [
        MultiPoly(g.ring, quots[i]) if i in quots else zero
        for i in range(len(gb.elements))
    ]
    return remainder, quotients


def contains(J, g: MultiPoly) -> bool:
    """Ideal membership via the normal form."""
    gb = _as_gb(J)
    if g.is_zero():
        return True
    if gb.is_zero():
        return False
    if gb.is_unit():
        return True
    rem, _ = normal_form(g, gb)
    return rem.is_zero()


def is_subideal(A, B) -> bool:
    """True when every generator of ``A`` lies in ``B``."""
    gens = A.elements if isinstance(A, GroebnerBasis) else list(A)
    gb = _as_gb(B)
    return all(contains(gb, g) for g in gens)


def ideal_equal(A, B) -> bool:
    return is_subideal(A, B) and is_subideal(B, A)


def frobenius_power(J: IdealBasis, e: int) -> IdealBasis:
    """Bracket power: every generator raised to the ``p**e``-th power."""
    if e < 1:
        raise ValueError("e must be positive")
    q = J.ring.p**e
    return IdealBasis([g.frobenius(q) for g in J.generators], J.ring)
