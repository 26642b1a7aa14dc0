"""Differential operators in D_R^(e) stored as sums of sandwiches.

A term ``(left, orders, right)`` acts as ``g -> left * D^(orders)(right * g)``
where ``D^(t)`` is the product of divided powers ``D_{x_i, t_i}``.  With every
order below ``p**e`` such a term is linear over the subring of ``p**e``-th
powers.
"""

from __future__ import annotations

import itertools
import json
import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    ParseError,
    RingMismatchError,
    UnsupportedLevelError,
    VerificationError,
)
from .ff import Prime, lucas_binom
from .froots import express_in_bracket_power
from .ideal import IdealBasis
from .level import LevelResult, ceil_log, level_of
from .parsing import parse_polynomial
from .poly import MultiPoly, Ring, _small_power, frobenius_decompose, grevlex_key

__all__ = [
    "Term",
    "DiffOperator",
    "AssociatedOperator",
    "apply",
    "same_action",
    "basis_monomials",
    "dual_basis_operator",
    "construct_operator",
    "monomial_operator",
    "linear_forms_operator",
    "fraction_operator",
    "serialize",
    "parse_operator",
]


def _poly_key(f: MultiPoly):
    return [(grevlex_key(m), c) for m, c in f.sorted_terms(reverse=False)]


@dataclass(frozen=True)
class Term:
    left: MultiPoly
    orders: tuple[int, ...]
    right: MultiPoly


class DiffOperator:
    """An element of D_R^(e) as a finite sum of :class:`Term` sandwiches.

    Terms sharing ``(orders, right)`` are merged by adding their left factors
    and zero terms are dropped, so the stored form is canonical up to the
    non-uniqueness of the sandwich representation itself.
    """

    def __init__(self, ring: Ring, e: int, terms: Iterable = ()):
        if e < 0:
            raise ValueError("filtration index must be non-negative")
        self.ring = ring
        self.e = e
        q = ring.p**e
        merged: dict = {}
        for term in terms:
            left, orders, right = term.left, tuple(term.orders), term.right
            if left.ring != ring or right.ring != ring:
                raise RingMismatchError("operator terms must share the operator's ring")
            if len(orders) != ring.nvars:
                raise ValueError(f"orders {orders} do not match {ring.nvars} variables")
            if any(t < 0 or t > q - 1 for t in orders):
                raise ValueError(f"orders {orders} exceed p^e - 1 = {q - 1}")
            if left.is_zero() or right.is_zero():
                continue
            key = (orders, right)
            merged[key] = merged[key] + left if key in merged else left
        self.terms = tuple(
            sorted(
                (Term(left, orders, right) for (orders, right), left in merged.items() if left),
                key=lambda t: (t.orders, _poly_key(t.right), _poly_key(t.left)),
            )
        )

    @property
    def q(self) -> int:
        return self.ring.p**self.e

    def __len__(self):
        return len(self.terms)

    def __call__(self, g: MultiPoly) -> MultiPoly:
        return apply(self, g)

    def __add__(self, other: DiffOperator) -> DiffOperator:
        if self.ring != other.ring:
            raise RingMismatchError("operators over different rings")
        return DiffOperator(self.ring, max(self.e, other.e), self.terms + other.terms)

    def scale(self, c: MultiPoly) -> DiffOperator:
        """Left multiplication by a polynomial."""
        return DiffOperator(self.ring, self.e, [Term(c * t.left, t.orders, t.right) for t in self.terms])

    def precompose(self, h: MultiPoly) -> DiffOperator:
        """``self o (h * _)``."""
        return DiffOperator(self.ring, self.e, [Term(t.left, t.orders, t.right * h) for t in self.terms])

    def __eq__(self, other):
        # syntactic; use same_action for operator identity
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.ring == other.ring and self.e == other.e and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, self.e, self.terms))

    def __repr__(self):
        return f"DiffOperator(e={self.e}, {len(self.terms)} terms)"

    def __str__(self):
        return serialize(self)

    def to_json(self) -> dict:
        return {
            "e": self.e,
            "p": int(self.ring.p),
            "vars": list(self.ring.names),
            "terms": [
                {"left": t.left.render(), "orders": list(t.orders), "right": t.right.render()}
                for t in self.terms
            ],
        }

    @classmethod
    def from_json(cls, data) -> DiffOperator:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            ring = Ring(Prime(data["p"]), tuple(data["vars"]))
            terms = [
                Term(
                    parse_polynomial(t["left"], ring.p, ring.names),
                    tuple(int(v) for v in t["orders"]),
                    parse_polynomial(t["right"], ring.p, ring.names),
                )
                for t in data["terms"]
            ]
            return cls(ring, int(data["e"]), terms)
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed operator document: {exc}") from None


@dataclass
class AssociatedOperator:
    op: DiffOperator
    f: MultiPoly
    e: int
    verified: bool = False
    level_result: LevelResult | None = field(default=None, repr=False)


def apply(op: DiffOperator, g: MultiPoly) -> MultiPoly:
    if op.ring != g.ring:
        raise RingMismatchError("operator and polynomial live in different rings")
    acc: dict = defaultdict(int)
    for term in op.terms:
        inner = (term.right * g).divided_derivative_multi(term.orders)
        if inner.is_zero():
            continue
        for m, c in (term.left * inner).terms.items():
            acc[m] += c
    return MultiPoly(op.ring, acc)


def basis_monomials(ring: Ring, e: int):
    """Monomials with every exponent at most ``p**e - 1``, in lexicographic order."""
    q = ring.p**e
    return list(itertools.product(range(q), repeat=ring.nvars))


def same_action(a: DiffOperator, b: DiffOperator) -> bool:
    """Extensional equality: both operators agree on the monomial basis over R^(p^e)."""
    if a.ring != b.ring:
        raise RingMismatchError("operators over different rings")
    e = max(a.e, b.e)
    ring = a.ring
    return all(apply(a, ring.monomial(m)) == apply(b, ring.monomial(m)) for m in basis_monomials(ring, e))


def dual_basis_operator(mu: Sequence[int], e: int, ring: Ring) -> DiffOperator:
    """``(prod D_{x_k, q-1}) o (nu * _)`` with ``nu = prod x_k**(q-1-mu_k)``.

    It sends ``x**mu`` to 1 and every other basis monomial to 0.
    """
    if e < 1:
        raise ValueError("e must be positive")
    q = ring.p**e
    mu = tuple(int(a) for a in mu)
    if len(mu) != ring.nvars or any(a < 0 or a > q - 1 for a in mu):
        raise ValueError(f"{mu} is not a basis monomial for q = {q}")
    nu = ring.monomial([q - 1 - a for a in mu])
    return DiffOperator(ring, e, [Term(ring.one(), (q - 1,) * ring.nvars, nu)])


def construct_operator(f: MultiPoly, level: LevelResult | None = None) -> AssociatedOperator:
    """Assemble ``delta = sum(alpha_i * delta_i)`` with ``delta(f**(q-1)) == f**(q-p)``."""
    if f.is_zero():
        raise ValueError("f must be nonzero")
    if level is None:
        level = level_of(f)
    ring = f.ring
    p = int(ring.p)
    e = level.level
    power = level.power if level.power is not None else f ** (p**e - 1)
    target = f ** (p**e - p)
    items = frobenius_decompose(power, e).sorted_items()
    parts = [c for _, c in items]
    q = p**e
    constants = [(mu, c) for mu, c in items if c.is_constant() and not c.is_zero()]
    if constants:
        # a constant part c at mu gives the single term (f**(q-p)/c) * delta_mu
        mu, c = max(constants, key=lambda item: item[0])
        inv = pow(c.constant_value(), -1, p)
        nu = ring.monomial([q - 1 - a for a in mu])
        op = DiffOperator(ring, e, [Term(target.scale(inv), (q - 1,) * ring.nvars, nu)])
        _verify(op, power, target, f)
        return AssociatedOperator(op, f, e, True, level)
    alphas = express_in_bracket_power(target, IdealBasis(parts, ring), e)
    terms = []
    for (mu, _), alpha in zip(items, alphas):
        if alpha.is_zero():
            continue
        nu = ring.monomial([q - 1 - a for a in mu])
        terms.append(Term(alpha, (q - 1,) * ring.nvars, nu))
    op = DiffOperator(ring, e, terms)
    _verify(op, power, target, f)
    return AssociatedOperator(op, f, e, True, level)


def _verify(op: DiffOperator, power: MultiPoly, target: MultiPoly, f: MultiPoly):
    if apply(op, power) != target:
        raise VerificationError(f"operator for {f} fails delta(f^(q-1)) = f^(q-p)")


def monomial_operator(exponents: Sequence[int], p, names: Sequence[str] | None = None) -> AssociatedOperator:
    """The single-term operator ``prod x_i**(q-p*a_i) * D_{x_i,q-1} * x_i**(a_i-1)``."""
    p = Prime(p)
    exponents = tuple(int(a) for a in exponents)
    if not exponents or any(a < 1 for a in exponents):
        raise ValueError("every exponent must be at least 1; drop absent variables first")
    ring = Ring(p, tuple(names)) if names else Ring.default(p, len(exponents))
    e = ceil_log(max(exponents), p) + 1
    q = p**e
    left = ring.monomial([q - p * a for a in exponents])
    right = ring.monomial([a - 1 for a in exponents])
    op = DiffOperator(ring, e, [Term(left, (q - 1,) * ring.nvars, right)])
    f = ring.monomial(exponents)
    _verify(op, f ** (q - 1), f ** (q - p), f)
    return AssociatedOperator(op, f, e, True)


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [v * inv % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                c = rows[i][col]
                rows[i] = [(a - c * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _inverse_mod_p(matrix: list[list[int]], p: int) -> list[list[int]]:
    n = len(matrix)
    aug = [[v % p for v in row] + [int(i == j) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next(i for i in range(col, n) if aug[i][col])
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = pow(aug[col][col], p - 2, p)
        aug[col] = [v * inv % p for v in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                c = aug[i][col]
                aug[i] = [(a - c * b) % p for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def _directional_divided_power(m: Sequence[int], t: int, p: int) -> dict:
    """``D_{y,t}`` for ``d/dy = sum(m_j d/dx_j)`` as ``{orders: coeff}``.

    ``(sum m_j d_j)**t / t! = sum over |k| = t of m**k * prod(d_j**k_j / k_j!)``.
    """
    support = [j for j, c in enumerate(m) if c % p]
    out: dict = {}
    d = len(m)

    def rec(idx, remaining, orders, coeff):
        if idx == len(support) - 1:
            j = support[idx]
            orders[j] = remaining
            out[tuple(orders)] = coeff * pow(m[j], remaining, p) % p
            orders[j] = 0
            return
        j = support[idx]
        for k in range(remaining + 1):
            orders[j] = k
            rec(idx + 1, remaining - k, orders, coeff * pow(m[j], k, p) % p)
        orders[j] = 0

    if t == 0:
        return {(0,) * d: 1}
    rec(0, t, [0] * d, 1)
    return {k: c for k, c in out.items() if c}


def _compose_pure(a: dict, b: dict, p: int) -> dict:
    """Product of constant-coefficient operators: ``D^(s) D^(t) = prod C(s+t, s) D^(s+t)``."""
    out: dict = defaultdict(int)
    for s, cs in a.items():
        for t, ct in b.items():
            c = cs * ct % p
            for si, ti in zip(s, t):
                if not c:
                    break
                c = c * lucas_binom(si + ti, si, p) % p
            if c:
                out[tuple(si + ti for si, ti in zip(s, t))] += c
    return {k: c % p for k, c in out.items() if c % p}


def linear_forms_operator(
    forms: Sequence[tuple[Sequence[int], int]], p, names: Sequence[str] | None = None
) -> AssociatedOperator:
    """Operator for ``f = prod(l_i**a_i)`` with linearly independent linear forms ``l_i``.

    In coordinates ``y = M x`` whose first rows are the forms, ``f`` is a monomial
    and the monomial operator applies verbatim.  Pulled back to ``x`` it reads
    ``L * prod_i D_{y_i, q-1} * Rt`` with ``L = prod l_i**(q-p*a_i)`` and
    ``Rt = prod l_i**(a_i-1)``; ``d/dy_i`` is column ``i`` of ``M**-1``.
    """
    p = Prime(p)
    pi = int(p)
    if not forms:
        raise ValueError("at least one linear form is required")
    vectors = [[int(c) % pi for c in vec] for vec, _ in forms]
    mults = [int(a) for _, a in forms]
    d = len(vectors[0])
    if any(len(v) != d for v in vectors):
        raise ValueError("coefficient vectors must have equal length")
    if len(vectors) > d:
        raise ValueError(f"{len(vectors)} forms in {d} variables cannot be independent")
    if any(a < 1 for a in mults):
        raise ValueError("multiplicities must be at least 1")
    if _rank_mod_p(vectors, pi) < len(vectors):
        raise ValueError("linear forms are dependent over F_p")
    ring = Ring(p, tuple(names)) if names else Ring.default(p, d)
    if ring.nvars != d:
        raise ValueError("variable names do not match the coefficient vectors")

    # complete the forms to a basis with unit vectors
    matrix = [list(v) for v in vectors]
    for j in range(d):
        if len(matrix) == d:
            break
        candidate = [int(i == j) for i in range(d)]
        if _rank_mod_p(matrix + [candidate], pi) > len(matrix):
            matrix.append(candidate)
    inverse = _inverse_mod_p(matrix, pi)

    e = ceil_log(max(mults), pi) + 1
    q = pi**e
    pure = {(0,) * d: 1}
    for i in range(len(vectors)):
        column = [inverse[j][i] for j in range(d)]
        pure = _compose_pure(pure, _directional_divided_power(column, q - 1, pi), pi)

    def linear(vec):
        return sum((ring.gen(j).scale(c) for j, c in enumerate(vec) if c), ring.zero())

    ells = [linear(v) for v in vectors]
    left = ring.one()
    right = ring.one()
    f = ring.one()
    for ell, a in zip(ells, mults):
        left = left * ell ** (q - pi * a)
        right = right * ell ** (a - 1)
        f = f * ell**a
    op = DiffOperator(ring, e, [Term(left.scale(c), orders, right) for orders, c in pure.items()])
    _verify(op, f ** (q - 1), f ** (q - pi), f)
    return AssociatedOperator(op, f, e, True)


def fraction_operator(g: MultiPoly, f: MultiPoly) -> DiffOperator:
    """``delta o (g**(p-1) * _)`` for level-one ``f``; sends ``g*f**(p-1)`` to ``g**p``."""
    if g.ring != f.ring:
        raise RingMismatchError("g and f live in different rings")
    level = level_of(f)
    if level.level != 1:
        raise UnsupportedLevelError(f"fraction operators need level 1, {f} has level {level.level}")
    delta = construct_operator(f, level).op
    return delta.precompose(_small_power(g, int(f.p) - 1))


# -- text form ---------------------------------------------------------------


def _wrap(f: MultiPoly) -> str:
    text = f.render()
    return f"({text})" if len(f) > 1 else text


def serialize(op: DiffOperator) -> str:
    """One ``left * D[t_1,...,t_d] * right`` clause per line; ``0`` when empty."""
    if not op.terms:
        return "0"
    return "\n".join(
        f"{_wrap(t.left)} * D[{','.join(map(str, t.orders))}] * {_wrap(t.right)}" for t in op.terms
    )


_CLAUSE = re.compile(r"^(?P<left>.*?)\*\s*D\s*\[(?P<orders>[^\]]*)\]\s*\*(?P<right>.*)$")


def parse_operator(text: str, ring: Ring, e: int | None = None) -> DiffOperator:
    """Inverse of :func:`serialize`; ``e`` defaults to the least index the orders allow."""
    terms = []
    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if lines == ["0"]:
        lines = []
    for n, line in enumerate(lines, 1):
        m = _CLAUSE.match(line)
        if not m:
            raise ParseError(f"line {n}: expected 'left * D[...] * right'")
        try:
            orders = tuple(int(v) for v in m["orders"].split(","))
        except ValueError:
            raise ParseError(f"line {n}: orders must be comma-separated integers") from None
        left = parse_polynomial(m["left"], ring.p, ring.names)
        right = parse_polynomial(m["right"], ring.p, ring.names)
        terms.append(Term(left, orders, right))
    if e is None:
        top = max((max(t.orders, default=0) for t in terms), default=0)
        e = max(1, ceil_log(top + 1, int(ring.p)))
    return DiffOperator(ring, e, terms)
