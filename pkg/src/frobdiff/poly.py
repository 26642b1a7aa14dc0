"""Sparse multivariate polynomials over F_p.

A polynomial is a map from exponent tuples to coefficients in ``1..p-1``.
Raising to a p-th power is term-wise over F_p, which keeps the large powers
``f**(p**e - 1)`` cheap to form; see :func:`power_q_minus_one`.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from operator import add
from typing import Iterable, NamedTuple, Sequence

from .errors import RingMismatchError
from .ff import Prime, base_p_digits, lucas_binom

__all__ = [
    "Ring",
    "MultiPoly",
    "FrobeniusDecomposition",
    "Metrics",
    "grevlex_key",
    "multiply",
    "power_q_minus_one",
    "frobenius_decompose",
    "divided_derivative",
    "metrics",
]

MAX_EXPONENT = 2**32 - 1

Monomial = tuple


def grevlex_key(m: Monomial):
    """Ascending sort key for graded reverse lexicographic order."""
    return (sum(m), tuple(-a for a in reversed(m)))


def _check_exponent(bound: int):
    if bound > MAX_EXPONENT:
        raise OverflowError(f"exponent {bound} does not fit in 32 bits")


@dataclass(frozen=True)
class Ring:
    """The ring F_p[names]."""

    p: Prime
    names: tuple[str, ...] = field(default=("x",))

    def __post_init__(self):
        object.__setattr__(self, "p", Prime(self.p))
        names = tuple(self.names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        object.__setattr__(self, "names", names)

    @classmethod
    def default(cls, p, nvars: int) -> Ring:
        if nvars <= 4:
            return cls(p, ("x", "y", "z", "w")[:nvars])
        return cls(p, tuple(f"x{i + 1}" for i in range(nvars)))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, var) -> int:
        if isinstance(var, int):
            if not 0 <= var < self.nvars:
                raise IndexError(f"variable index {var} out of range")
            return var
        return self.names.index(var)

    def zero(self) -> MultiPoly:
        return MultiPoly(self, {})

    def one(self) -> MultiPoly:
        return self.const(1)

    def const(self, c: int) -> MultiPoly:
        return MultiPoly(self, {(0,) * self.nvars: c})

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> MultiPoly:
        exps = tuple(int(a) for a in exps)
        if len(exps) != self.nvars or min(exps) < 0:
            raise ValueError(f"bad exponent vector {exps} for {self.nvars} variables")
        _check_exponent(max(exps))
        return MultiPoly(self, {exps: coeff})

    def gen(self, var) -> MultiPoly:
        i = self.index(var)
        exps = [0] * self.nvars
        exps[i] = 1
        return self.monomial(exps)

    def gens(self) -> list[MultiPoly]:
        return [self.gen(i) for i in range(self.nvars)]


class MultiPoly:
    """An immutable sparse polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "terms", "_norm", "_degree")

    def __init__(self, ring: Ring, terms: dict, normalize: bool = True):
        self.ring = ring
        if normalize:
            p = ring.p
            terms = {m: c % p for m, c in terms.items() if c % p}
        self.terms = terms
        self._norm = None
        self._degree = None

    # -- accessors ---------------------------------------------------------

    @property
    def p(self) -> Prime:
        return self.ring.p

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def support(self) -> frozenset:
        return frozenset(self.terms)

    @property
    def norm(self) -> int:
        """Largest single exponent appearing in the support (0 for 0)."""
        if self._norm is None:
            self._norm = max((max(m) for m in self.terms), default=0)
        return self._norm

    @property
    def degree(self):
        """Total degree; ``-inf`` for the zero polynomial."""
        if self._degree is None:
            self._degree = max((sum(m) for m in self.terms), default=-math.inf)
        return self._degree

    def coefficient(self, exps: Sequence[int]) -> int:
        return self.terms.get(tuple(exps), 0)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> int:
        return self.terms.get((0,) * self.ring.nvars, 0)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def sorted_terms(self, key=grevlex_key, reverse: bool = True):
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=reverse)

    # -- arithmetic --------------------------------------------------------

    def _same_ring(self, other: MultiPoly):
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            self._same_ring(other)
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.p
        res = dict(self.terms)
        for m, c in other.terms.items():
            v = (res.get(m, 0) + c) % p
            if v:
                res[m] = v
            else:
                res.pop(m, None)
        return MultiPoly(self.ring, res, normalize=False)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return MultiPoly(self.ring, {m: p - c for m, c in self.terms.items()}, normalize=False)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: int) -> MultiPoly:
        c %= self.p
        if not c:
            return self.ring.zero()
        p = self.p
        return MultiPoly(self.ring, {m: v * c % p for m, v in self.terms.items()}, normalize=False)

    def shift(self, exps: Sequence[int], coeff: int = 1) -> MultiPoly:
        """Multiply by the monomial ``coeff * x**exps``."""
        exps = tuple(exps)
        coeff %= self.p
        if not coeff or not self.terms:
            return self.ring.zero()
        _check_exponent(self.norm + max(exps, default=0))
        p = self.p
        return MultiPoly(
            self.ring,
            {tuple(map(add, m, exps)): c * coeff % p for m, c in self.terms.items()},
            normalize=False,
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = (self, other) if len(self) >= len(other) else (other, self)
        if not b.terms:
            return self.ring.zero()
        if len(b) == 1:
            (m, c), = b.terms.items()
            return a.shift(m, c)
        _check_exponent(a.norm + b.norm)
        acc = defaultdict(int)
        for mb, cb in b.terms.items():
            for ma, ca in a.terms.items():
                acc[tuple(map(add, ma, mb))] += ca * cb
        return MultiPoly(self.ring, acc)

    __rmul__ = __mul__

    def frobenius(self, q: int) -> MultiPoly:
        """``self**q`` for q a power of p; exponents scale, coefficients stay."""
        if not self.terms:
            return self
        _check_exponent(self.norm * q)
        return MultiPoly(
            self.ring, {tuple(a * q for a in m): c for m, c in self.terms.items()}, normalize=False
        )

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        if n == 0:
            return self.ring.one()
        p = self.p
        result = self.ring.one()
        q = 1
        for digit in base_p_digits(n, p):
            if digit:
                result = result * _small_power(self, digit).frobenius(q)
            q *= p
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- calculus ----------------------------------------------------------

    def derivative(self, var) -> MultiPoly:
        """Ordinary partial derivative."""
        i = self.ring.index(var)
        res = {}
        for m, c in self.terms.items():
            if m[i]:
                n = list(m)
                n[i] -= 1
                res[tuple(n)] = c * m[i]
        return MultiPoly(self.ring, res)

    def divided_derivative(self, var, t: int) -> MultiPoly:
        orders = [0] * self.ring.nvars
        orders[self.ring.index(var)] = t
        return self.divided_derivative_multi(orders)

    def divided_derivative_multi(self, orders: Sequence[int]) -> MultiPoly:
        """Apply the product of divided powers ``D_{x_i, orders[i]}``."""
        if not any(orders):
            return self
        p = int(self.p)
        active = [(i, t) for i, t in enumerate(orders) if t]
        res = {}
        for m, c in self.terms.items():
            coeff = c
            n = list(m)
            for i, t in active:
                if m[i] < t:
                    break
                coeff = coeff * lucas_binom(m[i], t, p) % p
                if not coeff:
                    break
                n[i] = m[i] - t
            else:
                res[tuple(n)] = coeff
        return MultiPoly(self.ring, res, normalize=False)

    # -- rendering ---------------------------------------------------------

    def render(self) -> str:
        """Canonical text: grevlex-descending terms, ``^`` for powers."""
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for name, a in zip(self.ring.names, m):
                if a == 1:
                    factors.append(name)
                elif a:
                    factors.append(f"{name}^{a}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([str(c)] + factors))
        return " + ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"MultiPoly({self.render()!r}, p={int(self.p)}, vars={','.join(self.ring.names)})"


def _small_power(f: MultiPoly, n: int) -> MultiPoly:
    result = f.ring.one()
    base = f
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


class Metrics(NamedTuple):
    support: frozenset
    norm: int
    degree: float


class FrobeniusDecomposition:
    """``g = sum(parts[mu] ** q * x**mu)`` over basis monomials with entries ``< q``."""

    def __init__(self, ring: Ring, e: int, parts: dict):
        self.ring = ring
        self.e = e
        self.q = ring.p**e
        self.parts = parts

    def reassemble(self) -> MultiPoly:
        total = self.ring.zero()
        for mu, part in self.parts.items():
            total = total + part.frobenius(self.q).shift(mu)
        return total

    def sorted_items(self):
        return sorted(self.parts.items(), key=lambda kv: grevlex_key(kv[0]))

    def __repr__(self):
        return f"FrobeniusDecomposition(e={self.e}, {len(self.parts)} parts)"


def multiply(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} vs {b.ring}")
    return a * b


def power_q_minus_one(f: MultiPoly, e: int, previous: MultiPoly | None = None) -> MultiPoly:
    """``f**(p**e - 1)`` via ``f**(p**e - 1) = (f**(p**(e-1) - 1))**p * f**(p-1)``.

    ``previous`` may carry ``f**(p**(e-1) - 1)`` when the caller already has it.
    """
    if f.is_zero():
        raise ValueError("f must be nonzero")
    if e < 1:
        raise ValueError("e must be positive")
    p = f.p
    base = _small_power(f, p - 1)
    if previous is not None:
        return previous.frobenius(p) * base
    g = base
    for _ in range(e - 1):
        g = g.frobenius(p) * base
    return g


def frobenius_decompose(g: MultiPoly, e: int) -> FrobeniusDecomposition:
    """Split each exponent as ``q*gamma + alpha`` and group terms by ``alpha``.

    Over F_p the q-th root of a coefficient is the coefficient itself.
    """
    if e < 1:
        raise ValueError("e must be positive")
    ring = g.ring
    q = ring.p**e
    grouped: dict = defaultdict(dict)
    for m, c in g.terms.items():
        gamma, alpha = zip(*(divmod(a, q) for a in m))
        grouped[alpha][gamma] = c
    parts = {alpha: MultiPoly(ring, terms, normalize=False) for alpha, terms in grouped.items()}
    return FrobeniusDecomposition(ring, e, parts)


def divided_derivative(g: MultiPoly, var, t: int) -> MultiPoly:
    """``D_{var,t}``: ``c*x**n -> c*C(n,t)*x**(n-t)`` with Lucas binomials."""
    if t < 0:
        raise ValueError("order must be non-negative")
    return g.divided_derivative(var, t)


def metrics(g: MultiPoly) -> Metrics:
    return Metrics(g.support, g.norm, g.degree)


def polys_from(ring: Ring, items: Iterable[tuple]) -> MultiPoly:
    """Build a polynomial from ``(coeff, exps)`` pairs, summing duplicates."""
    acc = defaultdict(int)
    for c, exps in items:
        acc[tuple(exps)] += c
    return MultiPoly(ring, acc)
