"""Shared generators and independent oracles for the test suite.

The oracles deliberately avoid the package's own Groebner and Frobenius
machinery: membership is decided by dense linear algebra over F_p and
binomials by exact integer arithmetic.
"""

from __future__ import annotations

import itertools
import math
import random

import numpy as np

from frobdiff import MultiPoly, Ring


def ring(p, names="x,y,z,w"):
    return Ring(p, tuple(names.split(",")))


def random_poly(rng: random.Random, R: Ring, nterms: int, maxdeg: int, homogeneous_degree=None) -> MultiPoly:
    d = R.nvars
    terms = {}
    for _ in range(nterms):
        if homogeneous_degree is not None:
            total = homogeneous_degree
        else:
            total = rng.randint(0, maxdeg)
        cuts = sorted(rng.randint(0, total) for _ in range(d - 1))
        exps = tuple(b - a for a, b in zip([0] + cuts, cuts + [total]))
        terms[exps] = rng.randrange(1, R.p)
    return MultiPoly(R, terms)


def random_nonconstant(rng, R, nterms, maxdeg):
    while True:
        f = random_poly(rng, R, nterms, maxdeg)
        if not f.is_zero() and f.degree >= 1:
            return f


def naive_power(f: MultiPoly, n: int) -> MultiPoly:
    out = f.ring.one()
    for _ in range(n):
        out = out * f
    return out


def monomials_up_to(d: int, deg: int):
    for exps in itertools.product(range(deg + 1), repeat=d):
        if sum(exps) <= deg:
            yield exps


def _echelon_mod_p(matrix: np.ndarray, p: int):
    """Row echelon form over F_p; returns (pivot rows, pivot columns)."""
    a = np.array(matrix, dtype=np.int64) % p
    pivots = []
    rank = 0
    for col in range(a.shape[1]):
        if rank == a.shape[0]:
            break
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        a[[rank, piv]] = a[[piv, rank]]
        a[rank] = a[rank] * pow(int(a[rank, col]), p - 2, p) % p
        below = a[rank + 1 :]
        factors = below[:, col].copy()
        mask = factors != 0
        if mask.any():
            below[mask] = (below[mask] - np.outer(factors[mask], a[rank])) % p
        pivots.append(col)
        rank += 1
    return a[:rank], pivots


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    return len(_echelon_mod_p(matrix, p)[1])


def macaulay_member(gens, g: MultiPoly, cofactor_degree: int) -> bool:
    """Whether ``g = sum(h_i * gens[i])`` with every ``deg h_i <= cofactor_degree``."""
    R = g.ring
    p = int(R.p)
    if g.is_zero():
        return True
    rows = []
    for gi in gens:
        if gi.is_zero():
            continue
        for m in monomials_up_to(R.nvars, cofactor_degree):
            rows.append(gi.shift(m).terms)
    columns = sorted({m for r in rows for m in r} | set(g.terms))
    index = {m: i for i, m in enumerate(columns)}

    def dense(terms):
        v = np.zeros(len(columns), dtype=np.int64)
        for m, c in terms.items():
            v[index[m]] = c
        return v

    if not rows:
        return False
    echelon, pivots = _echelon_mod_p(np.array([dense(r) for r in rows]), p)
    v = dense(g.terms) % p
    for row, col in zip(echelon, pivots):
        if v[col]:
            v = (v - v[col] * row) % p
    return not v.any()


def exact_binom_mod(n: int, k: int, p: int) -> int:
    return math.comb(n, k) % p if 0 <= k <= n else 0


def factorial_valuation_by_division(n: int, p: int) -> int:
    v, x = 0, math.factorial(n)
    while x % p == 0:
        x //= p
        v += 1
    return v
