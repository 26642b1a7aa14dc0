"""The level of a polynomial and the shortcuts that certify level one.

The generic loop walks the descending chain ``I_e(f^(p^e-1))`` and stops at
the first ``e`` with ``f^(p^e-p)`` in the bracket power of the current ideal.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Sequence

from .errors import LevelBoundExceeded
from .ff import Prime, base_p_digits
from .froots import RootIdeal, bracket_member, ideal_of_roots
from .ideal import IdealBasis, contains
from .poly import MultiPoly, Ring, _small_power, frobenius_decompose

__all__ = [
    "LevelResult",
    "CertificateKind",
    "LevelOneCertificate",
    "level_of",
    "monomial_level",
    "ceil_log",
    "level_one_certificate",
    "check_certificate",
    "is_regular",
    "tjurina_ideal",
    "is_linear_form_square",
]


@dataclass
class LevelResult:
    level: int
    stabilized_ideal: RootIdeal
    certificate: Any = "generic-loop"
    # f**(p**level - 1), kept so operator construction does not redo the power
    power: MultiPoly | None = field(default=None, repr=False)


def level_of(f: MultiPoly) -> LevelResult:
    if f.is_zero():
        raise ValueError("the level is only defined for nonzero f")
    p = f.p
    cap = max(int(f.degree), 1) + 1
    base = _small_power(f, p - 1)
    previous = f.ring.one()  # f**(p**(e-1) - 1)
    for e in range(1, cap + 1):
        power = previous.frobenius(p) * base
        roots = ideal_of_roots(power, e)
        # f**(p**e - p) is the p-th power of the previous stage
        if bracket_member(previous.frobenius(p), roots.ideal, e):
            return LevelResult(e, roots, "generic-loop", power)
        previous = power
    raise LevelBoundExceeded(f"level loop for {f} passed e = {cap}")


def ceil_log(a: int, p: int) -> int:
    """``ceil(log_p(a))`` for ``a >= 1`` as the digit count of ``a - 1``."""
    if a < 1:
        raise ValueError("a must be positive")
    return 0 if a == 1 else len(base_p_digits(a - 1, p))


def monomial_level(exponents: Sequence[int], p, names: Sequence[str] | None = None) -> LevelResult:
    """Closed-form level and root ideal of ``x**exponents``."""
    p = Prime(p)
    exponents = [int(a) for a in exponents]
    if any(a < 0 for a in exponents):
        raise ValueError("exponents must be non-negative")
    ring = Ring(p, tuple(names)) if names else Ring.default(p, len(exponents))
    present = [a for a in exponents if a > 0]
    if not present:
        return LevelResult(1, RootIdeal(1, ring.one(), IdealBasis([ring.one()])), "monomial-closed-form")
    e = ceil_log(max(present), p) + 1
    generator = ring.monomial([max(a - 1, 0) for a in exponents])
    f = ring.monomial(exponents)
    return LevelResult(e, RootIdeal(e, f, IdealBasis([generator])), "monomial-closed-form")


# -- certificates ------------------------------------------------------------


class CertificateKind(str, enum.Enum):
    UNIT_COEFFICIENT = "unit-coefficient"
    BASIS_MONOMIAL_SUPPORT = "basis-monomial-support"
    SQUAREFREE_PRIVATE_VARIABLE = "squarefree-private-variable"
    ALL_SQUAREFREE = "all-squarefree"
    QUADRIC = "quadric"
    DIAGONAL = "diagonal"
    REGULAR_CHAR_2 = "regular-char-2"


@dataclass(frozen=True)
class LevelOneCertificate:
    kind: CertificateKind
    witness: Any


def _squarefree_private_variable(f: MultiPoly):
    for m in sorted(f.terms):
        if max(m) != 1:
            continue
        others = [n for n in f.terms if n != m]
        for i, a in enumerate(m):
            if a and all(n[i] == 0 for n in others):
                return {"term": m, "variable": f.ring.names[i]}
    return None


def _all_squarefree(f: MultiPoly):
    if all(max(m, default=0) <= 1 for m in f.terms):
        return {"degree": int(f.degree)}
    return None


def is_linear_form_square(f: MultiPoly) -> bool:
    """Whether ``f = c * l**2`` for a linear form ``l`` and unit ``c``."""
    if f.is_zero() or not f.is_homogeneous() or f.degree != 2:
        return False
    ring = f.ring
    p = int(ring.p)
    d = ring.nvars
    diag = [f.coefficient(tuple(2 if k == i else 0 for k in range(d))) for i in range(d)]
    if p == 2:
        # Frobenius: sum(c_i x_i^2) = (sum(c_i x_i))^2
        return all(sum(m) == 2 and max(m) == 2 for m in f.terms)
    pivot = next((i for i, c in enumerate(diag) if c), None)
    if pivot is None:
        return False
    lam = diag[pivot]
    inv2lam = pow(2 * lam, p - 2, p)
    coeffs = []
    for j in range(d):
        if j == pivot:
            coeffs.append(1)
        else:
            m = [0] * d
            m[pivot] += 1
            m[j] += 1
            coeffs.append(f.coefficient(tuple(m)) * inv2lam % p)
    ell = sum((ring.gen(j).scale(c) for j, c in enumerate(coeffs) if c), ring.zero())
    return (ell * ell).scale(lam) == f


def _quadric(f: MultiPoly):
    if f.is_homogeneous() and f.degree == 2 and not is_linear_form_square(f):
        return {"rank_gt_one": True}
    return None


def _diagonal(f: MultiPoly):
    p = int(f.p)
    terms = f.terms
    if not terms or any(c != 1 for c in terms.values()):
        return None
    t = None
    used = set()
    for m in terms:
        nz = [i for i, a in enumerate(m) if a]
        if len(nz) != 1:
            return None
        i = nz[0]
        if t is None:
            t = m[i]
        if m[i] != t or i in used:
            return None
        used.add(i)
    n = len(used)
    if t <= min(n, p) and (p - 1) % t == 0:
        return {"t": t, "variables": [f.ring.names[i] for i in sorted(used)]}
    return None


def _unit_coefficient(f: MultiPoly):
    power = _small_power(f, f.p - 1)
    for mu, part in frobenius_decompose(power, 1).sorted_items():
        if part.is_constant():
            return {"basis_monomial": mu, "e": 1}
    return None


def _basis_monomial_support(f: MultiPoly):
    if not f.is_homogeneous():
        return None
    p = int(f.p)
    power = _small_power(f, p - 1)
    hits = sorted(m for m in power.terms if max(m) <= p - 1)
    if hits:
        return {"basis_monomial": hits[0]}
    return None


def _regular_char_2(f: MultiPoly):
    if int(f.p) == 2 and is_regular(f):
        return {"tjurina": "unit"}
    return None


_CHECKS = {
    CertificateKind.SQUAREFREE_PRIVATE_VARIABLE: _squarefree_private_variable,
    CertificateKind.ALL_SQUAREFREE: _all_squarefree,
    CertificateKind.QUADRIC: _quadric,
    CertificateKind.DIAGONAL: _diagonal,
    CertificateKind.UNIT_COEFFICIENT: _unit_coefficient,
    CertificateKind.BASIS_MONOMIAL_SUPPORT: _basis_monomial_support,
    CertificateKind.REGULAR_CHAR_2: _regular_char_2,
}

# Support scans run before the checks that expand f^(p-1). The unit-coefficient
# test would otherwise shadow the squarefree-variable witness on x^2+y^2+xyz.
CERTIFICATE_ORDER = tuple(_CHECKS)


def check_certificate(f: MultiPoly, kind) -> LevelOneCertificate | None:
    """Run a single certificate test."""
    if f.is_zero():
        raise ValueError("f must be nonzero")
    kind = CertificateKind(kind)
    witness = _CHECKS[kind](f)
    return None if witness is None else LevelOneCertificate(kind, witness)


def level_one_certificate(f: MultiPoly) -> LevelOneCertificate | None:
    """First certificate (in :data:`CERTIFICATE_ORDER`) proving level one, if any.

    A ``None`` result decides nothing.
    """
    for kind in CERTIFICATE_ORDER:
        cert = check_certificate(f, kind)
        if cert is not None:
            return cert
    return None


def tjurina_ideal(f: MultiPoly) -> IdealBasis:
    gens = [f] + [f.derivative(i) for i in range(f.ring.nvars)]
    return IdealBasis(gens, f.ring)


def is_regular(f: MultiPoly) -> bool:
    if f.is_zero():
        raise ValueError("f must be nonzero")
    return contains(tjurina_ideal(f), f.ring.one())
