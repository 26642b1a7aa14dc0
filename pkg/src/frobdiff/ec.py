"""Plane cubic curves over F_p: ordinary versus supersingular.

Three independent signals are compared for every smooth curve:

* the level of the cubic (1 for ordinary, 2 for supersingular),
* the coefficient of ``(xyz)**(p-1)`` in ``f**(p-1)`` (the Hasse invariant),
* the trace ``a_p = p + 1 - #C(F_p)`` from brute-force point counting.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .errors import ConsistencyError, SingularCurveError
from .ff import FpElement, Prime
from .ideal import GREVLEX, IdealBasis, groebner
from .level import level_of
from .poly import MultiPoly, Ring, _small_power

__all__ = [
    "WeierstrassCoefficients",
    "CurveClassification",
    "cubic_of",
    "is_smooth",
    "hasse_ordinary",
    "point_count_trace",
    "classify",
    "scan_field",
]

NAMES = ("x", "y", "z")


@dataclass(frozen=True)
class WeierstrassCoefficients:
    """Coefficients of a plane cubic in Weierstrass form.

    ``form`` is ``"general"`` with ``coeffs = (a1, a3, a2, a4, a6)`` or
    ``"short"`` with ``coeffs = (a, b)``; the latter needs ``p > 3``.
    Smoothness is not enforced here so that singular fixtures such as the
    cusp can still be expanded; :func:`classify` rejects them.
    """

    p: Prime
    form: str
    coeffs: tuple[int, ...]

    def __post_init__(self):
        p = Prime(self.p)
        object.__setattr__(self, "p", p)
        coeffs = tuple(int(c) % p for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if self.form == "short":
            if p in (2, 3):
                raise ValueError("the short Weierstrass form needs p > 3")
            if len(coeffs) != 2:
                raise ValueError("short form takes (a, b)")
        elif self.form == "general":
            if len(coeffs) != 5:
                raise ValueError("general form takes (a1, a3, a2, a4, a6)")
        else:
            raise ValueError(f"unknown form {self.form!r}")

    @classmethod
    def short(cls, p, a: int, b: int) -> WeierstrassCoefficients:
        return cls(p, "short", (a, b))

    @classmethod
    def general(cls, p, a1: int, a3: int, a2: int, a4: int, a6: int) -> WeierstrassCoefficients:
        return cls(p, "general", (a1, a3, a2, a4, a6))


@dataclass(frozen=True)
class CurveClassification:
    curve: WeierstrassCoefficients
    kind: str
    level: int
    hasse_coefficient: FpElement
    trace: int | None = None
    count: int | None = None

    def to_json(self) -> dict:
        return {
            "p": int(self.curve.p),
            "form": self.curve.form,
            "coefficients": list(self.curve.coeffs),
            "kind": self.kind,
            "level": self.level,
            "hasse_coefficient": int(self.hasse_coefficient),
            "trace": self.trace,
            "count": self.count,
        }


def cubic_of(w: WeierstrassCoefficients) -> MultiPoly:
    ring = Ring(w.p, NAMES)
    if w.form == "short":
        a, b = w.coeffs
        terms = {(0, 2, 1): 1, (3, 0, 0): -1, (1, 0, 2): a, (0, 0, 3): b}
    else:
        a1, a3, a2, a4, a6 = w.coeffs
        terms = {
            (0, 2, 1): 1,
            (1, 1, 1): a1,
            (0, 1, 2): a3,
            (3, 0, 0): -1,
            (2, 0, 1): -a2,
            (1, 0, 2): -a4,
            (0, 0, 3): -a6,
        }
    return MultiPoly(ring, terms)


def _check_plane_cubic(f: MultiPoly):
    if f.ring.nvars != 3 or f.is_zero() or not f.is_homogeneous() or f.degree != 3:
        raise ValueError("expected a nonzero homogeneous cubic in three variables")


def is_smooth(f: MultiPoly) -> bool:
    """No common projective zero of ``f`` and its partials over the algebraic closure.

    The Jacobian ideal is then primary to the irrelevant ideal (or the unit
    ideal), which shows up as a pure power of each variable among the leading
    monomials of its Groebner basis.
    """
    _check_plane_cubic(f)
    gens = [f] + [f.derivative(i) for i in range(3)]
    gb = groebner(IdealBasis(gens, f.ring), GREVLEX)
    if gb.is_unit():
        return True
    lms = gb.leading_monomials
    return all(any(m[i] > 0 and sum(m) == m[i] for m in lms) for i in range(3))


def hasse_ordinary(f: MultiPoly) -> tuple[bool, FpElement]:
    _check_plane_cubic(f)
    p = int(f.p)
    c = _small_power(f, p - 1).coefficient((p - 1,) * 3)
    return c != 0, FpElement(c, f.p)


def _evaluate(f: MultiPoly, point: Sequence[int]) -> int:
    p = int(f.p)
    total = 0
    for m, c in f.terms.items():
        v = c
        for base, a in zip(point, m):
            v = v * pow(base, a, p)
        total += v
    return total % p


def _projective_points(p: int):
    for x in range(p):
        for y in range(p):
            yield (x, y, 1)
    for x in range(p):
        yield (x, 1, 0)
    yield (1, 0, 0)


def point_count_trace(w: WeierstrassCoefficients | MultiPoly) -> tuple[int, int]:
    """Count points on the curve over P^2(F_p) by enumeration; returns ``(count, a_p)``."""
    f = cubic_of(w) if isinstance(w, WeierstrassCoefficients) else w
    if not is_smooth(f):
        raise SingularCurveError(f"{f} is singular")
    p = int(f.p)
    count = sum(1 for pt in _projective_points(p) if _evaluate(f, pt) == 0)
    return count, p + 1 - count


def classify(w: WeierstrassCoefficients, with_trace: bool = True) -> CurveClassification:
    f = cubic_of(w)
    if not is_smooth(f):
        raise SingularCurveError(f"{f.render()} is singular over F_{int(w.p)}")
    level = level_of(f).level
    ordinary, coefficient = hasse_ordinary(f)
    if level not in (1, 2):
        raise ConsistencyError(f"{f.render()} has level {level}, expected 1 or 2")
    if (level == 1) != ordinary:
        raise ConsistencyError(f"level {level} disagrees with Hasse coefficient {int(coefficient)}")
    count = trace = None
    if with_trace:
        count, trace = point_count_trace(f)
        if (trace % int(w.p) != 0) != ordinary:
            raise ConsistencyError(f"trace {trace} disagrees with level {level}")
    kind = "ordinary" if level == 1 else "supersingular"
    return CurveClassification(w, kind, level, coefficient, trace, count)


def _classify_or_none(w: WeierstrassCoefficients):
    try:
        return classify(w)
    except SingularCurveError:
        return None


def scan_field(p, form: str = "short", workers: int | None = None) -> list[CurveClassification]:
    """Classify every smooth curve of the given form over F_p, in coefficient order.

    ``workers`` (or the ``FROBDIFF_THREADS`` environment variable) enables a
    process pool; the row order does not depend on scheduling.
    """
    p = Prime(p)
    size = 2 if form == "short" else 5
    curves = [WeierstrassCoefficients(p, form, c) for c in itertools.product(range(p), repeat=size)]
    if workers is None:
        workers = int(os.environ.get("FROBDIFF_THREADS", "1") or 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_classify_or_none, curves, chunksize=16))
    else:
        rows = [_classify_or_none(w) for w in curves]
    return [row for row in rows if row is not None]
