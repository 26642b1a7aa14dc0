"""Ideals of p^e-th roots and membership in bracket powers.

``I_e(g)`` is generated by the coefficients of ``g`` over the monomial basis
of R as a module over R^{p^e}; no auxiliary ring or elimination is needed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotInBracketPowerError
from .ideal import GREVLEX, GroebnerBasis, IdealBasis, contains, groebner, normal_form
from .poly import MultiPoly, frobenius_decompose

__all__ = [
    "RootIdeal",
    "ideal_of_roots",
    "root_generators",
    "bracket_member",
    "express_in_bracket_power",
    "non_f_pure_ideal",
]


@dataclass
class RootIdeal:
    e: int
    source: MultiPoly
    ideal: IdealBasis

    @property
    def generators(self) -> list[MultiPoly]:
        return self.ideal.generators

    def is_unit(self) -> bool:
        return self.ideal.is_unit()

    def render(self) -> list[str]:
        return self.ideal.render()


def root_generators(g: MultiPoly, e: int) -> list[MultiPoly]:
    """The raw coefficients ``g_mu`` of the basis decomposition, in grevlex order of ``mu``."""
    return [part for _, part in frobenius_decompose(g, e).sorted_items()]


def ideal_of_roots(g: MultiPoly, e: int) -> RootIdeal:
    """``I_e(g)`` as a reduced Groebner basis."""
    if e < 1:
        raise ValueError("e must be positive")
    gb = groebner(IdealBasis(root_generators(g, e), g.ring))
    return RootIdeal(e, g, gb.ideal())


def bracket_member(g: MultiPoly, J, e: int) -> bool:
    """Whether ``g`` lies in ``J^[p^e]``, decided as ``I_e(g) ⊆ J``."""
    if e < 1:
        raise ValueError("e must be positive")
    if isinstance(J, RootIdeal):
        J = J.ideal
    gb = J if isinstance(J, GroebnerBasis) else J.gb()
    return all(contains(gb, h) for h in root_generators(g, e))


def express_in_bracket_power(g: MultiPoly, J: IdealBasis, e: int) -> list[MultiPoly]:
    """Find ``alpha`` with ``g == sum(alpha[i] * J.generators[i] ** p**e)``.

    Each coefficient ``b`` of ``g`` over the basis monomials is written as
    ``sum(u_i * c_i)`` by a cofactor-tracked reduction; since the q-th power
    map is additive, ``alpha_i = sum(u_i**q * x**mu)``.
    """
    if isinstance(J, RootIdeal):
        J = J.ideal
    ring = g.ring
    q = ring.p**e
    gens = J.generators
    gb = groebner(IdealBasis(gens, ring), GREVLEX, track_cofactors=True)
    p = int(ring.p)
    acc: list[dict] = [{} for _ in gens]
    for mu, b in frobenius_decompose(g, e).sorted_items():
        rem, quots = normal_form(b, gb, with_quotients=True)
        if not rem.is_zero():
            raise NotInBracketPowerError(f"{g} is not in the bracket power of {J}")
        for i in range(len(gens)):
            u = ring.zero()
            for k, qk in enumerate(quots):
                cof = gb.cofactors[k][i]
                if not (qk.is_zero() or cof.is_zero()):
                    u = u + qk * cof
            target = acc[i]
            for m, c in u.terms.items():
                key = tuple(a * q + s for a, s in zip(m, mu))
                target[key] = (target.get(key, 0) + c) % p
    return [MultiPoly(ring, terms) for terms in acc]


def non_f_pure_ideal(f: MultiPoly) -> RootIdeal:
    """The stabilized root ideal ``I_e(f^(p^e-1))`` at ``e = level(f)``."""
    from .level import level_of

    return level_of(f).stabilized_ideal
