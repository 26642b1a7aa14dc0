"""Levels of a few polynomials and the root ideals they stabilize at.

Run with ``python demos/levels_and_root_ideals.py``.
"""

from frobdiff import parse_polynomial
from frobdiff.froots import ideal_of_roots
from frobdiff.level import level_of, monomial_level
from frobdiff.poly import power_q_minus_one

XYZW = ["x", "y", "z", "w"]

# A monomial: the closed form and the generic loop must agree.
f = parse_polynomial("x^3*y^5*z^7*w^4", 2, XYZW)
generic = level_of(f)
closed = monomial_level((3, 5, 7, 4), 2)
print(f"f = {f.render()} over F_2")
print(f"  generic loop : level {generic.level}, ideal {generic.stabilized_ideal.render()}")
print(f"  closed form  : level {closed.level}, ideal {closed.stabilized_ideal.render()}")

# Watching the chain of root ideals settle for a non-monomial example.
f = parse_polynomial("x*y^3+x^3", 2, ["x", "y"])
print(f"\nf = {f.render()} over F_2")
power = None
for e in range(1, 6):
    power = power_q_minus_one(f, e, power)
    print(f"  I_{e}(f^(2^{e}-1)) = {ideal_of_roots(power, e).render()}")
print(f"  level {level_of(f).level}")

# The diagonal cubic has level one at p = 7 but level two at p = 5.
for p in (5, 7):
    f = parse_polynomial("x^3+y^3+z^3", p, ["x", "y", "z"])
    result = level_of(f)
    print(f"\nf = {f.render()} over F_{p}: level {result.level}, ideal {result.stabilized_ideal.render()}")
