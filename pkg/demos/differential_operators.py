"""Operators sending 1/f to 1/f^p, built three ways and checked by their action.

Run with ``python demos/differential_operators.py``.
"""

from frobdiff import parse_polynomial
from frobdiff.diffop import apply, construct_operator, fraction_operator, linear_forms_operator, monomial_operator, serialize

XYZW = ["x", "y", "z", "w"]

# Generic construction: dual-basis operators combined with Frobenius cofactors.
for src in ("x*w-y*z", "x^2+y^2+x*y+z^2+w^2", "x^3+y^3+z^3+w^3"):
    f = parse_polynomial(src, 2, XYZW)
    assoc = construct_operator(f)
    q = 2**assoc.e
    ok = apply(assoc.op, f ** (q - 1)) == f ** (q - 2)
    print(f"f = {src}  (level {assoc.e}, contract holds: {ok})")
    for line in serialize(assoc.op).splitlines():
        print(f"    {line}")

# Closed forms for monomials and for products of powers of linear forms.
print("\nmonomial x^3*y^5*z^7*w^4 over F_2:")
print("   ", serialize(monomial_operator((3, 5, 7, 4), 2).op))
assoc = linear_forms_operator([((1, 1), 2)], 3, ["x", "y"])
print(f"\n(x+y)^2 over F_3: level {assoc.e}, operator after the change of coordinates:")
print("   ", serialize(assoc.op))

# Level one also handles numerators: delta'(g/f) = (g/f)^p.
f = parse_polynomial("x^2+y^2+x*y*z", 3, ["x", "y", "z"])
g = parse_polynomial("x+y", 3, ["x", "y", "z"])
delta = fraction_operator(g, f)
print(f"\nfraction operator for g/f = ({g.render()})/({f.render()}): sends g*f^2 to g^3: {apply(delta, g * f**2) == g**3}")
