"""Cheap certificates that a polynomial has level one, checked against the generic loop.

Run with ``python demos/level_one_certificates.py``.
"""

from frobdiff import parse_polynomial
from frobdiff.level import check_certificate, is_regular, level_of, level_one_certificate

CASES = [
    ("x^2+y^2+x*y*z", 3, "x,y,z"),
    ("a*e*i+b*f*g+c*d*h-c*e*g-b*d*i-a*f*h", 2, "a,b,c,d,e,f,g,h,i"),
    ("x^3+y^3+z^3", 7, "x,y,z"),
    ("x^2+y^2+x*y+z^2+w^2", 5, "x,y,z,w"),
    ("x^3+y^3+z^3", 5, "x,y,z"),
]

for src, p, names in CASES:
    f = parse_polynomial(src, p, names.split(","))
    cert = level_one_certificate(f)
    found = f"{cert.kind.value} {cert.witness}" if cert else "none"
    print(f"{src:40s} p={p}  certificate: {found:45s} generic level: {level_of(f).level}")

# The char-2 regularity certificate is tried last; ask for it by name.
f = parse_polynomial("x+y^2*z+z^3", 2, ["x", "y", "z"])
print(f"\nregular in char 2: {is_regular(f)}; certificate {check_certificate(f, 'regular-char-2').kind.value}")
