"""Ordinary versus supersingular plane cubics: level, Hasse coefficient and point count.

Run with ``python demos/elliptic_curves.py``.
"""

from frobdiff.ec import WeierstrassCoefficients, classify, scan_field

for p, coeffs in [(2, (0, 1, 0, 0, 0)), (3, (0, 0, 0, 2, 0))]:
    row = classify(WeierstrassCoefficients.general(p, *coeffs))
    print(f"p={p} general {coeffs}: {row.kind}, level {row.level}, trace {row.trace}")

for p in (5, 7, 11):
    rows = scan_field(p, "short")
    supersingular = [r.curve.coeffs for r in rows if r.kind == "supersingular"]
    print(f"\np={p}: {len(rows)} smooth short-form curves, {len(supersingular)} supersingular")
    print(f"  supersingular (a, b): {supersingular}")
    agree = all((r.level == 2) == (r.hasse_coefficient == 0) == (r.trace % p == 0) for r in rows)
    print(f"  level, Hasse coefficient and trace agree on every row: {agree}")
