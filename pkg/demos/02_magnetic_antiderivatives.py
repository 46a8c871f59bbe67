"""Magnetic forms: integral anti-derivatives and reduction certificates.

Run:  python demos/02_magnetic_antiderivatives.py
"""

from fractions import Fraction

from magforms import named_form
from magforms.quasi import (
    QuasiElement,
    magnetic_check,
    reduce_weight4,
    reduce_weight6,
    verify_certificate,
)

print("-- the three headline quotients have integral anti-derivatives --")
for tag, orders in (("F4a", (1,)), ("F4b", (1,)), ("F6", (1, 2))):
    form = named_form(tag, 500)
    for order in orders:
        ok = form.antiderivative(order).integrality_check()
        print(f"delta^-{order} {tag} integral through q^500: {bool(ok)}")

print()
print("-- weight-4 reduction: every combination decomposes exactly --")
v = Fraction(3, 2) * QuasiElement.single(1, -1, 1) - Fraction(3, 2) * QuasiElement.single(0, 1, 0)
cert = reduce_weight4(v)
print(f"input      : {v}")
print(f"anchor mu  : {cert.mu}")
print(f"generators : { {k: str(c) for k, c in cert.gens.items()} }")
print(f"delta part : {cert.delta_part}")
print(f"verified   : {verify_certificate(cert, 300)}")
print(f"magnetic   : {bool(magnetic_check(v, 300))}")

print()
print("-- weight-6 reduction hits the cubic-quotient generator --")
w = QuasiElement.single(2, -1, 1) - QuasiElement.single(0, 0, 1)
cert6 = reduce_weight6(w)
print(f"input      : {w}")
print(f"F6 coord   : {cert6.gens['F6']}  (exact expansion forces -4608)")
print(f"delta part : {cert6.delta_part}")
print(f"verified   : {verify_certificate(cert6, 300)}")

print()
print("-- the exponent family: magnetic for m in {1,2,3,4,6}, not m = 5 --")
for m in (4, 5):
    v = Fraction(1, 3) * (
        QuasiElement.single(m + 1, 0, 0) - QuasiElement.single(m, -1, 1)
    )
    rep = magnetic_check(v, 200)
    tail = "" if rep.ok else f"  (witness q^{rep.exponent}, denominator {rep.denominator})"
    print(f"E2^{m} (delta E4)/E4 magnetic through q^200: {rep.ok}{tail}")
