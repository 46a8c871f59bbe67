"""Half-integral weight forms, the canonical basis, and the additive lift.

Run:  python demos/03_plus_space_and_lifts.py
"""

from magforms import named_form
from magforms.halfint import named_plus_form, plus_basis, raising, t4_prime
from magforms.lifts import phi, psi, square_part

print("-- named weight-5/2 forms (plus-space support checked on construction) --")
for name in ("g0", "f4a", "f4b"):
    form = named_plus_form(name, 30)
    print(f"{name:4s} = {form.series}")

print()
print("-- the canonical basis q^-m + O(q), built by exact linear algebra --")
basis = plus_basis(2, [0, 3, 4, 7], 40)
for m in (3, 7):
    print(f"f{m}  = {basis[m].series}")

print()
print("-- the raising operator sends weight 1/2 to weight 5/2 --")
h0 = named_plus_form("h0", 60)
image = raising(h0).series * (-6) / 19
f4a = named_plus_form("f4a", 40)
print(f"-(6/19) D h0 == 64 f4a ? {image.agrees_with(64 * f4a.series, -3, 40)}")

print()
print("-- the lift turns the weight-5/2 data into Delta/E4^2 --")
f4a_wide = named_plus_form("f4a", 1600)
lifted = psi(f4a_wide)
print(f"psi(f4a)        = {lifted}")
print(f"equals Delta/E4^2 through q^{lifted.prec}: "
      f"{lifted.agrees_with(named_form('F4a', lifted.prec), 1, lifted.prec)}")

print()
print("-- reverse map recovers exactly the square part --")
sq = phi(lifted, 2)
print(f"phi(psi(f4a)) == f4a^square ? "
      f"{sq.agrees_with(square_part(f4a_wide.series, 2), 1, min(sq.prec, 1600))}")

print()
print("-- the plus-space Hecke operator at 2 --")
t = t4_prime(basis[4])
print(f"f4|T4' = {t.series}")
