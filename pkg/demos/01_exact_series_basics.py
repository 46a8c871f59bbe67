"""Exact series arithmetic: windows, the derivation, and classical forms.

Run:  python demos/01_exact_series_basics.py
"""

from magforms import QSeries, discriminant, eisenstein, j_invariant

print("-- truncated Laurent series with exact rational coefficients --")
f = QSeries(-1, [1, 0, 3])  # q^-1 + 3q, window [-1, 1]
g = f * f
print(f"f          = {f}")
print(f"f^2        = {g}")
print(f"1/f        = {f.inverse()}")

print()
print("-- Eisenstein series and the differential system --")
prec = 12
e2, e4, e6 = eisenstein(2, prec), eisenstein(4, prec), eisenstein(6, prec)
print(f"E2 = {e2}")
print(f"E4 = {e4}")
lhs = e4.delta()
rhs = (e2 * e4 - e6) / 3
print(f"delta E4             = {lhs}")
print(f"(E2 E4 - E6)/3 equal?  {lhs.agrees_with(rhs)}")

print()
print("-- the discriminant and the modular invariant --")
d = discriminant(8)
print(f"Delta = {d}")
j = j_invariant(5)
print(f"j     = {j}")

print()
print("-- anti-derivatives divide the n-th coefficient by n --")
anti = discriminant(20).antiderivative()
print(f"antiderivative(Delta) = {anti}")
scan = anti.integrality_check()
print(f"integral?               {bool(scan)}")
print(f"(tau(11) = 534612 is not divisible by 11: first violation at q^{scan.exponent})")
