"""The additive lift from weight k+1/2 plus-space series to weight 2k, its
one-sided inverse, the square part, and the strong-magnetic congruence check.

With D = 1 for k even and D = -3 for k odd, the lift sends a Laurent series
f = sum a(n) q^n to F = sum_{n>0} A(n) q^n where

    A(n) = sum_{d|n} (d|D) d^(k-1) a(|D| n^2 / d^2).

The reverse map reads off b(n/d) with a Moebius weight and is supported on the
exponents |D| n^2.  Both maps accept arbitrary Laurent series with the weight
supplied explicitly; nothing here assumes modularity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .series import PrecisionError, QSeries, UsageError
from .halfint import PlusForm, kronecker


def lift_discriminant(k: int) -> int:
    """D = 1 for k even, -3 for k odd."""
    if k < 1:
        raise UsageError("lift weight parameter k must be >= 1")
    return 1 if k % 2 == 0 else -3


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _moebius(n: int) -> int:
    if n == 1:
        return 1
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


def psi(f: PlusForm | QSeries, k: int | None = None) -> QSeries:
    """The lift; output exponents run from 1 to isqrt(prec/|D|)."""
    if isinstance(f, PlusForm):
        series = f.series
        k = f.k if k is None else k
    else:
        series = f
        if k is None:
            raise UsageError("psi on a raw series needs the weight parameter k")
    D = lift_discriminant(k)
    n_max = isqrt(series.prec // abs(D)) if series.prec >= abs(D) else 0
    if n_max < 1:
        raise PrecisionError(
            f"input precision {series.prec} yields no lifted coefficients"
        )
    out = []
    for n in range(1, n_max + 1):
        acc = Fraction(0)
        for d in _divisors(n):
            sym = kronecker(d, D)
            if sym:
                acc += sym * Fraction(d) ** (k - 1) * series._get(abs(D) * (n // d) ** 2)
        out.append(acc)
    return QSeries(1, out)


def phi(F: QSeries, k: int, out_prec: int | None = None) -> QSeries:
    """The reverse map, supported on the exponents |D| n^2."""
    D = lift_discriminant(k)
    n_max = F.prec
    if n_max < 1:
        raise PrecisionError("input precision too small for the reverse lift")
    full_prec = abs(D) * (n_max + 1) ** 2 - 1
    if out_prec is None:
        out_prec = full_prec
    if out_prec > full_prec:
        raise PrecisionError(
            f"requested output precision {out_prec} exceeds derivable {full_prec}"
        )
    coeffs = [Fraction(0)] * out_prec  # exponents 1..out_prec
    for n in range(1, n_max + 1):
        e = abs(D) * n * n
        if e > out_prec:
            break
        acc = Fraction(0)
        for d in _divisors(n):
            mu = _moebius(d)
            if not mu:
                continue
            sym = kronecker(d, D)
            if sym:
                acc += sym * mu * Fraction(d) ** (k - 1) * F._get(n // d)
        coeffs[e - 1] = acc
    return QSeries(1, coeffs)


def square_part(f: QSeries, k: int) -> QSeries:
    """Keep exactly the coefficients at exponents |D| n^2 with n > 0."""
    D = lift_discriminant(k)
    if f.prec < 1:
        raise PrecisionError("square part needs a window reaching past q^0")
    coeffs = [Fraction(0)] * f.prec
    n = 1
    while abs(D) * n * n <= f.prec:
        coeffs[abs(D) * n * n - 1] = f._get(abs(D) * n * n)
        n += 1
    return QSeries(1, coeffs)


@dataclass(frozen=True)
class CongruenceReport:
    ok: bool
    prime: int
    n: int
    power: int
    exponent: int | None
    value: Fraction | None
    window: tuple[int, int]

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return (
                f"CongruenceReport(OK: {self.prime}^{self.n} | m implies "
                f"{self.prime}^{self.power * self.n} | A(m) on {self.window})"
            )
        return (
            f"CongruenceReport(failure at m={self.exponent}: A(m)={self.value} "
            f"not divisible by {self.prime}^{self.power * self.n})"
        )


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def strong_magnetic_congruence_check(
    F: QSeries, p: int, n: int, power: int = 1
) -> CongruenceReport:
    """Verify p^n | m implies p^(power*n) | A(m) for every tracked m > 0."""
    if not _is_prime(p):
        raise UsageError(f"{p} is not prime")
    if n < 1:
        raise UsageError("congruence exponent n must be positive")
    if power not in (1, 2):
        raise UsageError("power must be 1 or 2")
    integ = F.integrality_check()
    if not integ.ok:
        raise UsageError(
            f"strong magnetic check needs integral input; denominator "
            f"{integ.denominator} at q^{integ.exponent}"
        )
    step = p**n
    modulus = p ** (power * n)
    start = ((max(F.lead, 1) + step - 1) // step) * step
    for m in range(start, F.prec + 1, step):
        a = F._get(m)
        if a.numerator % modulus:
            return CongruenceReport(False, p, n, power, m, a, (F.lead, F.prec))
    return CongruenceReport(True, p, n, power, None, None, (F.lead, F.prec))
