"""Exact truncated Laurent series over arbitrary-precision rationals.

A :class:`QSeries` stores the coefficients of a Laurent series on an explicit
window of exponents ``[lead, prec]`` (both inclusive).  The series is zero
below ``lead`` by construction and *unknown* above ``prec``; no operation ever
fabricates a coefficient outside the window it can honestly derive.  All
coefficients are :class:`fractions.Fraction` values, so every computation in
this package is exact.

Precision propagates pessimistically:

* sums and differences are known through the smallest input ``prec``;
* a product ``f*g`` is known through ``min(f.prec + v(g), g.prec + v(f))``
  where ``v`` is the valuation (first nonzero exponent);
* the inverse of a series with valuation ``v`` is known through
  ``f.prec - 2*v``.

Multiplication uses Kronecker substitution: coefficient lists are cleared of
denominators, packed into one huge integer, and multiplied with gmpy2 (GMP)
when available, falling back to Python ints otherwise.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Union

try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - gmpy2 is a normal install here
    _mpz = int


class SeriesError(Exception):
    """Base class for errors raised by the series layer."""


class UsageError(SeriesError):
    """An operation was called with structurally invalid arguments."""


class DomainError(SeriesError):
    """The operation is undefined for this input (e.g. inverting zero)."""


class PrecisionError(SeriesError):
    """A coefficient outside the known window was requested."""


class AntiderivativeError(DomainError):
    """The formal anti-derivative does not exist (nonzero constant term)."""


Scalar = Union[int, Fraction]

_SCHOOLBOOK_CUTOFF = 24


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise UsageError(f"not an exact rational: {x!r}")


def _clear_denominators(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    """Return integer numerators and the common denominator of *coeffs*."""
    den = 1
    for c in coeffs:
        if c.denominator != 1:
            den = lcm(den, c.denominator)
    if den == 1:
        return [c.numerator for c in coeffs], 1
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _conv_int(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Exact convolution of two integer coefficient lists."""
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return []
    if min(la, lb) <= _SCHOOLBOOK_CUTOFF:
        if la > lb:
            a, b, la, lb = b, a, lb, la
        out = [0] * (la + lb - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return out
    return _conv_kronecker(a, b)


def _conv_kronecker(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Convolution by packing both lists into single big integers.

    Signed digits are handled with an offset encoding: each digit is shifted
    by 2^(width-1) while packing, represented as a repeated byte pattern so no
    big division is ever needed, and the balanced digits are recovered after
    the product.
    """
    amax = max(abs(c) for c in a)
    bmax = max(abs(c) for c in b)
    if amax == 0 or bmax == 0:
        return [0] * (len(a) + len(b) - 1)
    need = amax.bit_length() + bmax.bit_length() + min(len(a), len(b)).bit_length() + 2
    nbytes = (need + 7) // 8 + 1
    width = 8 * nbytes
    off = 1 << (width - 1)
    pattern = bytes(nbytes - 1) + b"\x80"  # little-endian bytes of `off`

    def pack(cs: Sequence[int]):
        buf = bytearray(len(cs) * nbytes)
        for i, c in enumerate(cs):
            buf[i * nbytes : (i + 1) * nbytes] = (c + off).to_bytes(nbytes, "little")
        val = int.from_bytes(bytes(buf), "little")
        return _mpz(val) - _mpz(int.from_bytes(pattern * len(cs), "little"))

    prod = pack(a) * pack(b)
    length = len(a) + len(b) - 1
    lifted = int(prod + _mpz(int.from_bytes(pattern * length, "little")))
    raw = lifted.to_bytes(length * nbytes + 16, "little")
    return [
        int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little") - off
        for i in range(length)
    ]


def _conv_fraction(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    na, da = _clear_denominators(a)
    nb, db = _clear_denominators(b)
    nums = _conv_int(na, nb)
    den = da * db
    if den == 1:
        return [Fraction(x) for x in nums]
    return [Fraction(x, den) for x in nums]


def _power_series_inverse(u: Sequence[Fraction]) -> list[Fraction]:
    """Inverse of a power series (u[0] != 0) to the same length, by Newton."""
    length = len(u)
    w = [Fraction(1) / u[0]]
    t = 1
    while t < length:
        t2 = min(2 * t, length)
        e = _conv_fraction(list(u[:t2]), w)[:t2]
        corr = [-c for c in e]
        corr[0] += 2
        w = _conv_fraction(w, corr)[:t2]
        if len(w) < t2:
            w.extend([Fraction(0)] * (t2 - len(w)))
        t = t2
    return w


class QSeries:
    """A truncated Laurent series with exact rational coefficients.

    ``coeffs[i]`` is the coefficient of ``q**(lead+i)``; the window runs from
    ``lead`` to ``prec`` inclusive.  Instances are immutable; every operation
    returns a fresh series.
    """

    __slots__ = ("lead", "prec", "coeffs")

    def __init__(self, lead: int, coeffs: Iterable, prec: int | None = None):
        cs = tuple(_as_fraction(c) for c in coeffs)
        if prec is None:
            prec = lead + len(cs) - 1
        if len(cs) != prec - lead + 1:
            raise UsageError(
                f"coefficient count {len(cs)} does not match window [{lead}, {prec}]"
            )
        if prec < lead:
            raise UsageError("empty window: prec < lead")
        object.__setattr__(self, "lead", lead)
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, *args):
        raise AttributeError("QSeries is immutable")

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, prec: int, lead: int = 0) -> "QSeries":
        return cls(lead, [0] * (prec - lead + 1))

    @classmethod
    def one(cls, prec: int) -> "QSeries":
        return cls(0, [1] + [0] * prec)

    @classmethod
    def monomial(cls, exponent: int, coeff: Scalar = 1, prec: int | None = None) -> "QSeries":
        if prec is None:
            prec = exponent
        if prec < exponent:
            raise UsageError("prec below the monomial exponent")
        return cls(exponent, [coeff] + [0] * (prec - exponent))

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------

    def coefficient(self, n: int) -> Fraction:
        """Exact coefficient of q**n; raises PrecisionError outside the window."""
        if n < self.lead or n > self.prec:
            raise PrecisionError(
                f"coefficient at q^{n} outside known window [{self.lead}, {self.prec}]"
            )
        return self.coeffs[n - self.lead]

    def _get(self, n: int) -> Fraction:
        """Coefficient of q**n, using that the series is zero below `lead`.

        Still refuses to read above `prec`, where nothing is known.
        """
        if n > self.prec:
            raise PrecisionError(
                f"coefficient at q^{n} beyond known precision {self.prec}"
            )
        if n < self.lead:
            return Fraction(0)
        return self.coeffs[n - self.lead]

    def _first_possible_nonzero(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return self.lead + i
        return self.prec + 1

    def valuation(self) -> int:
        """Smallest exponent with a nonzero tracked coefficient."""
        v = self._first_possible_nonzero()
        if v > self.prec:
            raise DomainError("valuation of a series that is zero on its window")
        return v

    def is_zero_window(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def constant_term(self) -> Fraction:
        return self._get(0)

    # ------------------------------------------------------------------
    # ring operations
    # ------------------------------------------------------------------

    def __neg__(self) -> "QSeries":
        return QSeries(self.lead, [-c for c in self.coeffs])

    def __add__(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return linear_combine([(1, self), (1, other)])
        return self + QSeries.monomial(0, _as_fraction(other), max(self.prec, 0))

    __radd__ = __add__

    def __sub__(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return linear_combine([(1, self), (-1, other)])
        return self + (-_as_fraction(other))

    def __rsub__(self, other) -> "QSeries":
        return (-self) + other

    def _scale(self, a: Fraction) -> "QSeries":
        if a == 1:
            return self
        return QSeries(self.lead, [a * c for c in self.coeffs])

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return mul(self, other)
        return self._scale(_as_fraction(other))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return mul(self, other.inverse())
        a = _as_fraction(other)
        if a == 0:
            raise DomainError("division by zero scalar")
        return self._scale(1 / a)

    def __pow__(self, n: int) -> "QSeries":
        return pow_int(self, n)

    def inverse(self) -> "QSeries":
        return inv(self)

    # ------------------------------------------------------------------
    # calculus and substitution
    # ------------------------------------------------------------------

    def delta(self) -> "QSeries":
        """Apply q d/dq: multiply the coefficient at q**n by n."""
        return QSeries(
            self.lead, [c * (self.lead + i) for i, c in enumerate(self.coeffs)]
        )

    def antiderivative(self, order: int = 1) -> "QSeries":
        """Formal anti-derivative (inverse of delta), `order` times.

        The integration constant is fixed to 0.  Raises AntiderivativeError
        when a nonzero constant term blocks the operation.
        """
        if order < 1:
            raise UsageError("antiderivative order must be a positive integer")
        cur = list(self.coeffs)
        for _ in range(order):
            if self.lead <= 0 <= self.prec:
                c0 = cur[-self.lead]
                if c0 != 0:
                    raise AntiderivativeError(
                        f"no formal anti-derivative: constant term {c0} is nonzero"
                    )
            cur = [
                c / (self.lead + i) if (self.lead + i) != 0 else Fraction(0)
                for i, c in enumerate(cur)
            ]
        return QSeries(self.lead, cur)

    def substitute_power(self, m: int) -> "QSeries":
        """Replace q by q**m (exponent n becomes m*n); gaps become zeros."""
        if m < 1:
            raise UsageError("substitute_power requires m >= 1")
        if m == 1:
            return self
        n = len(self.coeffs)
        out = [Fraction(0)] * ((n - 1) * m + 1)
        for i, c in enumerate(self.coeffs):
            out[i * m] = c
        return QSeries(self.lead * m, out)

    # ------------------------------------------------------------------
    # window manipulation
    # ------------------------------------------------------------------

    def truncate(self, new_prec: int) -> "QSeries":
        """Restrict the window to [lead, new_prec]."""
        if new_prec > self.prec:
            raise PrecisionError(
                f"cannot extend window: have prec {self.prec}, asked {new_prec}"
            )
        if new_prec < self.lead:
            raise PrecisionError("truncation below the lead exponent")
        if new_prec == self.prec:
            return self
        return QSeries(self.lead, self.coeffs[: new_prec - self.lead + 1])

    def restrict(self, lo: int, hi: int) -> "QSeries":
        """Restrict to the window [lo, hi]; lo may sit below lead (zeros)."""
        if hi > self.prec:
            raise PrecisionError("restriction beyond known precision")
        if lo > hi:
            raise UsageError("empty restriction window")
        return QSeries(lo, [self._get(n) for n in range(lo, hi + 1)])

    def pad_lead(self, new_lead: int) -> "QSeries":
        """Extend the window downward with explicit (known) zeros."""
        if new_lead > self.lead:
            raise UsageError("pad_lead can only move the lead down")
        return QSeries(
            new_lead, [Fraction(0)] * (self.lead - new_lead) + list(self.coeffs)
        )

    def shift(self, k: int) -> "QSeries":
        """Multiply by q**k (shift all exponents by k)."""
        return QSeries(self.lead + k, self.coeffs)

    # ------------------------------------------------------------------
    # comparisons
    # ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (
            self.lead == other.lead
            and self.prec == other.prec
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.lead, self.prec, self.coeffs))

    def agrees_with(self, other: "QSeries", lo: int | None = None, hi: int | None = None) -> bool:
        """True when both series agree on the overlap of their windows.

        The overlap may be narrowed with lo/hi; an empty overlap is an error.
        """
        lo_eff = max(self.lead, other.lead) if lo is None else lo
        hi_eff = min(self.prec, other.prec) if hi is None else hi
        if lo_eff > hi_eff:
            raise PrecisionError("series windows do not overlap")
        return all(self._get(n) == other._get(n) for n in range(lo_eff, hi_eff + 1))

    # ------------------------------------------------------------------
    # integrality
    # ------------------------------------------------------------------

    def integrality_check(self, p: int | None = None) -> "IntegralityReport":
        """Check coefficient denominators on the window.

        Without *p*: every coefficient must be an integer.  With *p*: the
        prime *p* must not divide any denominator (p-integrality).
        """
        for i, c in enumerate(self.coeffs):
            d = c.denominator
            if p is None:
                if d != 1:
                    return IntegralityReport(False, p, self.lead + i, d, (self.lead, self.prec))
            else:
                if d % p == 0:
                    return IntegralityReport(False, p, self.lead + i, d, (self.lead, self.prec))
        return IntegralityReport(True, p, None, None, (self.lead, self.prec))

    # ------------------------------------------------------------------
    # serialization
    # ------------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "lead": self.lead,
            "prec": self.prec,
            "coeffs": [str(c) for c in self.coeffs],
        }

    def to_json(self) -> str:
        """Canonical (bit-exact) JSON encoding."""
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, d: dict) -> "QSeries":
        return cls(int(d["lead"]), [Fraction(s) for s in d["coeffs"]], int(d["prec"]))

    @classmethod
    def from_json(cls, s: str) -> "QSeries":
        return cls.from_json_dict(json.loads(s))

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            parts.append(f"{c}*q^{self.lead + i}")
            if len(parts) >= 6:
                parts.append("...")
                break
        body = " + ".join(parts) if parts else "0"
        return f"QSeries([{self.lead},{self.prec}]: {body})"


class IntegralityReport:
    """Outcome of an integrality scan over a series window."""

    __slots__ = ("ok", "prime", "exponent", "denominator", "window")

    def __init__(self, ok, prime, exponent, denominator, window):
        self.ok = ok
        self.prime = prime
        self.exponent = exponent
        self.denominator = denominator
        self.window = window

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            kind = "integral" if self.prime is None else f"{self.prime}-integral"
            return f"IntegralityReport(OK: {kind} on {self.window})"
        return (
            f"IntegralityReport(violation at q^{self.exponent}: "
            f"denominator {self.denominator})"
        )


# ----------------------------------------------------------------------
# module-level operations (the functional surface of the series layer)
# ----------------------------------------------------------------------


def linear_combine(terms: Sequence[tuple[Scalar, QSeries]]) -> QSeries:
    """Coefficient-wise rational combination of series.

    The result window is [min lead, min prec] over the inputs.
    """
    if not terms:
        raise UsageError("linear_combine requires at least one term")
    lead = min(s.lead for _, s in terms)
    prec = min(s.prec for _, s in terms)
    if prec < lead:
        raise PrecisionError("combination window is empty")
    acc = [Fraction(0)] * (prec - lead + 1)
    for a, s in terms:
        a = _as_fraction(a)
        if a == 0:
            continue
        base = s.lead - lead
        for i, c in enumerate(s.coeffs):
            n = base + i
            if n >= len(acc):
                break
            if c:
                acc[n] += a * c
    return QSeries(lead, acc)


def mul(f: QSeries, g: QSeries) -> QSeries:
    """Cauchy product, known through min(f.prec + v(g), g.prec + v(f))."""
    ef = f._first_possible_nonzero()
    eg = g._first_possible_nonzero()
    out_prec = min(f.prec + eg, g.prec + ef)
    out_lead = min(ef + eg, out_prec)
    length = out_prec - out_lead + 1
    a = f.coeffs[ef - f.lead : ef - f.lead + length]
    b = g.coeffs[eg - g.lead : eg - g.lead + length]
    if not a or not b:
        return QSeries.zero(out_prec, out_lead)
    conv = _conv_fraction(a, b)[:length]
    if len(conv) < length:
        conv.extend([Fraction(0)] * (length - len(conv)))
    return QSeries(out_lead, conv)


def inv(f: QSeries) -> QSeries:
    """Multiplicative inverse; result window is [-v, f.prec - 2v]."""
    v = f.valuation()  # DomainError for the zero series
    u = f.coeffs[v - f.lead :]
    w = _power_series_inverse(u)
    return QSeries(-v, w)


def pow_int(f: QSeries, n: int) -> QSeries:
    """Integer power by repeated squaring (negative n through inv)."""
    if not isinstance(n, int):
        raise UsageError("pow_int exponent must be an integer")
    if n == 0:
        return QSeries.one(max(f.prec, 0))
    if n < 0:
        return pow_int(inv(f), -n)
    result = None
    base = f
    m = n
    while m:
        if m & 1:
            result = base if result is None else mul(result, base)
        m >>= 1
        if m:
            base = mul(base, base)
    return result


def delta(f: QSeries) -> QSeries:
    return f.delta()


def antiderivative(f: QSeries, order: int = 1) -> QSeries:
    return f.antiderivative(order)


def substitute_power(f: QSeries, m: int) -> QSeries:
    return f.substitute_power(m)


def coefficient(f: QSeries, n: int) -> Fraction:
    return f.coefficient(n)


def integrality_check(f: QSeries, p: int | None = None) -> IntegralityReport:
    return f.integrality_check(p)
