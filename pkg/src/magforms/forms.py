"""Constructors for the classical q-expansions: Eisenstein series, the
discriminant cusp form, the elliptic modular invariant j, the theta series,
the level-4 weight-2 form E_{2,4}, quasi-modular monomials E2^a E4^b E6^c,
and the named meromorphic forms used by the verification suite.

Every constructor returns a series whose window is exactly [lead, prec] for
the requested prec; internal computations run with enough slack to make that
honest.  Two independently computed expansions back the discriminant and
E_{2,4}; a mismatch aborts construction.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .series import (
    PrecisionError,
    QSeries,
    SeriesError,
    UsageError,
    linear_combine,
)


class ConsistencyError(SeriesError):
    """Two independent constructions of the same object disagreed."""


class FormName(enum.Enum):
    E2 = "E2"
    E4 = "E4"
    E6 = "E6"
    DELTA = "Delta"
    J = "j"
    THETA = "theta"
    E24 = "E24"
    F4A = "F4a"
    F4B = "F4b"
    F6 = "F6"
    LS8 = "LS8"
    TRIPLE8 = "Triple8"
    HK_NUM1 = "HK_num1"
    HK_NUM2 = "HK_num2"


_EIS_CONSTANTS = {2: -24, 4: 240, 6: -504}


@lru_cache(maxsize=None)
def _sigma_sieve(power: int, limit: int) -> tuple[int, ...]:
    """sigma_power(n) for n = 0..limit (index 0 unused, kept 0)."""
    sums = [0] * (limit + 1)
    for d in range(1, limit + 1):
        dk = d**power
        for n in range(d, limit + 1, d):
            sums[n] += dk
    return tuple(sums)


@lru_cache(maxsize=None)
def eisenstein(k: int, prec: int) -> QSeries:
    """E_k = 1 + c_k sum sigma_{k-1}(n) q^n for k in {2, 4, 6}."""
    if k not in _EIS_CONSTANTS:
        raise UsageError(f"unsupported Eisenstein weight {k}; expected 2, 4 or 6")
    if prec < 0:
        raise UsageError("prec must be >= 0")
    c = _EIS_CONSTANTS[k]
    sig = _sigma_sieve(k - 1, prec)
    return QSeries(0, [1] + [c * sig[n] for n in range(1, prec + 1)])


@lru_cache(maxsize=None)
def _eta_cube(prec: int) -> QSeries:
    """prod (1-q^m)^3 = sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2}."""
    coeffs = [0] * (prec + 1)
    k = 0
    while k * (k + 1) // 2 <= prec:
        coeffs[k * (k + 1) // 2] = (-1) ** k * (2 * k + 1)
        k += 1
    return QSeries(0, coeffs)


@lru_cache(maxsize=None)
def discriminant(prec: int) -> QSeries:
    """Delta = q prod (1-q^m)^24, cross-checked against (E4^3 - E6^2)/1728."""
    if prec < 1:
        raise UsageError("prec must be >= 1 for Delta")
    j3 = _eta_cube(prec)
    j24 = ((j3 * j3) * (j3 * j3)) ** 2
    product_form = j24.shift(1).truncate(prec)
    e4 = eisenstein(4, prec)
    e6 = eisenstein(6, prec)
    poly_form = ((e4**3 - e6**2) / 1728).truncate(prec).restrict(1, prec)
    if product_form != poly_form:
        raise ConsistencyError(
            "Delta: eta-product and Eisenstein-polynomial expansions disagree"
        )
    return product_form


@lru_cache(maxsize=None)
def j_invariant(prec: int) -> QSeries:
    """j = E4^3 / Delta, with lead exponent -1."""
    if prec < 1:
        raise UsageError("prec must be >= 1 for j")
    work = prec + 2
    out = eisenstein(4, work) ** 3 * discriminant(work).inverse()
    return out.truncate(prec)


@lru_cache(maxsize=None)
def theta(prec: int) -> QSeries:
    """theta = 1 + 2 sum_{n>=1} q^{n^2}."""
    if prec < 0:
        raise UsageError("prec must be >= 0")
    coeffs = [0] * (prec + 1)
    coeffs[0] = 1
    for n in range(1, isqrt(prec) + 1):
        coeffs[n * n] = 2
    return QSeries(0, coeffs)


@lru_cache(maxsize=None)
def e24(prec: int) -> QSeries:
    """The weight-2 form on level 4 with odd-index divisor sums.

    Built both as (-E2(q) + 3 E2(q^2) - 2 E2(q^4))/24 and directly as
    sum over odd n of sigma_1(n) q^n; the two must agree exactly.
    """
    if prec < 0:
        raise UsageError("prec must be >= 0")
    e2 = eisenstein(2, prec)
    e2_2 = e2.substitute_power(2).truncate(prec)
    e2_4 = e2.substitute_power(4).truncate(prec)
    combo = linear_combine(
        [
            (Fraction(-1, 24), e2),
            (Fraction(3, 24), e2_2),
            (Fraction(-2, 24), e2_4),
        ]
    ).truncate(prec)
    sig = _sigma_sieve(1, prec)
    direct = QSeries(0, [0] + [sig[n] if n % 2 else 0 for n in range(1, prec + 1)])
    if combo != direct:
        raise ConsistencyError("E_{2,4}: combination and divisor-sum forms disagree")
    return direct


def quasi_monomial(a: int, b: int, c: int, prec: int) -> QSeries:
    """The monomial E2^a E4^b E6^c (negative b, c through inversion)."""
    if a < 0:
        raise UsageError("the E2 exponent must be nonnegative")
    out = QSeries.one(prec)
    for k, e in ((2, a), (4, b), (6, c)):
        if e:
            out = out * eisenstein(k, prec) ** e
    return out.truncate(prec)


def _run_with_slack(builder, prec: int, start: int = 8, tries: int = 5) -> QSeries:
    """Evaluate builder(workprec) until the result covers `prec`."""
    slack = start
    for _ in range(tries):
        out = builder(prec + slack)
        if out.prec >= prec:
            return out.truncate(prec)
        slack *= 4
    raise PrecisionError(f"could not reach precision {prec} (last slack {slack})")


def constant_series(value, prec: int) -> QSeries:
    return QSeries(0, [value] + [0] * prec)


def poly_in_j(coeffs_ascending, j: QSeries) -> QSeries:
    """Evaluate an integer polynomial at the j series (Horner)."""
    if not coeffs_ascending:
        raise UsageError("empty polynomial")
    acc = constant_series(coeffs_ascending[-1], j.prec)
    for c in reversed(coeffs_ascending[:-1]):
        acc = acc * j
        acc = acc + constant_series(c, max(acc.prec, 0))
    return acc


# (E4 power, numerator in j, denominator in j, denominator power)
_J_FORM_DATA = {
    FormName.LS8: (2, (-3 * 2**10, 1), (0, 1), 2),
    FormName.TRIPLE8: (
        2,
        (-98280 * 15**6, 1610452125, -443556, 13),
        (15**3, 1),
        4,
    ),
    FormName.HK_NUM1: (1, (0, 1), (-2 * 30**3, 1), 2),
    FormName.HK_NUM2: (1, (1,), (-2 * 30**3, 1), 2),
}


def _build_j_quotient(name: FormName, workprec: int) -> QSeries:
    e4_power, num, den, den_power = _J_FORM_DATA[name]
    j = j_invariant(workprec)
    numerator = poly_in_j(num, j)
    denominator = poly_in_j(den, j) ** den_power
    out = numerator * denominator.inverse()
    if e4_power:
        out = out * eisenstein(4, workprec) ** e4_power
    return out


@lru_cache(maxsize=None)
def named_form(name, prec: int) -> QSeries:
    """Expansion of a named form; accepts a FormName or its string tag."""
    if isinstance(name, str):
        try:
            name = FormName(name)
        except ValueError:
            raise UsageError(f"unknown form name {name!r}") from None
    if name is FormName.E2:
        return eisenstein(2, prec)
    if name is FormName.E4:
        return eisenstein(4, prec)
    if name is FormName.E6:
        return eisenstein(6, prec)
    if name is FormName.DELTA:
        return discriminant(prec)
    if name is FormName.J:
        return j_invariant(prec)
    if name is FormName.THETA:
        return theta(prec)
    if name is FormName.E24:
        return e24(prec)
    if name is FormName.F4A:
        return _run_with_slack(
            lambda p: discriminant(p) * eisenstein(4, p).inverse() ** 2, prec
        )
    if name is FormName.F4B:
        return _run_with_slack(
            lambda p: eisenstein(4, p) * discriminant(p) * eisenstein(6, p).inverse() ** 2,
            prec,
        )
    if name is FormName.F6:
        return _run_with_slack(
            lambda p: eisenstein(6, p) * discriminant(p) * eisenstein(4, p).inverse() ** 3,
            prec,
        )
    if name in _J_FORM_DATA:
        return _run_with_slack(lambda p: _build_j_quotient(name, p), prec, start=16)
    raise UsageError(f"unhandled form name {name}")


# ----------------------------------------------------------------------
# the second-order differential operators from the solution-space checks
# ----------------------------------------------------------------------


def hk_operator_apply(f: QSeries, k: int, prec: int | None = None) -> QSeries:
    """Apply D_k = delta^2 - ((k+1)/6) E2 delta + (k(k+1)/12) (delta E2)."""
    work = f.prec if prec is None else max(prec, f.prec)
    e2 = eisenstein(2, max(work - min(f.lead, 0) + 4, 0))
    df = f.delta()
    ddf = df.delta()
    term2 = (e2 * df) * Fraction(-(k + 1), 6)
    term3 = (e2.delta() * f) * Fraction(k * (k + 1), 12)
    out = linear_combine([(1, ddf), (1, term2), (1, term3)])
    if prec is not None:
        out = out.truncate(min(out.prec, prec))
    return out


def specific_d_apply(f: QSeries, prec: int | None = None) -> QSeries:
    """Apply D = delta^2 - E2 delta + (7 E2^2 - 5 E4 - 2 E2 E6 / E4)/36."""
    work = (f.prec if prec is None else max(prec, f.prec)) - min(f.lead, 0) + 4
    e2 = eisenstein(2, work)
    e4 = eisenstein(4, work)
    e6 = eisenstein(6, work)
    multiplier = (7 * e2**2 - 5 * e4 - 2 * (e2 * e6) * e4.inverse()) / 36
    df = f.delta()
    out = linear_combine([(1, df.delta()), (-1, e2 * df), (1, multiplier * f)])
    if prec is not None:
        out = out.truncate(min(out.prec, prec))
    return out
