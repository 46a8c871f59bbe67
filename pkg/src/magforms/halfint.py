"""Half-integral weight machinery on the Kohnen plus space.

Forms of weight k + 1/2 live on the congruence subgroup of level 4; the plus
space keeps exactly the exponents n with (-1)^k n = 0 or 1 mod 4.  This module
provides:

* :class:`PlusForm`, a series tagged with k whose plus condition is checked on
  construction;
* the operators U_p, V_p, chi_p, T_{p^2} (half-integral weight), the
  integral-weight operator family, the plus projection and T_4' = K+ o T_4;
* the raising operator sending weight k+1/2 to k+5/2;
* construction of the canonical basis elements q^{-m} + O(q) by exact linear
  algebra over a theta/E_{2,4}/Delta(4tau) pool, extended to deep poles by
  j(4tau) multiplication;
* the named weight-1/2 and 5/2 forms used throughout the verification suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .series import (
    PrecisionError,
    QSeries,
    SeriesError,
    UsageError,
    linear_combine,
)
from .forms import discriminant, e24, eisenstein, j_invariant, theta


class PlusSpaceError(SeriesError):
    """A series violates the plus-space support condition."""


class BasisError(SeriesError):
    """The basis construction could not produce the requested element."""


def admissible(k: int, n: int) -> bool:
    """True when the exponent n may carry a nonzero coefficient."""
    r = n % 4 if k % 2 == 0 else (-n) % 4
    return r in (0, 1)


@dataclass(frozen=True)
class PlusReport:
    ok: bool
    exponent: int | None
    window: tuple[int, int]

    def __bool__(self):
        return self.ok


def plus_check(series: QSeries, k: int, lo: int | None = None, hi: int | None = None) -> PlusReport:
    """Verify the parity-dependent vanishing on (part of) the window."""
    lo = series.lead if lo is None else max(lo, series.lead)
    hi = series.prec if hi is None else min(hi, series.prec)
    for n in range(lo, hi + 1):
        if not admissible(k, n) and series._get(n) != 0:
            return PlusReport(False, n, (lo, hi))
    return PlusReport(True, None, (lo, hi))


class PlusForm:
    """A q-series of weight k + 1/2 supported on the plus-space exponents."""

    __slots__ = ("k", "series")

    def __init__(self, k: int, series: QSeries):
        if k < 0:
            raise UsageError("weight parameter k must be nonnegative")
        report = plus_check(series, k)
        if not report.ok:
            raise PlusSpaceError(
                f"coefficient at q^{report.exponent} violates the plus condition "
                f"for weight {k}+1/2"
            )
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "series", series)

    def __setattr__(self, *args):
        raise AttributeError("PlusForm is immutable")

    def coefficient(self, n: int) -> Fraction:
        return self.series.coefficient(n)

    def truncate(self, prec: int) -> "PlusForm":
        return PlusForm(self.k, self.series.truncate(prec))

    def __eq__(self, other):
        if not isinstance(other, PlusForm):
            return NotImplemented
        return self.k == other.k and self.series == other.series

    def __repr__(self):
        return f"PlusForm(k={self.k}, {self.series!r})"


# ----------------------------------------------------------------------
# characters
# ----------------------------------------------------------------------


def kronecker(d: int, D: int) -> int:
    """The symbol (d|D) for the two discriminants used by the lifts."""
    if d < 1:
        raise UsageError("kronecker symbol is used with d >= 1 here")
    if D == 1:
        return 1
    if D == -3:
        r = d % 3
        return 0 if r == 0 else (1 if r == 1 else -1)
    raise UsageError(f"unsupported discriminant {D}")


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _kronecker_two(a: int) -> int:
    if a % 2 == 0:
        return 0
    return 1 if a % 8 in (1, 7) else -1


def chi_symbol(n: int, p: int, k: int) -> int:
    """The twist character value ((-1)^k n | p)."""
    a = -n if k % 2 else n
    if p == 2:
        return _kronecker_two(a)
    return _legendre(a, p)


# ----------------------------------------------------------------------
# elementary operators on raw series
# ----------------------------------------------------------------------


def u_p(f: QSeries, p: int) -> QSeries:
    """a(n) -> a(np); the window shrinks by a factor p."""
    if p < 2:
        raise UsageError("u_p needs p >= 2")
    lo = -((-f.lead) // p)
    hi = f.prec // p
    if hi < lo:
        raise PrecisionError(f"window too small for U_{p}")
    return QSeries(lo, [f._get(n * p) for n in range(lo, hi + 1)])


def v_p(f: QSeries, p: int) -> QSeries:
    """Exponent n -> np (substitution q -> q^p)."""
    return f.substitute_power(p)


def chi_p(f: QSeries, p: int, k: int) -> QSeries:
    """a(n) -> ((-1)^k n | p) a(n); the window is unchanged."""
    return QSeries(
        f.lead,
        [chi_symbol(f.lead + i, p, k) * c for i, c in enumerate(f.coeffs)],
    )


def kohnen_project(f: QSeries, k: int) -> QSeries:
    """Zero out the coefficients at inadmissible exponents."""
    return QSeries(
        f.lead,
        [c if admissible(k, f.lead + i) else Fraction(0) for i, c in enumerate(f.coeffs)],
    )


def t_p2_series(f: QSeries, k: int, p: int) -> QSeries:
    """f|T_{p^2} = f|U_{p^2} + p^(k-1) f|chi_p + p^(2k-1) f|V_{p^2}."""
    if p < 2:
        raise UsageError("T_{p^2} needs a prime p >= 2")
    return linear_combine(
        [
            (1, u_p(f, p * p)),
            (Fraction(p) ** (k - 1), chi_p(f, p, k)),
            (Fraction(p) ** (2 * k - 1), v_p(f, p * p)),
        ]
    )


def t_p2(f: PlusForm, p: int) -> PlusForm:
    """Half-integral weight Hecke operator at an odd prime."""
    if p % 2 == 0:
        raise UsageError("use t4_prime for p = 2")
    return PlusForm(f.k, t_p2_series(f.series, f.k, p))


def big_t_p(F: QSeries, twok: int, p: int) -> QSeries:
    """Integral-weight operator F|U_p + p^(twok-1) F|V_p."""
    if twok % 2:
        raise UsageError("twok must be even")
    return linear_combine([(1, u_p(F, p)), (Fraction(p) ** (twok - 1), v_p(F, p))])


def t4_prime(f: PlusForm) -> PlusForm:
    """T_4' = K+ composed with T_4; maps the plus space onto itself."""
    raw = t_p2_series(f.series, f.k, 2)
    return PlusForm(f.k, kohnen_project(raw, f.k))


# ----------------------------------------------------------------------
# raising operator
# ----------------------------------------------------------------------


def _e2_of_4tau(prec_needed: int) -> QSeries:
    m = max(prec_needed // 4 + 2, 1)
    return eisenstein(2, m).substitute_power(4)


def raising(f: PlusForm) -> PlusForm:
    """delta f - ((2k+1)/6) E2(4tau) f, of weight (k+2) + 1/2."""
    s = f.series
    e2_4 = _e2_of_4tau(s.prec - min(s.lead, 0) + 4)
    out = linear_combine(
        [(1, s.delta()), (Fraction(-(2 * f.k + 1), 6), e2_4 * s)]
    )
    return PlusForm(f.k + 2, out.truncate(min(out.prec, s.prec)))


# ----------------------------------------------------------------------
# exact linear algebra over the theta / E_{2,4} / Delta(4tau) pool
# ----------------------------------------------------------------------


def _solve_particular(rows: list[list[Fraction]], rhs: list[Fraction]):
    """Gauss-Jordan; particular solution with free variables set to zero."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    aug = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(ncols):
        sel = None
        for r in range(row, nrows):
            if aug[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        aug[row], aug[sel] = aug[sel], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for r in range(nrows):
            if r != row and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[row])]
        pivots.append((row, col))
        row += 1
        if row == nrows:
            break
    for r in range(row, nrows):
        if aug[r][ncols] != 0:
            return None  # inconsistent
    solution = [Fraction(0)] * ncols
    for r, c in pivots:
        solution[c] = aug[r][ncols]
    return solution


def _pool_descriptors(k: int, s_max: int) -> list[tuple[int, int, int]]:
    """(theta power, e24 power, delta4 inverse power) column descriptors."""
    out = []
    for s in range(s_max + 1):
        top = (2 * k + 1 + 24 * s) // 4
        for b in range(top + 1):
            a = 2 * k + 1 + 24 * s - 4 * b
            out.append((a, b, s))
    return out


def _pool_element(a: int, b: int, s: int, prec: int) -> QSeries:
    """theta^a * E_{2,4}^b / Delta(4tau)^s, known through at least `prec`."""
    slack = 16
    for _ in range(4):
        work = prec + slack
        out = theta(work) ** a if a else QSeries.one(work)
        if b:
            out = out * e24(work) ** b
        if s:
            d4 = discriminant(work // 4 + 3).substitute_power(4)
            out = out * d4.inverse() ** s
        if out.prec >= prec:
            return out.truncate(prec)
        slack *= 4
    raise PrecisionError("pool element construction fell short of target precision")


def _seed_combination(k: int, m: int, s_max: int):
    """Solve for f_m = q^{-m} + O(q) on the pool; returns descriptor weights."""
    bound = 4 * s_max + 2 * k + 8
    descriptors = _pool_descriptors(k, s_max)
    columns = [_pool_element(a, b, s, bound) for (a, b, s) in descriptors]
    lead_min = -4 * s_max
    rows = []
    rhs = []
    for e in range(lead_min, bound + 1):
        if e <= 0:
            rows.append([col._get(e) for col in columns])
            rhs.append(Fraction(1 if e == -m else 0))
        elif not admissible(k, e):
            rows.append([col._get(e) for col in columns])
            rhs.append(Fraction(0))
    solution = _solve_particular(rows, rhs)
    if solution is None:
        return None
    return [
        (coeff, desc) for coeff, desc in zip(solution, descriptors) if coeff != 0
    ]


def _build_seed(k: int, m: int, prec: int) -> tuple[QSeries, int]:
    """Construct the basis element f_m (m <= 3) at full precision."""
    s_base = max(1, (m + 3) // 4) + 2
    last_error = None
    for s_max in (s_base, s_base + 2, s_base + 4):
        combo = _seed_combination(k, m, s_max)
        if combo is None:
            last_error = f"pool with s_max={s_max} cannot represent q^-{m}"
            continue
        series = linear_combine(
            [(coeff, _pool_element(a, b, s, prec)) for coeff, (a, b, s) in combo]
        ).restrict(-m, prec)
        try:
            _validate_shape(k, m, series)
        except BasisError as exc:
            last_error = str(exc)
            continue
        return series, s_max
    raise BasisError(f"basis element q^-{m} (k={k}) not found: {last_error}")


def _validate_shape(k: int, m: int, series: QSeries) -> None:
    for e in range(series.lead, 1):
        expected = 1 if e == -m else 0
        if series._get(e) != expected:
            raise BasisError(
                f"element q^-{m}: coefficient {series._get(e)} at q^{e}, "
                f"expected {expected}"
            )
    rep = plus_check(series, k)
    if not rep.ok:
        raise BasisError(f"element q^-{m}: plus violation at q^{rep.exponent}")
    integ = series.integrality_check()
    if not integ.ok:
        raise BasisError(
            f"element q^-{m}: non-integral coefficient at q^{integ.exponent}"
        )


@dataclass(frozen=True)
class PlusBasis:
    k: int
    elements: dict[int, PlusForm]
    pool_s_max: int

    def __getitem__(self, m: int) -> PlusForm:
        return self.elements[m]


def _admissible_pole_orders(k: int, max_m: int) -> list[int]:
    return [m for m in range(max_m + 1) if admissible(k, -m)]


@lru_cache(maxsize=8)
def _basis_elements(k: int, max_m: int, prec: int) -> tuple[dict, int]:
    """All admissible basis elements with pole order <= max_m, via seeds
    plus repeated multiplication by j(4tau) with integral corrections."""
    orders = _admissible_pole_orders(k, max_m)
    generations = max(0, (max_m + 3) // 4)
    build_prec = prec + 4 * generations + 8
    elements: dict[int, QSeries] = {}
    pool_s = 0
    for m in [m for m in orders if m < 4]:
        if k == 2 and m == 0:
            elements[0] = _g0_series(build_prec)
        elif k == 2 and m == 3:
            elements[3] = _f3_series(build_prec)
        else:
            elements[m], s_used = _build_seed(k, m, build_prec)
            pool_s = max(pool_s, s_used)
    j4 = None
    for m in [m for m in orders if m >= 4]:
        if j4 is None:
            jp = build_prec // 4 + max_m + 8
            j4 = j_invariant(jp).substitute_power(4)
        prev = elements[m - 4]
        product = prev * j4
        for m2 in sorted((x for x in orders if x < m), reverse=True):
            c = product._get(-m2)
            if c:
                product = linear_combine([(1, product), (-c, elements[m2])])
        series = product.restrict(-m, product.prec)
        _validate_shape(k, m, series)
        elements[m] = series
    out = {m: PlusForm(k, s.truncate(prec)) for m, s in elements.items()}
    return out, pool_s


def plus_basis(k: int, m_list: Sequence[int], prec: int) -> PlusBasis:
    """Basis elements q^{-m} + O(q) for each requested pole order."""
    if not m_list:
        raise UsageError("empty pole-order list")
    for m in m_list:
        if m < 0:
            raise UsageError("pole orders must be nonnegative")
        if not admissible(k, -m):
            raise UsageError(
                f"pole order {m} is not admissible for weight {k}+1/2"
            )
    max_m = max(m_list)
    elements, pool_s = _basis_elements(k, max_m, prec)
    return PlusBasis(k, {m: elements[m] for m in m_list}, pool_s)


# ----------------------------------------------------------------------
# named forms
# ----------------------------------------------------------------------


def _with_target(builder, prec: int) -> QSeries:
    slack = 16
    for _ in range(5):
        out = builder(prec + slack)
        if out.prec >= prec:
            return out.truncate(prec)
        slack *= 4
    raise PrecisionError(f"named plus form fell short of precision {prec}")


def _sub4(series_builder, work: int) -> QSeries:
    return series_builder(work // 4 + 2).substitute_power(4)


def _g0_series(prec: int) -> QSeries:
    th = theta(prec)
    return (th * (th**4 - 20 * e24(prec))).truncate(prec)


def _g1_series(prec: int) -> QSeries:
    def build(work: int) -> QSeries:
        e4_4 = _sub4(lambda p: eisenstein(4, p), work)
        e6_4 = _sub4(lambda p: eisenstein(6, p), work)
        d4 = _sub4(discriminant, work)
        return theta(work) * e4_4**2 * e6_4 * d4.inverse()

    return _with_target(build, prec)


def _g2_series(prec: int) -> QSeries:
    def build(work: int) -> QSeries:
        j4 = _sub4(j_invariant, work)
        return _g0_series(work) * j4

    return _with_target(build, prec)


def _f3_series(prec: int) -> QSeries:
    """The weight 5/2 element q^-3 + O(q), from the three named generators."""
    combo = linear_combine(
        [
            (Fraction(1, 12), _g1_series(prec)),
            (Fraction(-1, 12), _g2_series(prec)),
            (56, _g0_series(prec)),
        ]
    )
    series = combo.restrict(-3, combo.prec)
    _validate_shape(2, 3, series)
    return series


def _h0_series(prec: int) -> QSeries:
    def build(work: int) -> QSeries:
        th = theta(work)
        f = e24(work)
        e6_4 = _sub4(lambda p: eisenstein(6, p), work)
        d4 = _sub4(discriminant, work)
        main = f * th * (th**4 - 2 * f) * (th**4 - 16 * f) * e6_4 * d4.inverse()
        return main + 56 * th

    return _with_target(build, prec)


_NAMED_BUILDERS = {
    "g0": (2, _g0_series),
    "g1": (2, _g1_series),
    "g2": (2, _g2_series),
    "h0": (0, _h0_series),
}


@lru_cache(maxsize=None)
def named_plus_form(name: str, prec: int) -> PlusForm:
    """The named weight-1/2 and 5/2 forms, plus f6half of weight 7/2."""
    if name in _NAMED_BUILDERS:
        k, builder = _NAMED_BUILDERS[name]
        return PlusForm(k, builder(prec))
    if name == "f4a":
        return PlusForm(
            2,
            linear_combine(
                [
                    (Fraction(7, 8), _g0_series(prec)),
                    (Fraction(1, 768), _g1_series(prec)),
                    (Fraction(-1, 768), _g2_series(prec)),
                ]
            ),
        )
    if name == "f4b":
        return PlusForm(
            2,
            linear_combine(
                [
                    (Fraction(19, 18), _g0_series(prec)),
                    (Fraction(-5, 648), _g1_series(prec)),
                    (Fraction(-1, 648), _g2_series(prec)),
                ]
            ),
        )
    if name == "f6half":
        basis = plus_basis(3, [1], prec)
        f1 = basis[1].series
        a3 = f1.coefficient(3)
        if a3 == 0:
            raise BasisError("cannot normalise f6half: vanishing q^3 coefficient")
        return PlusForm(3, f1 * (Fraction(1) / a3))
    raise UsageError(f"unknown plus form {name!r}")


def f6half_scale(prec: int = 60) -> Fraction:
    """The normalising scalar applied to the weight 7/2 basis element."""
    f1 = plus_basis(3, [1], prec)[1].series
    return Fraction(1) / f1.coefficient(3)
