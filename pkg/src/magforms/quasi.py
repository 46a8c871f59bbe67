"""Weight-homogeneous combinations of the monomials E2^a E4^b E6^c.

The derivation acts on monomials by

    delta f_{a,b,c} = ((k-a)/12) f_{a+1,b,c} - (a/12) f_{a-1,b+1,c}
                      - (b/3) f_{a,b-1,c+1} - (c/2) f_{a,b+2,c-1},

with k = 2a + 4b + 6c the weight.  On top of this the module implements the
constructive reductions of cuspidal weight-4 elements (exponent a <= 2) and
weight-6 elements (a <= 4, c >= 0) to a fixed set of generators plus an exact
delta-image, returning certificates that can be re-verified on q-expansions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple, Union

from .series import QSeries, UsageError, linear_combine
from .forms import quasi_monomial


class ReductionScopeError(UsageError):
    """The element lies outside the space the reduction algorithm covers."""


class QuasiMonomial(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def weight(self) -> int:
        return 2 * self.a + 4 * self.b + 6 * self.c

    def __str__(self):
        return f"f({self.a},{self.b},{self.c})"


def _sort_key(m: QuasiMonomial):
    # deterministic processing order: most negative c first, then b, then a
    return (-m.c, -m.b, m.a)


class QuasiElement:
    """A finite rational combination of quasi-monomials of one fixed weight."""

    __slots__ = ("weight", "terms")

    def __init__(self, weight: int, terms: Mapping[QuasiMonomial, Fraction] | None = None):
        clean: dict[QuasiMonomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            mono = QuasiMonomial(*mono)
            if mono.a < 0:
                raise UsageError(f"negative E2 exponent in {mono}")
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            if mono.weight != weight:
                raise UsageError(
                    f"monomial {mono} has weight {mono.weight}, element has {weight}"
                )
            clean[mono] = clean.get(mono, Fraction(0)) + coeff
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "terms", {m: c for m, c in clean.items() if c != 0})

    def __setattr__(self, *args):
        raise AttributeError("QuasiElement is immutable")

    @classmethod
    def single(cls, a: int, b: int, c: int, coeff=1) -> "QuasiElement":
        mono = QuasiMonomial(a, b, c)
        return cls(mono.weight, {mono: Fraction(coeff)})

    @classmethod
    def zero(cls, weight: int) -> "QuasiElement":
        return cls(weight, {})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "QuasiElement") -> "QuasiElement":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.weight != other.weight:
            raise UsageError(
                f"cannot add weight {self.weight} and weight {other.weight} elements"
            )
        merged = dict(self.terms)
        for m, c in other.terms.items():
            merged[m] = merged.get(m, Fraction(0)) + c
        return QuasiElement(self.weight, merged)

    def __sub__(self, other: "QuasiElement") -> "QuasiElement":
        return self + (-1) * other

    def __neg__(self) -> "QuasiElement":
        return (-1) * self

    def __mul__(self, scalar) -> "QuasiElement":
        s = Fraction(scalar)
        return QuasiElement(self.weight, {m: s * c for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuasiElement):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.weight == other.weight and self.terms == other.terms

    def __hash__(self):
        return hash((self.weight, tuple(sorted(self.terms.items()))))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=_sort_key):
            c = self.terms[mono]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = str(mono) if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"QuasiElement(weight={self.weight}: {self})"


_TERM_RE = re.compile(
    r"^\s*(?P<coeff>[0-9]+(?:/[0-9]+)?)?\s*\*?\s*"
    r"f\(\s*(?P<a>-?[0-9]+)\s*,\s*(?P<b>-?[0-9]+)\s*,\s*(?P<c>-?[0-9]+)\s*\)\s*$"
)


def parse_element(text: str) -> QuasiElement:
    """Parse `3/2*f(1,-1,1) - f(0,1,0)` style element syntax."""
    src = text.strip()
    if not src:
        raise UsageError("empty element expression")
    if src == "0":
        return QuasiElement.zero(0)
    chunks: list[tuple[int, str]] = []
    sign = 1
    buf = ""
    depth = 0
    for ch in src:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and buf.strip():
            chunks.append((sign, buf))
            sign = 1 if ch == "+" else -1
            buf = ""
        elif depth == 0 and ch in "+-" and not buf.strip():
            sign = sign if ch == "+" else -sign
        else:
            buf += ch
    if buf.strip():
        chunks.append((sign, buf))
    result = None
    for sgn, chunk in chunks:
        m = _TERM_RE.match(chunk)
        if not m:
            raise UsageError(f"cannot parse element term {chunk!r}")
        coeff = Fraction(m.group("coeff") or 1) * sgn
        term = QuasiElement.single(
            int(m.group("a")), int(m.group("b")), int(m.group("c")), coeff
        )
        result = term if result is None else result + term
    return result


def format_element(v: QuasiElement) -> str:
    return str(v)


# ----------------------------------------------------------------------
# derivation, expansion, cuspidality
# ----------------------------------------------------------------------


def delta_monomial(m: QuasiMonomial) -> QuasiElement:
    k = m.weight
    a, b, c = m
    out: dict[QuasiMonomial, Fraction] = {}

    def add(mono: QuasiMonomial, coeff: Fraction):
        if coeff:
            out[mono] = out.get(mono, Fraction(0)) + coeff

    add(QuasiMonomial(a + 1, b, c), Fraction(k - a, 12))
    if a:
        add(QuasiMonomial(a - 1, b + 1, c), Fraction(-a, 12))
    if b:
        add(QuasiMonomial(a, b - 1, c + 1), Fraction(-b, 3))
    if c:
        add(QuasiMonomial(a, b + 2, c - 1), Fraction(-c, 2))
    return QuasiElement(k + 2, out)


def delta_element(v: QuasiElement) -> QuasiElement:
    """Term-by-term image of the derivation; like terms merged."""
    out = QuasiElement.zero(v.weight + 2)
    for mono, coeff in v.terms.items():
        out = out + coeff * delta_monomial(mono)
    return out


def expand(v: QuasiElement, prec: int) -> QSeries:
    """q-expansion of the element through exponent prec."""
    if v.is_zero():
        return QSeries.zero(prec)
    terms = [
        (coeff, quasi_monomial(m.a, m.b, m.c, prec)) for m, coeff in v.terms.items()
    ]
    return linear_combine(terms)


def is_cuspidal(v: QuasiElement) -> bool:
    """True when the constant term vanishes (all monomials start with 1)."""
    return sum(v.terms.values(), Fraction(0)) == 0


# ----------------------------------------------------------------------
# reduction certificates
# ----------------------------------------------------------------------

ANCHOR_W4 = QuasiMonomial(0, 1, 0)
ANCHOR_W6 = QuasiMonomial(0, 0, 1)

# generator elements, expressed inside the same monomial algebra
GEN_W4 = {
    "Ga": QuasiElement.single(0, -2, 2) - QuasiElement.single(0, 1, 0),
    "Gb": QuasiElement.single(1, 2, -1) - QuasiElement.single(0, 1, 0),
}
GEN_W6 = {
    "F6": Fraction(1, 1728)
    * (QuasiElement.single(0, 0, 1) - QuasiElement.single(0, -3, 3)),
}


@dataclass(frozen=True)
class ReductionCertificate:
    """input = mu * anchor + sum(gens) + delta(delta_part), as formal elements."""

    input: QuasiElement
    weight: int
    mu: Fraction
    gens: dict[str, Fraction]
    delta_part: QuasiElement

    @property
    def anchor(self) -> QuasiMonomial:
        return ANCHOR_W4 if self.weight == 4 else ANCHOR_W6

    def generator_elements(self) -> Mapping[str, QuasiElement]:
        return GEN_W4 if self.weight == 4 else GEN_W6

    def reconstruction(self) -> QuasiElement:
        """The right-hand side as a formal element."""
        out = self.mu * QuasiElement.single(*self.anchor)
        for name, coeff in self.gens.items():
            out = out + coeff * self.generator_elements()[name]
        out = out + delta_element(self.delta_part)
        return out


class _Accumulator:
    def __init__(self, weight: int, gen_names):
        self.mu = Fraction(0)
        self.gens = {name: Fraction(0) for name in gen_names}
        self.delta = QuasiElement.zero(weight - 2)


def reduce_weight4(v: QuasiElement) -> ReductionCertificate:
    """Decompose a weight-4 element (all monomials with a <= 2).

    The two recursions eliminate c <= -2 and b <= -3 monomials; the explicit
    base relations handle the five weight-4 monomials with small exponents.
    """
    if not v.is_zero() and v.weight != 4:
        raise UsageError(f"reduce_weight4 needs weight 4, got {v.weight}")
    for mono in v.terms:
        if mono.a > 2:
            raise ReductionScopeError(
                f"monomial {mono} has E2 exponent {mono.a} > 2; outside the "
                "weight-4 reduction space"
            )
    acc = _Accumulator(4, GEN_W4)
    pending = dict(v.terms)

    def push(mono: QuasiMonomial, coeff: Fraction):
        if coeff:
            pending[mono] = pending.get(mono, Fraction(0)) + coeff
            if pending[mono] == 0:
                del pending[mono]

    def push_delta(mono_a, mono_b, mono_c, coeff: Fraction):
        nonlocal acc
        acc.delta = acc.delta + QuasiElement.single(mono_a, mono_b, mono_c, coeff)

    while pending:
        mono = min(pending, key=_sort_key)
        lam = pending.pop(mono)
        if lam == 0:
            continue
        a, b, c = mono
        if mono == ANCHOR_W4:
            acc.mu += lam
        elif mono == QuasiMonomial(0, -2, 2):
            acc.gens["Ga"] += lam
            acc.mu += lam
        elif mono == QuasiMonomial(1, 2, -1):
            acc.gens["Gb"] += lam
            acc.mu += lam
        elif mono == QuasiMonomial(2, 0, 0):
            # f(2,0,0) = f(0,1,0) + 12 delta f(1,0,0)
            acc.mu += lam
            push_delta(1, 0, 0, 12 * lam)
        elif mono == QuasiMonomial(1, -1, 1):
            # f(1,-1,1) = -2 f(0,-2,2) + 3 f(0,1,0) + 6 delta f(0,-1,1)
            push(QuasiMonomial(0, -2, 2), -2 * lam)
            push(ANCHOR_W4, 3 * lam)
            push_delta(0, -1, 1, 6 * lam)
        elif c <= -2:
            # ((c+1)/2) f(a,b,c) = -delta f(a,b-2,c+1) - (a/12) f(a-1,b-1,c+1)
            #                      - ((b-2)/3) f(a,b-3,c+2) - ((a-2)/12) f(a+1,b-2,c+1)
            scale = lam * Fraction(2, c + 1)
            push_delta(a, b - 2, c + 1, -scale)
            if a:
                push(QuasiMonomial(a - 1, b - 1, c + 1), -Fraction(a, 12) * scale)
            if b != 2:
                push(QuasiMonomial(a, b - 3, c + 2), -Fraction(b - 2, 3) * scale)
            if a != 2:
                push(QuasiMonomial(a + 1, b - 2, c + 1), -Fraction(a - 2, 12) * scale)
        elif b <= -3:
            # ((b+1)/3) f(a,b,c) = -delta f(a,b+1,c-1) - ((a-2)/12) f(a+1,b+1,c-1)
            #                      - (a/12) f(a-1,b+2,c-1) - ((c-1)/2) f(a,b+3,c-2)
            scale = lam * Fraction(3, b + 1)
            push_delta(a, b + 1, c - 1, -scale)
            if a != 2:
                push(QuasiMonomial(a + 1, b + 1, c - 1), -Fraction(a - 2, 12) * scale)
            if a:
                push(QuasiMonomial(a - 1, b + 2, c - 1), -Fraction(a, 12) * scale)
            if c != 1:
                push(QuasiMonomial(a, b + 3, c - 2), -Fraction(c - 1, 2) * scale)
        else:  # pragma: no cover - unreachable for weight-4 elements with a <= 2
            raise ReductionScopeError(f"no reduction rule for {mono}")
    return ReductionCertificate(v, 4, acc.mu, acc.gens, acc.delta)


def reduce_weight6(v: QuasiElement) -> ReductionCertificate:
    """Decompose a weight-6 element (monomials with a <= 4 and c >= 0)."""
    if not v.is_zero() and v.weight != 6:
        raise UsageError(f"reduce_weight6 needs weight 6, got {v.weight}")
    for mono in v.terms:
        if mono.c < 0 or mono.a > 4:
            raise ReductionScopeError(
                f"monomial {mono} outside the weight-6 reduction space "
                "(need c >= 0 and a <= 4)"
            )
    acc = _Accumulator(6, GEN_W6)
    pending = dict(v.terms)

    def push(mono: QuasiMonomial, coeff: Fraction):
        if coeff:
            pending[mono] = pending.get(mono, Fraction(0)) + coeff
            if pending[mono] == 0:
                del pending[mono]

    def push_delta(elem: QuasiElement):
        acc.delta = acc.delta + elem

    while pending:
        mono = min(pending, key=_sort_key)
        lam = pending.pop(mono)
        if lam == 0:
            continue
        a, b, c = mono
        if mono == ANCHOR_W6:
            acc.mu += lam
        elif mono == QuasiMonomial(1, 1, 0):
            # f(1,1,0) = f(0,0,1) + 3 delta f(0,1,0)
            acc.mu += lam
            push_delta(QuasiElement.single(0, 1, 0, 3 * lam))
        elif mono == QuasiMonomial(3, 0, 0):
            # f(3,0,0) = f(1,1,0) + 6 delta f(2,0,0)
            push(QuasiMonomial(1, 1, 0), lam)
            push_delta(QuasiElement.single(2, 0, 0, 6 * lam))
        elif mono == QuasiMonomial(4, -2, 1):
            # f(4,-2,1) = f(3,0,0) + 3 delta f(4,-1,0)
            push(QuasiMonomial(3, 0, 0), lam)
            push_delta(QuasiElement.single(4, -1, 0, 3 * lam))
        elif mono == QuasiMonomial(2, -1, 1):
            # f(2,-1,1) = f(0,0,1) - 4608 F6
            #             + delta(4 f(1,-1,1) - 4 f(0,-2,2) + 6 f(0,1,0))
            # (the -4608 is forced by exact expansion of both sides)
            acc.mu += lam
            acc.gens["F6"] += -4608 * lam
            push_delta(
                lam
                * (
                    QuasiElement.single(1, -1, 1, 4)
                    + QuasiElement.single(0, -2, 2, -4)
                    + QuasiElement.single(0, 1, 0, 6)
                )
            )
        elif c >= 2:
            # with (A,B,C) = (a, b, c):
            # ((B+1)/3) f(A,B,C) = -delta f(A,B+1,C-1) + ((4-A)/12) f(A+1,B+1,C-1)
            #                      - (A/12) f(A-1,B+2,C-1) - ((C-1)/2) f(A,B+3,C-2)
            bb = b + 1
            if bb == 0:  # pragma: no cover - impossible in weight 6 with c >= 2
                raise ReductionScopeError(f"degenerate recursion at {mono}")
            scale = lam * Fraction(3, bb)
            push_delta(QuasiElement.single(a, b + 1, c - 1, -scale))
            if a != 4:
                push(QuasiMonomial(a + 1, b + 1, c - 1), Fraction(4 - a, 12) * scale)
            if a:
                push(QuasiMonomial(a - 1, b + 2, c - 1), -Fraction(a, 12) * scale)
            if c != 1:
                push(QuasiMonomial(a, b + 3, c - 2), -Fraction(c - 1, 2) * scale)
        else:  # pragma: no cover - unreachable inside the declared space
            raise ReductionScopeError(f"no reduction rule for {mono}")
    return ReductionCertificate(v, 6, acc.mu, acc.gens, acc.delta)


def verify_certificate(cert: ReductionCertificate, prec: int) -> bool:
    """Expand both sides to `prec` and compare exactly."""
    if prec < 1:
        raise UsageError("verification precision must be >= 1")
    lhs = expand(cert.input, prec)
    rhs_elem = cert.reconstruction()
    if not rhs_elem.is_zero() and not cert.input.is_zero():
        if rhs_elem.weight != cert.input.weight:
            return False
    rhs = expand(rhs_elem, prec)
    return lhs.agrees_with(rhs, 0, prec)


# ----------------------------------------------------------------------
# the magnetic property
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class MagneticReport:
    ok: bool
    order: int
    prime: int | None
    exponent: int | None
    denominator: int | None
    window: tuple[int, int]

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return f"MagneticReport(OK through q^{self.window[1]}, order {self.order})"
        return (
            f"MagneticReport(violation at q^{self.exponent}: denominator "
            f"{self.denominator}, order {self.order})"
        )


def magnetic_check(
    v: Union[QuasiElement, QSeries],
    prec: int,
    order: int = 1,
    p: int | None = None,
) -> MagneticReport:
    """Check that the `order`-fold anti-derivative is (p-)integral on window.

    The input must be cuspidal: a QuasiElement with vanishing coefficient sum,
    or a series with zero constant term.
    """
    if isinstance(v, QuasiElement):
        if not is_cuspidal(v):
            raise UsageError("magnetic_check requires a cuspidal element")
        series = expand(v, prec)
    else:
        series = v.truncate(min(v.prec, prec))
        if series.lead <= 0 <= series.prec and series.constant_term() != 0:
            raise UsageError("magnetic_check requires a cuspidal series")
    anti = series.antiderivative(order)
    rep = anti.integrality_check(p)
    return MagneticReport(
        rep.ok, order, p, rep.exponent, rep.denominator, (anti.lead, anti.prec)
    )
