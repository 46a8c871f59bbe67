"""Core series layer: windows, arithmetic, derivation, integrality."""

import random
from fractions import Fraction

import pytest

from magforms.series import (
    AntiderivativeError,
    DomainError,
    PrecisionError,
    QSeries,
    UsageError,
    linear_combine,
)
from magforms.forms import discriminant, eisenstein


def qs(lead, *coeffs):
    return QSeries(lead, coeffs)


def random_series(rng, lead_range=(-5, 3), length_range=(1, 30), coeff_bound=99):
    lead = rng.randint(*lead_range)
    length = rng.randint(*length_range)
    return QSeries(lead, [rng.randint(-coeff_bound, coeff_bound) for _ in range(length)])


# ----------------------------------------------------------------------
# construction and access
# ----------------------------------------------------------------------


def test_window_invariants():
    f = qs(-2, 1, 0, 3)
    assert f.lead == -2 and f.prec == 0
    assert f.coefficient(-2) == 1
    with pytest.raises(PrecisionError):
        f.coefficient(1)
    with pytest.raises(PrecisionError):
        f.coefficient(-3)
    with pytest.raises(UsageError):
        QSeries(0, [])


def test_valuation():
    assert qs(-1, 0, 0, 5).valuation() == 1
    with pytest.raises(DomainError):
        qs(0, 0, 0).valuation()


def test_immutability():
    f = qs(0, 1, 2)
    with pytest.raises(AttributeError):
        f.lead = 5
    with pytest.raises(TypeError):
        f.coeffs[0] = 3


def test_json_round_trip():
    f = qs(-1, Fraction(1, 64), 0, Fraction(-3, 2), 7)
    assert QSeries.from_json(f.to_json()) == f
    assert QSeries.monomial(1).to_json() == '{"coeffs":["1"],"lead":1,"prec":1}'


# ----------------------------------------------------------------------
# linear_combine
# ----------------------------------------------------------------------


def test_linear_combine_cancellation():
    f = qs(0, 1, 1)
    out = linear_combine([(1, f), (-1, f)])
    assert out.is_zero_window() and out.lead == 0 and out.prec == 1


def test_linear_combine_e4_minus_e6():
    prec = 10
    out = linear_combine([(1, eisenstein(4, prec)), (-1, eisenstein(6, prec))])
    assert out.coefficient(0) == 0
    assert out.coefficient(1) == 744  # 240 - (-504)


def test_linear_combine_empty():
    with pytest.raises(UsageError):
        linear_combine([])


def test_linear_combine_window_is_min():
    f, g = qs(-1, 1, 2, 3), qs(0, 5, 6)
    out = linear_combine([(1, f), (1, g)])
    assert out.lead == -1 and out.prec == 1
    assert out.coefficient(-1) == 1 and out.coefficient(0) == 7


# ----------------------------------------------------------------------
# multiplication and inversion
# ----------------------------------------------------------------------


def test_mul_simple():
    out = qs(0, 1, 1) * qs(0, 1, -1)  # (1+q)(1-q) = 1 - q^2 but window stops at 1
    assert out.lead == 0 and out.prec == 1
    assert out.coefficient(0) == 1 and out.coefficient(1) == 0


def test_mul_precision_contract():
    f = QSeries(0, [1] + [7] * 10)  # prec 10, valuation 0
    g = QSeries(2, [1] * 5)  # window [2, 6], valuation 2
    out = f * g
    assert out.lead == 2
    assert out.prec == min(10 + 2, 6 + 0)


def test_inverse_of_e4_squared():
    e4sq = eisenstein(4, 10) ** 2
    assert [int(e4sq.coefficient(i)) for i in (0, 1, 2)] == [1, 480, 61920]
    inv = e4sq.inverse()
    assert [int(inv.coefficient(i)) for i in (0, 1, 2)] == [1, -480, 168480]


def test_inverse_of_q():
    out = QSeries.monomial(1, 1, 5).inverse()
    assert out.lead == -1 and out.coefficient(-1) == 1
    assert all(out.coefficient(i) == 0 for i in range(0, out.prec + 1))


def test_inverse_round_trip():
    e6 = eisenstein(6, 12)
    assert e6.inverse().inverse().agrees_with(e6)


def test_inverse_of_zero_errors():
    with pytest.raises(DomainError):
        qs(0, 0, 0, 0).inverse()


def test_inverse_precision_contract():
    d = discriminant(10)  # window [1, 10], valuation 1
    inv = d.inverse()
    assert inv.lead == -1 and inv.prec == 10 - 2


def test_pow():
    th2 = (QSeries(0, [1, 2, 0, 0, 2]) ** 2)
    assert th2.coefficient(1) == 4
    e4 = eisenstein(4, 6)
    assert (e4**0).coefficient(0) == 1
    d4inv = discriminant(12).substitute_power(4) ** -1
    assert d4inv.lead == -4


def test_mul_commutative_associative():
    rng = random.Random(11)
    for _ in range(25):
        f, g, h = (random_series(rng) for _ in range(3))
        if f.is_zero_window() or g.is_zero_window() or h.is_zero_window():
            continue
        assert (f * g).agrees_with(g * f)
        lhs = (f * g) * h
        rhs = f * (g * h)
        assert lhs.agrees_with(rhs, max(lhs.lead, rhs.lead), min(lhs.prec, rhs.prec))


def test_inv_times_self_is_one():
    rng = random.Random(12)
    for _ in range(25):
        f = random_series(rng)
        try:
            v = f.valuation()
        except DomainError:
            continue
        prod = f * f.inverse()
        assert prod.coefficient(0) == 1
        assert all(
            prod.coefficient(i) == 0 for i in range(prod.lead, prod.prec + 1) if i != 0
        )


# ----------------------------------------------------------------------
# delta, antiderivative, substitution
# ----------------------------------------------------------------------


def test_delta_constant_is_zero():
    assert qs(0, 5).delta().is_zero_window()


def test_delta_e2_matches_ramanujan():
    prec = 40
    e2, e4 = eisenstein(2, prec), eisenstein(4, prec)
    assert e2.delta().agrees_with((e2 * e2 - e4) / 12)


def test_delta_e4_coefficient():
    assert eisenstein(4, 3).delta().coefficient(1) == 240


def test_antiderivative_examples():
    f = QSeries(1, [1, -504])
    out = f.antiderivative()
    assert out.coefficient(1) == 1 and out.coefficient(2) == -252
    assert qs(0, 0, 0).antiderivative().is_zero_window()
    with pytest.raises(AntiderivativeError):
        qs(0, 3, 1).antiderivative()


def test_antiderivative_names_offending_coefficient():
    with pytest.raises(AntiderivativeError, match="7"):
        qs(0, 7).antiderivative()


def test_delta_antiderivative_round_trip():
    rng = random.Random(13)
    for _ in range(30):
        f = random_series(rng)
        if f.lead <= 0 <= f.prec:
            coeffs = list(f.coeffs)
            coeffs[-f.lead] = 0
            f = QSeries(f.lead, coeffs)
        assert f.antiderivative().delta().agrees_with(f)


def test_substitute_power():
    assert QSeries.monomial(1).substitute_power(4) == QSeries.monomial(4)
    e2_4 = eisenstein(2, 5).substitute_power(4)
    assert e2_4.coefficient(4) == -24
    f = qs(-1, 3, 1, 4)
    assert f.substitute_power(1) == f
    with pytest.raises(UsageError):
        f.substitute_power(0)


def test_substitute_power_composes():
    rng = random.Random(14)
    for _ in range(20):
        f = random_series(rng)
        a, b = rng.randint(1, 4), rng.randint(1, 4)
        lhs = f.substitute_power(a * b)
        rhs = f.substitute_power(a).substitute_power(b)
        assert lhs == rhs


# ----------------------------------------------------------------------
# integrality
# ----------------------------------------------------------------------


def test_integrality_check():
    ok = QSeries(1, [1, -252]).integrality_check()
    assert ok.ok
    bad = QSeries(-4, [Fraction(-1, 108), 0, 0, 0, 1]).integrality_check()
    assert not bad.ok and bad.exponent == -4 and bad.denominator == 108
    # 108 = 2^2 * 3^3 so 5-integrality holds
    assert QSeries(-4, [Fraction(-1, 108), 1]).integrality_check(p=5).ok
    assert not QSeries(0, [Fraction(1, 3)]).integrality_check(p=3).ok


# ----------------------------------------------------------------------
# precision honesty
# ----------------------------------------------------------------------


def test_truncation_never_changes_overlap():
    rng = random.Random(15)
    for _ in range(20):
        f, g = random_series(rng), random_series(rng)
        if f.is_zero_window() or g.is_zero_window():
            continue
        full = f * g
        if f.prec - 1 < f.lead:
            continue
        cut = f.truncate(f.prec - 1) * g
        assert full.agrees_with(cut, cut.lead, min(cut.prec, full.prec))


def test_truncated_inverse_agrees():
    rng = random.Random(17)
    for _ in range(20):
        f = random_series(rng, length_range=(3, 25))
        try:
            v = f.valuation()
        except DomainError:
            continue
        if f.prec - 1 < f.lead:
            continue
        full = f.inverse()
        cut = f.truncate(f.prec - 1).inverse()
        assert full.agrees_with(cut, cut.lead, min(cut.prec, full.prec))


def test_integer_inputs_stay_integer():
    rng = random.Random(16)
    for _ in range(20):
        f, g = random_series(rng), random_series(rng)
        assert (f * g).integrality_check().ok
        assert (f + g).integrality_check().ok
        assert f.delta().integrality_check().ok
