"""Plus space forms, Hecke operators, the raising operator, and the basis."""

import random
from fractions import Fraction

import pytest

from magforms.forms import discriminant, eisenstein, theta
from magforms.halfint import (
    PlusForm,
    PlusSpaceError,
    admissible,
    big_t_p,
    chi_p,
    kohnen_project,
    kronecker,
    named_plus_form,
    plus_basis,
    plus_check,
    raising,
    t4_prime,
    t_p2,
    t_p2_series,
    u_p,
    v_p,
    f6half_scale,
)
from magforms.series import PrecisionError, QSeries, UsageError, linear_combine


def rand_series(rng, lead, prec):
    return QSeries(lead, [rng.randint(-99, 99) for _ in range(prec - lead + 1)])


def rand_plus_series(rng, k, lead, prec):
    return QSeries(
        lead,
        [
            rng.randint(-99, 99) if admissible(k, n) else 0
            for n in range(lead, prec + 1)
        ],
    )


# ----------------------------------------------------------------------
# plus condition and symbols
# ----------------------------------------------------------------------


def test_admissible():
    assert [n for n in range(8) if admissible(2, n)] == [0, 1, 4, 5]
    assert [n for n in range(8) if admissible(3, n)] == [0, 3, 4, 7]


def test_plus_check_and_construction():
    g0 = named_plus_form("g0", 60)
    assert plus_check(g0.series, 2).ok
    h0 = named_plus_form("h0", 30)
    assert plus_check(h0.series, 0).ok
    with pytest.raises(PlusSpaceError):
        PlusForm(2, theta(20).shift(1))  # exponent 2 is not admissible


def test_kronecker():
    assert kronecker(5, 1) == 1
    assert kronecker(3, -3) == 0
    assert kronecker(2, -3) == -1
    assert kronecker(7, -3) == 1
    with pytest.raises(UsageError):
        kronecker(0, 1)
    with pytest.raises(UsageError):
        kronecker(1, 5)


# ----------------------------------------------------------------------
# elementary operators
# ----------------------------------------------------------------------


def test_u_v_identities():
    rng = random.Random(31)
    for p in (2, 3, 5):
        for _ in range(10):
            f = rand_series(rng, rng.randint(-5, 0), 200)
            assert u_p(v_p(f, p), p).agrees_with(f)


def test_chi_kills_multiples():
    f = QSeries(0, [1] * 20)
    out = chi_p(f, 5, 2)
    assert all(out.coefficient(5 * i) == 0 for i in range(0, 4))


def test_v_chi_and_chi_u_vanish():
    rng = random.Random(32)
    for p in (3, 5):
        for k in (2, 3):
            f = rand_series(rng, -4, p * p * 30)
            assert chi_p(v_p(f, p * p), p, k).is_zero_window()
            assert u_p(chi_p(f, p, k), p * p).is_zero_window()


def test_u_p_window_shortfall():
    with pytest.raises(PrecisionError):
        u_p(QSeries(1, [1, 2]), 5)


def test_tau_eigenvalue():
    d = discriminant(12)
    assert big_t_p(d, 12, 2).coefficient(1) == -24  # tau(2)
    # Delta is an eigenform: Delta|T_p = tau(p) Delta
    for p in (2, 3, 5):
        d = discriminant(60)
        out = big_t_p(d, 12, p)
        tau_p = discriminant(p).coefficient(p)
        assert out.agrees_with(tau_p * d, 1, out.prec)


def test_t_p2_mod_p():
    rng = random.Random(33)
    for p in (3, 5):
        f = rand_series(rng, -4, p * p * 40)
        diff = linear_combine([(1, t_p2_series(f, 2, p)), (-1, u_p(f, p * p))])
        for c in diff.coeffs:
            assert c.denominator == 1 and c.numerator % p == 0


def test_kohnen_projection_idempotent():
    rng = random.Random(34)
    f = rand_series(rng, -6, 60)
    once = kohnen_project(f, 2)
    assert kohnen_project(once, 2) == once
    g0 = named_plus_form("g0", 40)
    assert kohnen_project(g0.series, 2) == g0.series


def test_t_p2_preserves_plus():
    f4a = named_plus_form("f4a", 900)
    out = t_p2(f4a, 3)  # construction re-validates the plus condition
    assert out.k == 2
    with pytest.raises(UsageError):
        t_p2(f4a, 2)


# ----------------------------------------------------------------------
# raising operator
# ----------------------------------------------------------------------


def test_raising_theta_gives_g0():
    th = PlusForm(0, theta(120))
    out = raising(th)
    assert out.k == 2
    g0 = named_plus_form("g0", 100)
    assert (out.series * -6).agrees_with(g0.series, 0, 100)


def test_raising_h0_gives_f4a():
    h0 = named_plus_form("h0", 140)
    f4a = named_plus_form("f4a", 120)
    lhs = raising(h0).series * Fraction(-6, 19)
    assert lhs.agrees_with(64 * f4a.series, -3, 120)


def test_raising_parity():
    rng = random.Random(35)
    f = PlusForm(3, rand_plus_series(rng, 3, -4, 200))
    out = raising(f)
    assert out.k == 5
    assert plus_check(out.series, 5).ok


# ----------------------------------------------------------------------
# basis construction
# ----------------------------------------------------------------------


def test_basis_m0_is_g0():
    basis = plus_basis(2, [0], 60)
    assert basis[0].series.agrees_with(named_plus_form("g0", 60).series)


def test_basis_printed_g0_values():
    f0 = plus_basis(2, [0], 50)[0]
    printed = {0: 1, 1: -10, 4: -70, 5: -48, 8: -120, 9: -250, 16: -550, 25: -1210, 36: -1750, 49: -3370}
    for n, value in printed.items():
        if n <= 49:
            assert f0.series._get(n) == value


def test_basis_shapes_and_integrality():
    basis = plus_basis(2, [3, 4, 7, 8], 80)
    for m in (3, 4, 7, 8):
        f = basis[m].series
        assert f.coefficient(-m) == 1
        for e in range(-m + 1, 1):
            assert f._get(e) == 0
        assert f.integrality_check().ok
        assert plus_check(f, 2).ok


def test_basis_f3_from_named_generators():
    basis = plus_basis(2, [3], 60)
    g0 = named_plus_form("g0", 60).series
    g1 = named_plus_form("g1", 60).series
    g2 = named_plus_form("g2", 60).series
    expected = linear_combine(
        [(Fraction(1, 12), g1), (Fraction(-1, 12), g2), (56, g0)]
    )
    assert basis[3].series.agrees_with(expected, -3, 60)


def test_basis_g1_decomposition():
    basis = plus_basis(2, [0, 3, 4], 60)
    recomposed = linear_combine(
        [(1, basis[4].series), (2, basis[3].series), (2, basis[0].series)]
    )
    assert recomposed.agrees_with(named_plus_form("g1", 60).series, -4, 60)


def test_basis_weight_7_half():
    basis = plus_basis(3, [0, 1], 60)
    f1 = basis[1].series
    assert f1.coefficient(-1) == 1 and f1.coefficient(0) == 0
    assert f1.integrality_check().ok
    assert plus_check(f1, 3).ok
    assert f1.coefficient(3) == -384


def test_basis_weight_7_half_ladder():
    basis = plus_basis(3, [4, 5], 50)
    for m in (4, 5):
        f = basis[m].series
        assert f.coefficient(-m) == 1
        assert all(f._get(e) == 0 for e in range(-m + 1, 1))
        assert f.integrality_check().ok
        assert plus_check(f, 3).ok


def test_basis_rejects_inadmissible():
    with pytest.raises(UsageError):
        plus_basis(2, [2], 30)
    with pytest.raises(UsageError):
        plus_basis(3, [3], 30)


def test_t4_prime_recursions_family4():
    basis = plus_basis(2, [4, 16, 64], 420)
    lhs = t4_prime(basis[4]).series
    assert lhs.agrees_with(8 * basis[16].series, None, 100)
    lhs = t4_prime(basis[16]).series
    rhs = linear_combine([(8, basis[64].series), (1, basis[4].series)])
    assert lhs.agrees_with(rhs, None, 100)


# ----------------------------------------------------------------------
# named forms
# ----------------------------------------------------------------------


def test_lemma1_printed_coefficients():
    f4a = named_plus_form("f4a", 30)
    assert f4a.coefficient(-3) == Fraction(1, 64)
    assert f4a.coefficient(1) == 1
    assert f4a.coefficient(4) == -506
    f4b = named_plus_form("f4b", 30)
    assert f4b.coefficient(-4) == Fraction(-1, 108)
    assert f4b.coefficient(1) == 1
    assert f4b.coefficient(4) == 1222


def test_lemma1_denominators():
    f4a = named_plus_form("f4a", 400)
    f4b = named_plus_form("f4b", 400)
    assert (64 * f4a.series).integrality_check().ok
    assert (108 * f4b.series).integrality_check().ok
    for c in f4a.series.coeffs:
        assert 64 % c.denominator == 0
    for c in f4b.series.coeffs:
        assert 108 % c.denominator == 0


def test_g2_equals_g0_times_j4():
    # the interpretation of the undefined symbol in the g2 display
    g2 = named_plus_form("g2", 50)
    assert g2.coefficient(0) == 674 and g2.coefficient(1) == -7488


def test_h0_values():
    h0 = named_plus_form("h0", 30)
    assert h0.series.lead == -3
    assert h0.coefficient(-3) == 1
    assert h0.coefficient(1) == -248
    assert h0.coefficient(4) == 26752
    assert plus_check(h0.series, 0).ok


def test_f6half_normalisation():
    assert f6half_scale() == Fraction(-1, 384)
    f = named_plus_form("f6half", 200)
    assert f.k == 3
    assert f.coefficient(3) == 1  # makes the lifted q-coefficient equal 1
