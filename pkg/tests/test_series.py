from fractions import Fraction

import pytest

from gbgw.poly import ParamPoly, ONE, S, half_binomial
from gbgw.series import LaurentSeries, WindowError, series_eq_on_overlap


def test_mul_trivial():
    one_plus = LaurentSeries("z", {0: Fraction(1), -1: Fraction(1)}, -5, 0)
    one_minus = LaurentSeries("z", {0: Fraction(1), -1: Fraction(-1)}, -5, 0)
    prod = one_plus * one_minus
    assert prod.coeff(0) == 1
    assert prod.coeff(-1) == 0
    assert prod.coeff(-2) == -1


def test_mul_monomials_cancel():
    z = LaurentSeries.monomial("z", 1, Fraction(1), -3)
    zinv = LaurentSeries.monomial("z", -1, Fraction(1), -3)
    assert (z * zinv).coeff(0) == 1


def test_mul_window_tightest():
    a = LaurentSeries("z", {0: Fraction(1)}, -4, 0)
    b = LaurentSeries("z", {2: Fraction(1)}, -6, 2)
    prod = a * b
    assert prod.hi == 2
    assert prod.lo == max(-4 + 2, 0 + -6)


def test_variable_mismatch():
    a = LaurentSeries.one("z", -2)
    b = LaurentSeries.one("x", -2)
    with pytest.raises(ValueError):
        a * b


def test_inverse_geometric():
    q = Fraction(3, 7)
    a = LaurentSeries("z", {0: Fraction(1), -1: -q}, -10, 0)
    inv = a.inverse()
    for k in range(0, 9):
        assert inv.coeff(-k) == q ** k
    assert series_eq_on_overlap(a * inv, LaurentSeries.one("z", (a * inv).lo))


def test_inverse_of_one():
    one = LaurentSeries.one("z", -6)
    assert series_eq_on_overlap(one.inverse(), one)


def test_inverse_requires_unit():
    a = LaurentSeries("z", {0: S}, -4, 0)
    with pytest.raises(ValueError):
        a.inverse()


def test_sqrt_binomial_series():
    # sqrt(1 + s x^-2) has x^(-2k) coefficient C(1/2, k) s^k; the first few are
    # 1, s/2, -s^2/8, s^3/16.
    a = LaurentSeries("x", {0: ONE, -2: S}, -10, 0)
    r = a.sqrt()
    assert r.coeff(-2) == ParamPoly.monomial(Fraction(1, 2), es=1)
    assert r.coeff(-4) == ParamPoly.monomial(Fraction(-1, 8), es=2)
    assert r.coeff(-6) == ParamPoly.monomial(Fraction(1, 16), es=3)
    assert r.coeff(-3) == 0
    assert series_eq_on_overlap(r * r, a)


def test_sqrt_of_one():
    one = LaurentSeries.one("x", -8)
    assert series_eq_on_overlap(one.sqrt(), one)


def test_sqrt_rejects_bad_constant():
    with pytest.raises(ValueError):
        LaurentSeries("x", {0: Fraction(2)}, -3, 0).sqrt()


def test_one_minus_sqrt_matches_catalan_closed_form():
    # 1 - sqrt(1 + s x^-2): coefficient of x^(-2k-2) must be
    # (-1)^(k+1)/2^(2k+1) * C(2k, k)/(k+1) * s^(k+1).
    from math import comb

    depth = 18
    a = LaurentSeries("x", {0: ONE, -2: S}, -depth, 0)
    w = LaurentSeries.one("x", -depth) - a.sqrt()
    for k in range(0, (depth - 2) // 2 + 1):
        expected = Fraction((-1) ** (k + 1), 2 ** (2 * k + 1)) * Fraction(comb(2 * k, k), k + 1)
        assert w.coeff(-2 * k - 2) == ParamPoly.monomial(expected, es=k + 1)


def test_residue():
    a = LaurentSeries("z", {-1: Fraction(7)}, -3, 0)
    assert a.residue() == 7
    b = LaurentSeries("z", {-2: Fraction(1), 0: Fraction(3)}, -4, 0)
    assert b.residue() == 0
    with pytest.raises(WindowError):
        LaurentSeries("z", {0: Fraction(1)}, 0, 2).residue()


def test_window_soundness_recompute_larger():
    # Recomputing with a larger window must reproduce every coefficient of the
    # smaller-window result.  The inverted series is 1 - W01 = sqrt(1 + s/x^2).
    def pipeline(depth):
        a = LaurentSeries("x", {0: ONE, -2: S}, -depth, 0)
        return a.sqrt().inverse()

    small = pipeline(10)
    big = pipeline(16)
    for e in range(small.lo, small.hi + 1):
        assert small.coeff(e) == big.coeff(e)


def test_inverse_of_one_minus_w01():
    # E-tilde denominator: 1/(1 - W01) = (1 + s/x^2)^(-1/2); the multiply-back
    # oracle pins every coefficient, and C(-1/2,1) = -1/2 fixes the first one.
    depth = 12
    a = LaurentSeries("x", {0: ONE, -2: S}, -depth, 0)
    one_minus_w01 = a.sqrt()
    inv = one_minus_w01.inverse()
    assert inv.coeff(-2) == ParamPoly.monomial(half_binomial(0, 1), es=1)
    prod = one_minus_w01 * inv
    assert series_eq_on_overlap(prod, LaurentSeries.one("x", prod.lo))


def test_derivative_and_shift():
    a = LaurentSeries("z", {2: Fraction(5), -1: Fraction(3)}, -4, 2)
    d = a.derivative()
    assert d.coeff(1) == 10
    assert d.coeff(-2) == -3
    assert a.shift(3).coeff(5) == 5


def test_sub_neg():
    a = LaurentSeries("z", {1: Fraction(1), -2: Fraction(4), -3: Fraction(2)}, -5, 1)
    b = a.sub_neg()
    assert b.coeff(1) == -1
    assert b.coeff(-2) == 4
    assert b.coeff(-3) == -2


def test_half_binomial_matches_sqrt_inverse_powers():
    # (1 + s x^-2)^(-k-1/2) expansions drive the z -> x transform; check the
    # m-th coefficient equals C(-k-1/2, m) s^m for k = 1.
    depth = 12
    a = LaurentSeries("x", {0: ONE, -2: S}, -depth, 0)
    inv_sqrt = a.sqrt().inverse()  # (1+s/x^2)^(-1/2)
    p = inv_sqrt * inv_sqrt * inv_sqrt  # power -3/2 = -k-1/2 with k = 1
    for m in range(0, 4):
        assert p.coeff(-2 * m) == ParamPoly.monomial(half_binomial(1, m), es=m)
