from fractions import Fraction

import pytest

from gbgw.poly import ParamPoly
from gbgw.schurq import theta
from gbgw.npoint import (
    bridge,
    correction_term,
    crosscheck_affine_vs_virasoro,
    cycles,
    npoint_affine,
    one_point_affine,
)


def test_correction_term_values():
    t = correction_term(9)
    assert t.get((-1, 1)) == ParamPoly.const(Fraction(1, 2))
    assert t.get((-2, 2)) == 0
    assert t.get((-3, 3)) == ParamPoly.const(Fraction(3, 2))


def test_cycles_deterministic():
    assert cycles(1) == [(1,)]
    assert cycles(2) == [(1, 2)]
    assert cycles(3) == [(1, 2, 3), (1, 3, 2)]
    assert len(cycles(4)) == 6


def test_bridge_mu1():
    expected = ParamPoly.monomial(Fraction(1, 16), eh=1) * theta(1)
    assert bridge((1,)) == expected


def test_bridge_mu_1_1():
    # (h^2/4) (1/8 - u/2) = h^2 (1 - 4u)/32
    expected = ParamPoly.monomial(Fraction(1, 32), eh=2) * theta(1)
    assert bridge((1, 1)) == expected


def test_bridge_h_degree_is_weight():
    for mu in [(1,), (3,), (5, 1), (3, 3, 1), (7, 5, 3)]:
        b = bridge(mu)
        degs = {k[0] for k in b.terms}
        assert degs == {sum(mu)}, mu


def test_one_point_matches_bridge():
    series = one_point_affine(9)
    for m in range(1, 10, 2):
        assert series.get(-m, 0) == bridge((m,)), m


def test_one_point_vanishes_at_quarter():
    series = one_point_affine(9, u_value=Fraction(1, 4))
    assert series == {}


def test_two_point_small_matches_bridge():
    t = npoint_affine(2, 6)
    assert t.get((-1, -1)) == bridge((1, 1))
    assert t.get((-1, -3)) == bridge((3, 1))
    assert t.get((-3, -3)) == bridge((3, 3))
    assert t.get((-5, -1)) == bridge((5, 1))


def test_two_point_tensor_odd_and_negative_only():
    t = npoint_affine(2, 6)
    for key in t.coeffs:
        assert all(e < 0 and e % 2 for e in key)


def test_two_point_symmetric():
    assert npoint_affine(2, 7).is_symmetric()


def test_two_point_trivial_at_quarter():
    assert not npoint_affine(2, 7, u_value=Fraction(1, 4))


def test_three_point_small_matches_bridge():
    ok, mismatches, checked = crosscheck_affine_vs_virasoro(3, 5)
    assert ok, mismatches
    assert checked > 0


def test_crosscheck_small_range():
    ok, mismatches, checked = crosscheck_affine_vs_virasoro(2, 8, one_point_weight=11)
    assert ok, mismatches[:3]


def test_one_point_deep_genus():
    # weight 21 pulls correlators up to genus 11 through the bridge
    series = one_point_affine(21)
    for m in range(1, 22, 2):
        assert series.get(-m, 0) == bridge((m,)), m
