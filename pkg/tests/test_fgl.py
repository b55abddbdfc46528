from fractions import Fraction

import pytest

from cannibal.cannibal import exact_quotient
from cannibal.errors import NotIsomorphic
from cannibal.fgl import (
    WeierstrassCurve,
    additive,
    curve_inversion,
    fgl_from_curve,
    flip_coordinate,
    logarithm,
    multiplicative,
    solve_strict_iso,
    verify_homomorphism,
)
from cannibal.rings import F4, QQ
from cannibal.series import TruncatedSeries, compose, reverse

CAP = 8


def f4_curve_fgl(cap=10):
    return fgl_from_curve(WeierstrassCurve(F4, F4(0), F4(1)), cap)


def test_curve_fgl_over_f4_satisfies_axioms():
    assert f4_curve_fgl(8).axiom_failures() == []


def test_two_series_has_height_two():
    two = f4_curve_fgl(10).n_series(2)
    assert [two[n] for n in range(4)] == [F4.zero] * 4
    assert two[4] == F4.one


def test_multiplicative_axioms_and_n_series():
    F = multiplicative(QQ, CAP)
    assert F.axiom_failures() == []
    x = TruncatedSeries.variable(QQ, 1, CAP)
    # 1 - [n](x) = (1 - x)^n
    assert 1 - F.n_series(3) == (1 - x) ** 3
    assert 1 - F.n_series(-1) == (1 - x).inverse()


def test_inversion_matches_curve_negation():
    curve = WeierstrassCurve(QQ, Fraction(3), Fraction(-1))
    F = fgl_from_curve(curve, CAP)
    assert F.inversion_series() == curve_inversion(curve, CAP)


def test_flip_is_isomorphic_via_negation():
    curve = WeierstrassCurve(QQ, Fraction(2), Fraction(5))
    F = fgl_from_curve(curve, CAP)
    G = flip_coordinate(F)
    minus = -TruncatedSeries.variable(QQ, 1, CAP)
    assert verify_homomorphism(minus, F, G).passed
    assert fgl_from_curve(curve, CAP, "-x/y") == G
    with pytest.raises(ValueError):
        fgl_from_curve(curve, CAP, "y/x")


def invariant_differential_fgl(a1, a3, cap):
    """Oracle: F = exp(log x + log y) with log' from dx/(2y + a1 x + a3).

    In the chart z = x/y, w = 1/y one has x = z/w, y = 1/w, so
    dx/(2y + a1 x + a3) = (w - z w') / (w (2 + a1 z + a3 w)) dz.
    """
    curve = WeierstrassCurve(QQ, Fraction(a1), Fraction(a3))
    w = curve.w_series(cap + 3)
    z = TruncatedSeries.variable(QQ, 1, cap + 3)
    num = w - z * w.derivative()
    den = w * (2 + z.scale(Fraction(a1)) + w.scale(Fraction(a3)))
    dlog = exact_quotient(num, den)
    dlog = dlog.scale(1 / dlog[0]).truncate(cap)
    log = dlog.integrate().truncate(cap)
    exp = reverse(log)
    X = TruncatedSeries.variable(QQ, 2, cap, 0)
    Y = TruncatedSeries.variable(QQ, 2, cap, 1)
    return compose(exp, [compose(log, [X]) + compose(log, [Y])])


@pytest.mark.parametrize("a1,a3", [(0, 1), (3, -1), (1, 2)])
def test_chord_construction_matches_invariant_differential(a1, a3):
    F = fgl_from_curve(WeierstrassCurve(QQ, Fraction(a1), Fraction(a3)), CAP)
    assert F.F == invariant_differential_fgl(a1, a3, CAP)


def test_rational_fgl_reduces_to_f4_fgl():
    oracle = invariant_differential_fgl(0, 1, CAP)

    def to_f4(c: Fraction):
        assert c.denominator % 2 == 1, "coefficient is not 2-integral"
        return F4(c.numerator % 2)

    reduced = oracle.map_coefficients(to_f4, F4)
    assert reduced == f4_curve_fgl(CAP).F


def test_logarithm_linearises():
    F = multiplicative(QQ, CAP, v=-1)
    log = logarithm(F)
    x = TruncatedSeries.variable(QQ, 1, CAP)
    assert log == (1 + x).log()


def test_strict_iso_additive_to_multiplicative():
    phi = solve_strict_iso(additive(QQ, CAP), multiplicative(QQ, CAP, v=-1))
    x = TruncatedSeries.variable(QQ, 1, CAP)
    assert phi == x.exp() - 1


def test_no_iso_from_additive_to_height_two_mod_2():
    with pytest.raises(NotIsomorphic):
        solve_strict_iso(additive(F4, 6), f4_curve_fgl(6))


def test_homomorphism_report_locates_mismatch():
    F = multiplicative(QQ, 6)
    x = TruncatedSeries.variable(QQ, 1, 6)
    rep = verify_homomorphism(x, F, additive(QQ, 6))
    assert not rep.passed
    assert rep.first_mismatch == (1, 1)
    assert "x^1 y^1" in rep.describe()


def test_twist_by_scalar():
    F = multiplicative(QQ, CAP)
    two_x = TruncatedSeries.variable(QQ, 1, CAP).scale(2)
    twisted = F.twist(two_x)
    assert twisted == multiplicative(QQ, CAP, v=2)
