from fractions import Fraction

import pytest

from cannibal.errors import NotNormalizable
from cannibal.qexp import (
    QExpansion,
    bernoulli,
    beta_series,
    cocycle_holds,
    compare_phi,
    eisenstein,
    is_even_in_x,
    is_odd_in_x,
    negate_x,
    phi_exponential,
    phi_product,
    q0_leading_reports,
    q0_leading_term_check,
    sigma,
    swap_xy,
    two_structure,
    x_variables,
)
from cannibal.rings import CYCLO12, QQ
from cannibal.series import TruncatedSeries
from cannibal.stabilizer import Precision, build_i_action


def test_bernoulli_numbers():
    assert [bernoulli(n) for n in (0, 1, 2, 4, 6, 8)] == [1, Fraction(-1, 2), Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30)]


def test_eisenstein_coefficients():
    G2 = eisenstein(1, 4)
    assert G2[0] == Fraction(-1, 24)
    assert G2[2] == sigma(1, 2) == 3
    assert eisenstein(2, 3)[1] == 1
    assert eisenstein(2, 3)[0] == Fraction(1, 240)


def test_phi_q0_slice_is_two_sinh():
    P = phi_product(3, 9)
    assert P.x_slice(1)[0] == 1
    assert P[0, (3,)] == Fraction(1, 24)
    assert P[0, (5,)] == Fraction(1, 1920)


def test_phi_q1_slice_from_product_oracle():
    # (1 - q e^x)(1 - q e^-x)/(1 - q)^2 = 1 + q (2 - e^x - e^-x) + O(q^2)
    P = phi_product(2, 7)
    x = TruncatedSeries.variable(QQ, 1, 8)
    sinh2 = (x.scale(Fraction(1, 2)).exp() - x.scale(Fraction(-1, 2)).exp())
    cosh = x.exp() + x.scale(-1).exp()
    assert P.slices[1] == (sinh2 * (2 - cosh)).truncate(8)


def test_phi_forms_agree():
    assert compare_phi(6, 9).passed
    assert phi_product(6, 9) == phi_exponential(6, 9)


def test_wrong_normalization_fails():
    assert phi_product(3, 5).first_difference(phi_exponential(3, 5, normalization="+B/(4k)")) is not None


def test_phi_is_odd():
    P = phi_product(4, 9)
    assert is_odd_in_x(P)
    # Phi/x is even: every x-exponent present in Phi is odd
    assert all(e[0] % 2 == 1 for s in P.slices for e in s.terms)


def test_beta_normalised_and_leading_coefficient():
    b = beta_series(3, 5)
    assert b.x_slice(0) == [CYCLO12.one, CYCLO12.zero, CYCLO12.zero]
    # q^0 oracle: Phi'(-omega)/Phi(-omega) = cosh(-omega/2) / (2 sinh(-omega/2))
    c = CYCLO12.root_of_unity(-1, 6)
    ci = CYCLO12.inverse(c)
    expected = (c + ci) / ((c - ci) * 2)
    assert b[0, (1,)] == expected


def test_beta_times_reflection_is_even():
    b = beta_series(4, 6)
    assert is_even_in_x(b * negate_x(b))


def test_two_structure_examples():
    one = QExpansion.one(QQ, 3, 6)
    d = two_structure(one)
    assert d == QExpansion.one(QQ, 3, 6, 2)
    c = Fraction(3, 5)
    x = TruncatedSeries.variable(QQ, 1, 7)
    g = QExpansion.from_x((x * x).scale(c).exp(), 3, 6)
    X, Y = x_variables(g, 2)
    assert two_structure(g) == QExpansion.from_x((X * Y).scale(2 * c).exp(), 3, 6)


def test_two_structure_of_beta():
    b = beta_series(4, 6)
    d = two_structure(b)
    assert d == swap_xy(d)
    assert cocycle_holds(beta_series(3, 5))


def test_two_structure_is_multiplicative():
    x = TruncatedSeries.variable(QQ, 1, 7)
    g1 = QExpansion.from_x((1 + x).inverse(), 3, 6)
    q = QExpansion.from_q(QQ, [0, 1], 3, 6)
    g2 = QExpansion.from_x(x.exp(), 3, 6) + q * QExpansion.from_x(x * x, 3, 6)
    assert two_structure(g1 * g2) == two_structure(g1) * two_structure(g2)


def test_two_structure_needs_unit():
    with pytest.raises(NotNormalizable):
        two_structure(phi_product(2, 5))


def test_q0_leading_terms():
    omega_rep, i_rep = q0_leading_reports()
    assert omega_rep.passed and omega_rep.trivial
    assert i_rep.passed


class _Trivial:
    """Stand-in element with t0 = 1, t1 = 0 and h(u1) = u1."""

    name = "trivial"

    def __init__(self, R):
        self.ring = R
        self.h_on_u1 = R.u1

    def t(self, i):
        return self.ring.one if i == 0 else self.ring.zero


def test_q0_degenerate_case():
    R = Precision(10, 6, 4).ring
    rep = q0_leading_term_check(_Trivial(R), 1)
    assert rep.passed and rep.trivial


def test_q0_i_is_not_trivial():
    _, i_rep = q0_leading_reports()
    assert not i_rep.trivial
    assert i_rep.via_h == q0_leading_term_check(build_i_action(Precision(10, 6, 4)), 1).via_h
