from fractions import Fraction
from math import factorial

import pytest

from cannibal.errors import BadLeadingTerm, NonzeroConstantTerm, NotAUnit, NotReversible, TwoNotInvertible
from cannibal.rings import QQ, E0Ring, IntegersMod2
from cannibal.series import (
    TruncatedSeries,
    binomial_half,
    compose,
    implicit_w_residual,
    reverse,
    series_sqrt,
    solve_implicit_w,
)


def x_(cap=8, ring=QQ):
    return TruncatedSeries.variable(ring, 1, cap)


def test_truncation_by_total_degree():
    X = TruncatedSeries.variable(QQ, 2, 4, 0)
    Y = TruncatedSeries.variable(QQ, 2, 4, 1)
    p = (X + Y) ** 5
    assert not p
    assert (X * X * Y)[(2, 1)] == 1


def test_geometric_inverse():
    x = x_()
    inv = (1 - x).inverse()
    assert inv.coefficients() == [1] * 8


def test_inverse_needs_unit_constant_term():
    with pytest.raises(NotAUnit):
        x_().inverse()


def test_exp_log_roundtrip():
    x = x_(9)
    e = x.exp()
    assert e.coefficients() == [Fraction(1, factorial(n)) for n in range(9)]
    assert e.log() == x
    with pytest.raises(NonzeroConstantTerm):
        (1 + x).exp()
    with pytest.raises(BadLeadingTerm):
        (2 + x).log()


def test_compose_and_reverse():
    x = x_(8)
    f = x + x * x.scale(3) - x ** 3
    g = reverse(f)
    assert compose(f, [g]) == x
    assert compose(g, [f]) == x
    with pytest.raises(NotReversible):
        reverse(x * x)
    with pytest.raises(NonzeroConstantTerm):
        compose(f, [1 + x])


def test_reverse_of_log_is_exp_minus_one():
    x = x_(8)
    log1p = (1 + x).log()
    assert reverse(log1p) == x.exp() - 1


def test_compose_two_variables():
    X = TruncatedSeries.variable(QQ, 2, 6, 0)
    Y = TruncatedSeries.variable(QQ, 2, 6, 1)
    f = x_(6).exp() - 1
    s = compose(f, [X + Y])
    assert s == (X.exp() * Y.exp()) - 1


def test_derivative_integrate():
    x = x_(6)
    f = (1 + x).inverse()
    assert f.derivative().integrate() == f - 1


def test_implicit_w_solves_its_equation():
    R = E0Ring(10, 5)
    u = R.u1
    w = solve_implicit_w(R, 3 * u, u ** 3 - 1, 10)
    assert not implicit_w_residual(w, 3 * u, u ** 3 - 1)
    assert w[3] == R.one


def test_implicit_w_over_q_leading_terms():
    w = solve_implicit_w(QQ, 0, 1, 12)
    # w = z^3 - w^2: z^3 - z^6 + 2 z^9 - ...
    assert (w[3], w[6], w[9]) == (1, -1, 2)


def test_series_sqrt():
    x = x_(8)
    s = series_sqrt(1 + x)
    assert s * s == 1 + x
    assert s.coefficients() == [binomial_half(n) for n in range(8)]
    with pytest.raises(TwoNotInvertible):
        series_sqrt(TruncatedSeries.constant(IntegersMod2(4), 1, 4))


def test_first_difference():
    x = x_(6)
    assert (1 + x).first_difference(1 + x + x ** 4) == (4,)
    assert x.first_difference(x) is None
