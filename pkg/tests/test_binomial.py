import random
from fractions import Fraction

import pytest

from cannibal.binomial import (
    PadicExponent,
    binomial_mod2_lucas,
    binomial_series,
    binomial_series_exact,
    exact_binomial,
    final_theorem_coefficients,
    functional_equation_holds,
    mod_p_separation,
    padic_binomial,
    unique_solution_check,
    v2_factorial,
)
from cannibal.errors import NotOdd, PrecisionExhausted
from cannibal.rings import IntegersMod2


def test_legendre():
    for n in range(1, 30):
        f = 1
        for k in range(2, n + 1):
            f *= k
        assert v2_factorial(n) == (f & -f).bit_length() - 1


def test_small_series():
    assert binomial_series_exact(-1, 6).coefficients() == [1, -1, 1, -1, 1, -1]
    assert binomial_series_exact(3, 6).coefficients() == [1, 3, 3, 1, 0, 0]


def test_precision_tracking():
    a = PadicExponent(5, 10)
    assert padic_binomial(a, 4)[1] == 10 - 3
    B = binomial_series(a, 12)
    assert B.precision == 10 - v2_factorial(11)
    with pytest.raises(PrecisionExhausted):
        binomial_series(PadicExponent(5, 4), 12)


def test_functional_equation_for_random_exponents():
    rnd = random.Random(0)
    for _ in range(50):
        a = PadicExponent(rnd.randrange(1 << 10), 10)
        assert functional_equation_holds(binomial_series(a, 12).series)


def test_functional_equation_detects_corruption():
    B = binomial_series(PadicExponent(5, 10), 8).series
    R = B.ring
    bad = B + B.__class__(R, 1, 8, {(3,): R.one})
    assert not functional_equation_holds(bad)


def test_uniqueness_over_q():
    rep = unique_solution_check(-1, 8)
    assert rep.unique and rep.series == binomial_series_exact(-1, 8)
    assert unique_solution_check(0, 8).series == 1
    alpha = Fraction(7, 3)
    assert unique_solution_check(alpha, 10).series == binomial_series_exact(alpha, 10)


def test_uniqueness_is_underdetermined_mod_2_power():
    rep = unique_solution_check(1, 8, IntegersMod2(10))
    assert not rep.unique and rep.underdetermined_degree == 2


@pytest.mark.parametrize("s", range(5))
def test_mod_2_separation(s):
    rep = mod_p_separation(PadicExponent(1, 10), PadicExponent(1 + (1 << s), 10), s)
    assert rep.first_difference == 1 << s


def test_equal_exponents_do_not_separate():
    a = PadicExponent(7, 8)
    assert mod_p_separation(a, a, 0).first_difference is None


def test_lucas_matches_exact_parity():
    a = PadicExponent(11, 8)
    assert binomial_mod2_lucas(a, 16) == [exact_binomial(11, n) & 1 for n in range(16)]


def test_final_theorem():
    rep = final_theorem_coefficients(1)
    assert rep.coefficients[:4] == [0, 2, 1, 0]
    for d in (1, -1, 3, -3, 5, -5):
        r = final_theorem_coefficients(d)
        assert r.passed and r.precision >= 8
        assert r.coefficients[0] == 0
    with pytest.raises(NotOdd):
        final_theorem_coefficients(2)
