import pytest

from cannibal.fgl import FormalGroupLaw, verify_homomorphism
from cannibal.rings import F4, E0Ring
from cannibal.series import TruncatedSeries
from cannibal.stabilizer import (
    I_ACTION,
    I_ACTION_DISPLAYED,
    IDENTITY_ACTION,
    OMEGA_ACTION,
    SIGMA_ACTION,
    Precision,
    StricklandConstants,
    act_on_euler_class,
    build_i_action,
    build_omega_action,
    build_sigma_action,
    compose_actions,
    euler_class_consistent,
    frobenius_action,
    omega_pushforward_is_twist,
    reduce_series_mod_maximal,
    squared_map_report,
    universal_fgl,
    verify_action,
    verify_beaudry_formula,
)

PREC = Precision(12, 8, 10)
SMALL = Precision(10, 5, 6)


@pytest.fixture(scope="module")
def i_data():
    return build_i_action(PREC)


def test_omega_series_and_pushforward():
    d = build_omega_action(PREC)
    R = d.ring
    assert d.t(0) == R.omega
    assert all(not d.t(k) for k in range(1, PREC.cap - 1))
    assert omega_pushforward_is_twist(PREC) == (True, None)
    assert verify_action(OMEGA_ACTION, PREC).passed


@pytest.mark.parametrize("action", [OMEGA_ACTION, I_ACTION, SIGMA_ACTION])
def test_generators_are_homomorphisms(action):
    rep = verify_action(action, PREC)
    assert rep.passed, rep.describe()


def test_literal_displayed_i_series_is_not_a_homomorphism():
    rep = verify_action(I_ACTION_DISPLAYED, PREC)
    assert not rep.passed
    assert rep.first_mismatch == (1, 2)


def test_i_series_leading_coefficients(i_data):
    k = StricklandConstants.at(i_data.ring)
    assert i_data.t(0) == k.l
    assert i_data.t(1) == -k.l * k.s
    assert i_data.h_on_u.body == k.l and i_data.h_on_u.u_power == 1


def test_displayed_and_corrected_agree_to_second_order():
    R = PREC.ring
    a = I_ACTION.series(R, PREC.cap)
    b = I_ACTION_DISPLAYED.series(R, PREC.cap)
    assert a[1] == b[1] and a[2] == b[2]


def test_beaudry_formula(i_data):
    assert verify_beaudry_formula(i_data).passed
    assert verify_beaudry_formula(build_omega_action(PREC)).passed


def test_beaudry_negative_control(i_data):
    rep = verify_beaudry_formula(i_data, t1=i_data.t(1) + i_data.ring.u1 ** 2)
    assert not rep.passed
    assert rep.first_difference == 2


def test_i_squared_acts_as_minus_one():
    hu1, t0 = squared_map_report(I_ACTION, SMALL)
    R = SMALL.ring
    assert hu1 == R.u1
    assert t0 == R(-1)
    sq = compose_actions(I_ACTION, I_ACTION).series(R, SMALL.cap)
    assert sq == universal_fgl(R, SMALL.cap).n_series(-1)


def test_omega_cubed_is_identity():
    R = SMALL.ring
    cube = compose_actions(OMEGA_ACTION, OMEGA_ACTION, OMEGA_ACTION)
    assert cube.series(R, SMALL.cap) == TruncatedSeries.variable(R, 1, SMALL.cap)
    assert cube.hom.apply(R.omega * R.u1 + 3, R) == R.omega * R.u1 + 3


def test_identity_composition():
    R = SMALL.ring
    c = compose_actions(IDENTITY_ACTION, I_ACTION)
    assert c.series(R, SMALL.cap) == I_ACTION.series(R, SMALL.cap)


@pytest.mark.parametrize("word", [(OMEGA_ACTION, I_ACTION), (SIGMA_ACTION, I_ACTION), (I_ACTION, OMEGA_ACTION)])
def test_composites_are_homomorphisms(word):
    rep = verify_action(compose_actions(*word), SMALL)
    assert rep.passed, rep.describe()


def test_frobenius():
    R = E0Ring(8, 4)
    assert frobenius_action(R.omega * R.u1) == R.omega * R.omega * R.u1
    x = R.u1 ** 3 - 1
    assert frobenius_action(x) == x
    assert frobenius_action(frobenius_action(R.omega)) == R.omega
    d = build_sigma_action(SMALL)
    assert d.t(0) == d.ring.one


def test_action_on_euler_class(i_data):
    omega_x = act_on_euler_class(build_omega_action(PREC))
    assert list(omega_x.terms) == [(1,)]
    ix = act_on_euler_class(i_data)
    assert ix[1].body == i_data.ring.one
    assert ix[2].u_power == 1
    assert ix[2].body == i_data.t(1) * i_data.ring.inverse(i_data.t(0))
    assert euler_class_consistent(i_data)


def test_reduction_is_automorphism_of_f_c(i_data):
    R = i_data.ring
    F = universal_fgl(R, PREC.cap)
    Fbar = FormalGroupLaw(F.F.map_coefficients(lambda c: c.reduce(), F4))
    for d in (i_data, build_omega_action(PREC)):
        g = reduce_series_mod_maximal(d.g_series)
        assert verify_homomorphism(g, Fbar, Fbar).passed
    assert reduce_series_mod_maximal(i_data.g_series)[1] == F4.one
