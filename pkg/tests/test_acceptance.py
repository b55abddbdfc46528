"""Acceptance criteria.  Each test prints one PASS/FAIL line with its runtime
against the stated budget; criterion 5 is reported for the literal displayed
series (expected to fail) and for the corrected series."""

import random
import time
from itertools import product

import pytest

from cannibal.binomial import (
    PadicExponent,
    binomial_series,
    final_theorem_coefficients,
    functional_equation_holds,
    mod_p_separation,
)
from cannibal.cannibal import verify_real_square_theta, virtual_identity_holds
from cannibal.curve import GENERATORS, GL2Z3Matrix, all_gl2, enumerate_points, generate_group, matrix_of, point_order
from cannibal.fgl import WeierstrassCurve, fgl_from_curve
from cannibal.pairing import (
    E_1S,
    build_lattice,
    omega_square_relation,
    one_plus_s_relations,
    verify_det_lemma,
)
from cannibal.qexp import compare_phi, phi_exponential, phi_product, q0_leading_reports
from cannibal.rings import F4
from cannibal.series import implicit_w_residual, solve_implicit_w
from cannibal.stabilizer import (
    H_I,
    I_ACTION,
    I_ACTION_DISPLAYED,
    OMEGA_ACTION,
    Precision,
    build_i_action,
    omega_pushforward_is_twist,
    squared_map_report,
    verify_action,
    verify_beaudry_formula,
)

PREC = Precision(12, 8, 10)


@pytest.fixture
def report(capsys):
    def emit(label, ok, elapsed, budget, detail=""):
        status = "PASS" if ok and elapsed < budget else "FAIL"
        line = f"[{status}] {label:<52} {elapsed * 1000:9.1f} ms (budget {budget * 1000:g} ms)"
        if detail:
            line += f"  {detail}"
        with capsys.disabled():
            print("\n" + line)
        return ok and elapsed < budget

    return emit


def timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def test_01_curve_points(report):
    def run():
        pts = enumerate_points()
        return len(pts) == 9 and all(point_order(P) == 3 for P in pts if not P.is_infinity)

    ok, dt = timed(run)
    assert report("1 curve.points: 9 points, (Z/3)^2", ok, dt, 1e-3)


def test_02_curve_gl2(report):
    expected = {"-1": (-1, 0, 0, -1), "omega": (1, 1, 0, 1), "i": (0, -1, 1, 0), "sigma": (1, 0, 0, -1)}

    def run():
        mats = {n: matrix_of(GENERATORS[n]) for n in expected}
        match = all(mats[n] == GL2Z3Matrix.of(*e) for n, e in expected.items())
        dets = tuple(mats[n].det for n in ("-1", "omega", "i", "sigma"))
        G = generate_group(mats.values())
        return match and dets == (1, 1, 1, 2) and len(G) == 48 and G == all_gl2()

    ok, dt = timed(run)
    assert report("2 curve.gl2: matrices, |G| = 48, dets (1,1,1,-1)", ok, dt, 10e-3)


def test_03_fgl_height(report):
    def run():
        two = fgl_from_curve(WeierstrassCurve(F4, F4(0), F4(1)), 10).n_series(2)
        return not two[2] and not two[3] and two[4] == F4.one

    ok, dt = timed(run)
    assert report("3 fgl.height: [2](z) = unit * z^4 + ...", ok, dt, 1.0)


def test_04_stab_omega(report):
    def run():
        equal, _ = omega_pushforward_is_twist(PREC)
        return equal and verify_action(OMEGA_ACTION, PREC).passed

    ok, dt = timed(run)
    assert report("4 stab.omega: pushforward = twist exactly", ok, dt, 5.0)


def _w_residual_zero(R, cap):
    hu = H_I.u1_image(R)
    w = solve_implicit_w(R, 3 * hu, hu ** 3 - 1, cap)
    return not implicit_w_residual(w, 3 * hu, hu ** 3 - 1)


@pytest.mark.xfail(strict=True, reason="the i-series as literally displayed is not a homomorphism; see the corrected test")
def test_05a_stab_i_literal_displayed(report):
    rep, dt = timed(lambda: verify_action(I_ACTION_DISPLAYED, PREC))
    ok = rep.passed and _w_residual_zero(PREC.ring, PREC.cap)
    assert report("5 stab.i-homomorphism (literal displayed)", ok, dt, 30.0, rep.describe())


def test_05b_stab_i_corrected(report):
    def run():
        rep = verify_action(I_ACTION, PREC)
        return rep.passed and _w_residual_zero(PREC.ring, PREC.cap), rep

    (ok, rep), dt = timed(run)
    assert report("5 stab.i-homomorphism (corrected)", ok, dt, 30.0, rep.describe())


def test_06_stab_beaudry(report):
    def run():
        R = PREC.ring
        beaudry = verify_beaudry_formula(build_i_action(PREC)).passed
        hu1, t0 = squared_map_report(I_ACTION, PREC)
        return beaudry and hu1 == R.u1 and t0 == R(-1)

    ok, dt = timed(run)
    assert report("6 stab.beaudry: h(u1) formula, (h^i)^2", ok, dt, 1.0)


def test_07_binom_functional(report):
    def run():
        rnd = random.Random(0)
        fe = all(
            functional_equation_holds(binomial_series(PadicExponent(rnd.randrange(1 << 10), 10), 12).series)
            for _ in range(50)
        )
        sep = all(
            mod_p_separation(PadicExponent(3, 10), PadicExponent(3 + (1 << s) * 5, 10), s).first_difference == 1 << s
            for s in range(5)
        )
        return fe and sep

    ok, dt = timed(run)
    assert report("7 binom.functional: 50 alphas, separation s<=4", ok, dt, 1.0)


def test_08_cannibal_real_square(report):
    def run():
        reps = [verify_real_square_theta(q, 8) for q in (-1, 3, 5, 1)]
        return all(r.passed for r in reps) and reps[-1].displayed == 1 and virtual_identity_holds()

    ok, dt = timed(run)
    assert report("8 cannibal.prop41: q in {-1,3,5}, q=1 -> 1", ok, dt, 1.0)


def test_09_pairing_det(report):
    def run():
        L = build_lattice().lattice
        det_ok = all(verify_det_lemma(c[:2], c[2:]).passed for c in product(range(-2, 3), repeat=4))
        rel_ok = L.contains(omega_square_relation()) and all(L.contains(r) for r in one_plus_s_relations())
        return det_ok and rel_ok and L.has_infinite_order(E_1S)

    ok, dt = timed(run)
    assert report("9 pairing.det: 625 cases, relations, infinite order", ok, dt, 5.0)


def test_10_qexp_phi(report):
    def run():
        rep = compare_phi(6, 9)
        return rep.passed and phi_product(6, 9) == phi_exponential(6, 9)

    ok, dt = timed(run)
    assert report("10 qexp.phi: product = exponential at (6, 9)", ok, dt, 10.0)


def test_11_final_binomial(report):
    def run():
        reps = [final_theorem_coefficients(d, 11, 20) for d in (1, -1, 3, -3, 5, -5)]
        return all(r.passed for r in reps) and min(r.precision for r in reps) >= 8

    ok, dt = timed(run)
    assert report("11 final.binomial: d in {+-1,+-3,+-5}, k <= 10", ok, dt, 1.0)


def test_12_q0_leading(report):
    def run():
        reps = q0_leading_reports(Precision(10, 6, 4))
        return all(r.passed for r in reps)

    ok, dt = timed(run)
    assert report("12 q0.leading: simplification for omega, i", ok, dt, 1.0)
