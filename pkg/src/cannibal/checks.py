"""Registry of named verification checks.

Every check takes a Config and returns (passed, details).  Checks are pure
functions of the config, so reports are reproducible byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from typing import Callable

from .errors import InvalidConfig, UnknownCheckId


@dataclass(frozen=True)
class Config:
    N: int = 12
    M: int = 8
    cap: int = 10
    Q: int = 6
    Dx: int = 9
    seed: int = 0

    def __post_init__(self):
        for name, low in (("N", 4), ("M", 1), ("cap", 4), ("Q", 1), ("Dx", 1)):
            value = getattr(self, name)
            if not isinstance(value, int) or value < low:
                raise InvalidConfig(f"{name} must be an integer >= {low}, got {value!r}")

    def params(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CheckReport:
    check_id: str
    description: str
    params: dict
    status: str
    details: str = ""

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "description": self.description,
            "params": self.params,
            "status": self.status,
            "details": self.details,
        }


@dataclass(frozen=True)
class Check:
    check_id: str
    description: str
    run: Callable[[Config], tuple] = field(compare=False)


REGISTRY: dict[str, Check] = {}


def register(check_id: str, description: str):
    def deco(fn):
        REGISTRY[check_id] = Check(check_id, description, fn)
        return fn

    return deco


def _stab_precision(cfg: Config):
    from .stabilizer import Precision

    return Precision(cfg.N, cfg.M, cfg.cap)


# ---------------------------------------------------------------------------
# curve
# ---------------------------------------------------------------------------


@register("curve.points", "C(F4) has 9 points forming (Z/3)^2")
def _curve_points(cfg: Config):
    from .curve import enumerate_points, point_order

    pts = enumerate_points()
    orders = sorted(point_order(P) for P in pts)
    ok = len(pts) == 9 and orders == [1] + [3] * 8
    return ok, f"{len(pts)} points, orders {orders}"


EXPECTED_MATRICES = {
    "-1": (-1, 0, 0, -1),
    "omega": (1, 1, 0, 1),
    "i": (0, -1, 1, 0),
    "sigma": (1, 0, 0, -1),
}


@register("curve.gl2", "generator automorphisms map to the displayed GL2(Z/3) matrices")
def _curve_gl2(cfg: Config):
    from .curve import GENERATORS, GL2Z3Matrix, matrix_of

    bad, dets = [], []
    for name, aut in GENERATORS.items():
        m = matrix_of(aut)
        dets.append(m.det)
        if m != GL2Z3Matrix.of(*EXPECTED_MATRICES[name]):
            bad.append(f"{name} -> {m!r}")
    ok = not bad and dets == [1, 1, 1, 2]
    return ok, "; ".join(bad) or f"dets (-1, omega, i, sigma) = {tuple(1 if d == 1 else -1 for d in dets)}"


@register("curve.order48", "the automorphism group of C has order 48")
def _curve_order48(cfg: Config):
    from .curve import GENERATORS, all_gl2, generate_group, matrix_of

    G = generate_group(matrix_of(a) for a in GENERATORS.values())
    ok = len(G) == 48 and G == all_gl2()
    return ok, f"|G| = {len(G)}"


# ---------------------------------------------------------------------------
# formal groups and stabilizer
# ---------------------------------------------------------------------------


@register("fgl.height", "[2]-series of F_C mod 2 starts with a unit times z^4")
def _fgl_height(cfg: Config):
    from .fgl import WeierstrassCurve, fgl_from_curve
    from .rings import F4

    F = fgl_from_curve(WeierstrassCurve(F4, F4(0), F4(1)), cfg.cap)
    two = F.n_series(2)
    low = [two[n] for n in range(1, 4)]
    ok = not any(low) and bool(two[4])
    return ok, f"[2](z) = {two!r}"


@register("stab.omega", "(h^omega)_*F_U equals the omega-twist of F_U exactly")
def _stab_omega(cfg: Config):
    from .stabilizer import OMEGA_ACTION, omega_pushforward_is_twist, verify_action

    prec = _stab_precision(cfg)
    equal, diff = omega_pushforward_is_twist(prec)
    hom = verify_action(OMEGA_ACTION, prec)
    ok = equal and hom.passed
    if ok:
        return True, "pushforward = twist coefficientwise; omega z is a homomorphism"
    return False, f"pushforward vs twist first differ at {diff}; {hom.describe()}"


@register("stab.i-homomorphism", "the i-series is a homomorphism (h^i)_*F_U -> F_U")
def _stab_i(cfg: Config):
    from .series import implicit_w_residual, solve_implicit_w
    from .stabilizer import H_I, I_ACTION, I_ACTION_DISPLAYED, verify_action

    prec = _stab_precision(cfg)
    R = prec.ring
    hu = H_I.u1_image(R)
    w = solve_implicit_w(R, 3 * hu, hu ** 3 - 1, prec.cap)
    residual_zero = not implicit_w_residual(w, 3 * hu, hu ** 3 - 1)
    corrected = verify_action(I_ACTION, prec)
    literal = verify_action(I_ACTION_DISPLAYED, prec)
    ok = corrected.passed and residual_zero
    details = (
        f"corrected series: {corrected.describe()}; w residual zero: {residual_zero}; "
        f"literal displayed series: {literal.describe()}"
    )
    return ok, details


@register("stab.beaudry", "t0 u1 + 2 t1/(3 t0) = h(u1), and (h^i)^2 sends (u1, u) to (u1, -u)")
def _stab_beaudry(cfg: Config):
    from .stabilizer import I_ACTION, build_i_action, build_omega_action, squared_map_report, verify_beaudry_formula

    prec = _stab_precision(cfg)
    R = prec.ring
    rep_i = verify_beaudry_formula(build_i_action(prec))
    rep_w = verify_beaudry_formula(build_omega_action(prec))
    hu1, t0 = squared_map_report(I_ACTION, prec)
    square_ok = hu1 == R.u1 and t0 == R(-1)
    ok = rep_i.passed and rep_w.passed and square_ok
    return ok, (
        f"i: first difference {rep_i.first_difference}; omega: first difference {rep_w.first_difference}; "
        f"(h^i)^2(u1) = u1: {hu1 == R.u1}; t0(i^2) = -1: {t0 == R(-1)}"
    )


# ---------------------------------------------------------------------------
# binomial and cannibalistic classes
# ---------------------------------------------------------------------------


@register("binom.functional", "B_alpha(t1)B_alpha(t2) = B_alpha(t1+t2+t1t2) and mod-2 separation")
def _binom_functional(cfg: Config):
    from .binomial import PadicExponent, binomial_series, functional_equation_holds, mod_p_separation

    rnd = random.Random(cfg.seed)
    bad = []
    for _ in range(50):
        a = PadicExponent(rnd.randrange(1 << 10), 10)
        if not functional_equation_holds(binomial_series(a, 12).series):
            bad.append(a.value)
    seps = []
    for s in range(5):
        alpha = PadicExponent(rnd.randrange(1 << 10), 10)
        beta = PadicExponent(alpha.value + (1 << s) * (2 * rnd.randrange(1 << 4) + 1), 10)
        seps.append(mod_p_separation(alpha, beta, s))
    ok = not bad and all(r.passed for r in seps)
    return ok, f"functional equation failures {bad}; separation degrees {[r.first_difference for r in seps]}"


@register("cannibal.prop41", "theta^q(L^2) via the closed formula, the spin Euler class and the SU quotient")
def _cannibal_real_square(cfg: Config):
    from .cannibal import verify_real_square_theta, virtual_identity_holds

    reps = {q: verify_real_square_theta(q, 8) for q in (1, -1, 3, 5)}
    bad = [q for q, r in reps.items() if not r.passed]
    ok = not bad and virtual_identity_holds()
    return ok, f"q failing: {bad}" if bad else "all three routes agree for q in (1, -1, 3, 5) at cap 8"


@register("final.binomial", "coefficients of (1+r)^(d-1)((1+r)^(2d)-1) are C(3d-1,k) - C(d-1,k)")
def _final_binomial(cfg: Config):
    from .binomial import final_theorem_coefficients

    reps = [final_theorem_coefficients(d, 11, 20) for d in (1, -1, 3, -3, 5, -5)]
    bad = [r.d for r in reps if not r.passed]
    prec = min(r.precision for r in reps)
    ok = not bad and prec >= 8
    return ok, f"failing d: {bad}; certified precision 2^{prec}"


# ---------------------------------------------------------------------------
# pairing and q-expansions
# ---------------------------------------------------------------------------


@register("pairing.det", "f(x(a+bS), x(conj(a)S + 2conj(b))) = det * f(x, xS) in the relation lattice")
def _pairing_det(cfg: Config):
    from .pairing import pairing_summary

    s = pairing_summary(2)
    return s.passed, (
        f"det failures {s.det_failures}/625; f(xw,x)^2 = f(xS,xwS): {s.omega_square}; "
        f"chain: {s.omega_chain}; (1+S)-rule: {s.one_plus_s} "
        f"({'derived' if s.one_plus_s_derivable else 'axiom'}); f(x,xS) infinite order: {s.infinite_order}"
    )


@register("qexp.phi", "product and exponential forms of Phi agree")
def _qexp_phi(cfg: Config):
    from .qexp import compare_phi

    try:
        rep = compare_phi(cfg.Q, cfg.Dx)
    except AssertionError as exc:
        return False, str(exc)
    if rep.passed:
        return True, f"equal at (Q={cfg.Q}, Dx={cfg.Dx}) with G_2k constant {rep.normalization}"
    return False, f"first difference at (q^n, x^m) = {rep.first_difference}"


@register("q0.leading", "displayed simplification of the numerator of f^*q_0^g for g in {omega, i}")
def _q0_leading(cfg: Config):
    from .qexp import q0_leading_reports
    from .stabilizer import Precision

    reps = q0_leading_reports(Precision(cfg.N, cfg.M, 4))
    bad = [r.name for r in reps if not r.passed]
    omega_trivial = reps[0].trivial
    ok = not bad and omega_trivial
    return ok, f"failing: {bad}; omega numerator = denominator: {omega_trivial}"


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------


def resolve(selection) -> list[str]:
    if not selection or selection == "all" or list(selection) == ["all"]:
        return sorted(REGISTRY)
    ids = []
    for cid in selection:
        if cid == "all":
            ids.extend(REGISTRY)
        elif cid not in REGISTRY:
            raise UnknownCheckId(cid)
        else:
            ids.append(cid)
    return sorted(set(ids))


def run_check(check_id: str, cfg: Config) -> CheckReport:
    check = REGISTRY[check_id]
    try:
        passed, details = check.run(cfg)
    except Exception as exc:  # a crashing check is a failing check
        passed, details = False, f"{type(exc).__name__}: {exc}"
    status = "pass" if passed else "fail"
    if not passed and not details:
        details = "check returned failure without details"
    return CheckReport(check_id, check.description, cfg.params(), status, details)


def _run_pair(args):
    return run_check(*args)


def run_checks(selection=None, cfg: Config | None = None, jobs: int = 1) -> list[CheckReport]:
    cfg = cfg or Config()
    ids = resolve(selection)
    if jobs > 1 and len(ids) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_pair, [(cid, cfg) for cid in ids]))
    else:
        reports = [run_check(cid, cfg) for cid in ids]
    return sorted(reports, key=lambda r: r.check_id)
