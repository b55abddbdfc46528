"""Explicit stabilizer group data on the universal deformation.

For a stabilizer element g we record a ring map h^g of E0 and a power series
g_U over E0.  Throughout, F_U is the formal group law of

    C_U : y^2 + 3 u1 x y + (u1^3 - 1) y = x^3

in the coordinate z = -x/y.  With the convention phi(F(x, y)) = G(phi x, phi y),
every g_U verified here is a homomorphism (h^g)_* F_U -> F_U.

Actions are lazy recipes: a ring map plus a rule producing g_U at any
precision.  Composites need their inner series at a higher u1-precision, so
eager snapshots would not compose.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .fgl import FormalGroupLaw, HomomorphismReport, WeierstrassCurve, fgl_from_curve, verify_homomorphism
from .rings import IDENTITY_HOM, E0Element, E0Hom, E0Ring, GradedElement, GradedRing
from .series import TruncatedSeries, compose, solve_implicit_w

COORDINATE = "-x/y"


@dataclass(frozen=True)
class Precision:
    """2-adic precision N, u1-adic order M and series cap."""

    N: int = 12
    M: int = 8
    cap: int = 10

    @property
    def ring(self) -> E0Ring:
        return E0Ring(self.N, self.M)


def universal_curve(R: E0Ring) -> WeierstrassCurve:
    u = R.u1
    return WeierstrassCurve(R, 3 * u, u ** 3 - 1)


@lru_cache(maxsize=64)
def universal_fgl(R: E0Ring, cap: int) -> FormalGroupLaw:
    F = fgl_from_curve(universal_curve(R), cap, COORDINATE)
    return FormalGroupLaw(F.F, "F_U")


def pushforward_fgl(h: E0Hom, R: E0Ring, cap: int) -> FormalGroupLaw:
    """(h)_* F_U at ring R, computed from F_U at the precision h requires."""
    src = E0Ring(R.N, R.M + h.loss(R.N))
    F = universal_fgl(src, cap)
    return F.pushforward(lambda c: h.apply(c, R), R, f"({h.name})_*F_U")


# ---------------------------------------------------------------------------
# ring maps
# ---------------------------------------------------------------------------

H_OMEGA = E0Hom("omega", lambda R: R.omega * R.u1)
H_I = E0Hom("i", lambda R: (R.u1 + 2) / (R.u1 - 1))
H_SIGMA = E0Hom("sigma", lambda R: R.u1, frobenius=True)


def frobenius_action(e: E0Element) -> E0Element:
    """Conjugation on W(F4), u1 fixed."""
    return e.conjugate()


# ---------------------------------------------------------------------------
# Strickland's constants for i
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StricklandConstants:
    l: E0Element
    r: E0Element
    s: E0Element
    t: E0Element

    @classmethod
    def at(cls, R: E0Ring) -> "StricklandConstants":
        u, w = R.u1, R.omega
        d = R.inverse(u - 1)
        return cls(
            l=(-1 - 2 * w) * d,
            r=3 * (1 - u ** 3) * d ** 3,
            s=3 * (w * w * u - 1) * d,
            t=3 * (u ** 3 - 1) * (1 - w + (1 - w * w) * u) * d ** 4,
        )


def i_series_displayed(R: E0Ring, cap: int) -> TruncatedSeries:
    """The i-series exactly as printed: (lz + rlw)/(1 + sz + l^3(sr - t)w),
    with w solving w + 3u1 z w + (u1^3 - 1) w^2 = z^3."""
    k = StricklandConstants.at(R)
    u = R.u1
    w = solve_implicit_w(R, 3 * u, u ** 3 - 1, cap)
    z = TruncatedSeries.variable(R, 1, cap)
    num = z.scale(k.l) + w.scale(k.r * k.l)
    den = 1 + z.scale(k.s) + w.scale(k.l ** 3 * (k.s * k.r - k.t))
    return num / den


def i_series(R: E0Ring, cap: int) -> TruncatedSeries:
    """The i-series from Strickland's change of variables.

    x = l^2 x' + r, y = l^3 y' + l^2 s x' + t carries (h^i)_*C_U to C_U.  In
    the coordinate z = -x/y with W = 1/y on (h^i)_*C_U this reads
    (lz + rlW)/(1 + sz + (sr - t)W).
    """
    k = StricklandConstants.at(R)
    hu = H_I.u1_image(R)
    w = solve_implicit_w(R, 3 * hu, hu ** 3 - 1, cap)
    z = TruncatedSeries.variable(R, 1, cap)
    W = compose(w, [-z])
    num = z.scale(k.l) + W.scale(k.r * k.l)
    den = 1 + z.scale(k.s) + W.scale(k.s * k.r - k.t)
    return num / den


# ---------------------------------------------------------------------------
# actions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Action:
    """A ring map h^g together with a rule for g_U at any precision."""

    name: str
    hom: E0Hom
    series_rule: Callable[[E0Ring, int], TruncatedSeries] = field(compare=False)

    def series(self, R: E0Ring, cap: int) -> TruncatedSeries:
        return self.series_rule(R, cap)

    def data(self, prec: Precision) -> "StabilizerElementData":
        R = prec.ring
        g = self.series(R, prec.cap)
        t0 = g[1]
        return StabilizerElementData(
            name=self.name,
            precision=prec,
            action=self,
            h_on_u1=self.hom.u1_image(R),
            h_on_u=GradedElement(t0, 1),
            g_series=g,
        )


def _identity_series(R: E0Ring, cap: int) -> TruncatedSeries:
    return TruncatedSeries.variable(R, 1, cap)


def _omega_series(R: E0Ring, cap: int) -> TruncatedSeries:
    return TruncatedSeries.variable(R, 1, cap).scale(R.omega)


IDENTITY_ACTION = Action("id", IDENTITY_HOM, _identity_series)
OMEGA_ACTION = Action("omega", H_OMEGA, _omega_series)
I_ACTION = Action("i", H_I, i_series)
I_ACTION_DISPLAYED = Action("i(displayed)", H_I, i_series_displayed)
SIGMA_ACTION = Action("sigma", H_SIGMA, _identity_series)


def compose_actions(*actions: Action) -> Action:
    """The product g1 g2 ... : ring map h1 o h2 o ..., series g1 o (h1)_*(g2 ...)."""
    if not actions:
        return IDENTITY_ACTION
    if len(actions) == 1:
        return actions[0]
    first, rest = actions[0], compose_actions(*actions[1:])
    h1 = first.hom

    def rule(R: E0Ring, cap: int) -> TruncatedSeries:
        g1 = first.series(R, cap)
        hi = E0Ring(R.N, R.M + h1.loss(R.N))
        g2 = rest.series(hi, cap).map_coefficients(lambda c: h1.apply(c, R), R)
        return compose(g1, [g2])

    return Action(f"{first.name}*{rest.name}", h1.then(rest.hom), rule)


@dataclass(frozen=True)
class StabilizerElementData:
    """Snapshot of (h^g, g_U) at one precision."""

    name: str
    precision: Precision
    action: Action
    h_on_u1: E0Element
    h_on_u: GradedElement
    g_series: TruncatedSeries

    @property
    def ring(self) -> E0Ring:
        return self.precision.ring

    def t(self, i: int) -> E0Element:
        """t_i(g), the coefficient of z^(i+1) in g_U."""
        return self.g_series[i + 1]


def build_omega_action(prec: Precision = Precision()) -> StabilizerElementData:
    return OMEGA_ACTION.data(prec)


def build_i_action(prec: Precision = Precision()) -> StabilizerElementData:
    return I_ACTION.data(prec)


def build_sigma_action(prec: Precision = Precision()) -> StabilizerElementData:
    return SIGMA_ACTION.data(prec)


# ---------------------------------------------------------------------------
# verifications
# ---------------------------------------------------------------------------


def verify_action(action: Action, prec: Precision = Precision()) -> HomomorphismReport:
    """g_U is a homomorphism (h^g)_*F_U -> F_U."""
    R = prec.ring
    G = pushforward_fgl(action.hom, R, prec.cap)
    F = universal_fgl(R, prec.cap)
    return verify_homomorphism(action.series(R, prec.cap), G, F)


def omega_pushforward_is_twist(prec: Precision = Precision()) -> tuple[bool, tuple | None]:
    """(h^omega)_*F_U equals omega^-1 F_U(omega x, omega y) coefficient by coefficient."""
    R = prec.ring
    F = universal_fgl(R, prec.cap)
    pushed = F.pushforward(lambda c: H_OMEGA.apply(c, R), R)
    twisted = F.twist(_omega_series(R, prec.cap))
    diff = pushed.F.first_difference(twisted.F)
    return diff is None, diff


@dataclass
class BeaudryReport:
    passed: bool
    lhs: E0Element
    rhs: E0Element
    first_difference: int | None

    def __bool__(self):
        return self.passed


def beaudry_value(t0: E0Element, t1: E0Element) -> E0Element:
    """t0 u1 + 2 t1 / (3 t0)."""
    R = t0.ring
    return t0 * R.u1 + 2 * t1 * R.inverse(3 * t0)


def verify_beaudry_formula(d: StabilizerElementData, t1: E0Element | None = None) -> BeaudryReport:
    t0 = d.t(0)
    t1 = d.t(1) if t1 is None else t1
    lhs = beaudry_value(t0, t1)
    diff = lhs.first_difference(d.h_on_u1)
    return BeaudryReport(diff is None, lhs, d.h_on_u1, diff)


def act_on_euler_class(d: StabilizerElementData) -> TruncatedSeries:
    """g.x = sum_i t_i t0^-1 u^i x^(i+1) with graded coefficients."""
    R = d.ring
    G = GradedRing(R)
    inv0 = R.inverse(d.t(0))
    terms = {}
    for i in range(d.precision.cap - 1):
        c = d.t(i)
        if c:
            terms[(i + 1,)] = GradedElement(c * inv0, i)
    return TruncatedSeries(G, 1, d.precision.cap, terms)


def euler_class_consistent(d: StabilizerElementData) -> bool:
    """h^g(u) * (g.x) in the variable z = ux reproduces g_U(z)."""
    gx = act_on_euler_class(d)
    for (n,), c in gx.terms.items():
        prod = d.h_on_u * c
        if prod.u_power != n or prod.body != d.g_series[n]:
            return False
    return all((n,) in gx.terms for (n,) in d.g_series.terms)


def squared_map_report(action: Action, prec: Precision = Precision()) -> tuple[E0Element, E0Element]:
    """(h(u1), t0) of the action composed with itself."""
    sq = compose_actions(action, action).data(prec)
    return sq.h_on_u1, sq.t(0)


def reduce_series_mod_maximal(g: TruncatedSeries):
    """Reduction of an E0-series modulo (2, u1)."""
    from .rings import F4

    return g.map_coefficients(lambda c: c.reduce(), F4)
