"""Cannibalistic classes.

K-theory side (exact over Q, Bott class v = 1): for a line bundle L with
Euler class x = 1 - L,

    theta^q(L) = psi^q(x) / x = [q](x) / (q x) = (1 - (1 - x)^q) / (q x).

The real class of L^2 is computed three ways: the closed formula of Adams,
the spin Euler class e = x - xbar with xbar = [-1](x), and the quotient over
the SU-bundle (1-L)^2 - (1-L)(1-Lbar).

E-theory side: theta_C^g(L) = (g.x)/x from the stabilizer data, and the
exponent identities relating theta^g, q_0^g and r_U, checked in a free
abelian group on opaque symbols.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .binomial import PadicExponent, exact_binomial, padic_binomial, require_unit
from .errors import NotAUnit
from .fgl import FormalGroupLaw, multiplicative
from .rings import QQ, IntegersMod2
from .series import TruncatedSeries, compose
from .stabilizer import StabilizerElementData, act_on_euler_class


def divide_by_x(s: TruncatedSeries, k: int = 1) -> TruncatedSeries:
    """s / x^k for a univariate series divisible by x^k."""
    out = {}
    for (n,), c in s.terms.items():
        if n < k:
            raise ValueError(f"series is not divisible by x^{k}")
        out[(n - k,)] = c
    return TruncatedSeries(s.ring, 1, s.cap - k, out)


def exact_quotient(num: TruncatedSeries, den: TruncatedSeries) -> TruncatedSeries:
    """num / den when den = x^v * unit and num is divisible by x^v."""
    v = den.valuation()
    return divide_by_x(num, v) * divide_by_x(den, v).inverse()


# ---------------------------------------------------------------------------
# K-theory
# ---------------------------------------------------------------------------


def theta_k(q, cap: int) -> TruncatedSeries:
    """theta^q(L) over Q as a series in x (v = 1)."""
    q = Fraction(q)
    if q == 0:
        raise NotAUnit("q must be nonzero")
    # coefficient of x^m is (-1)^m C(q, m+1) / q
    return TruncatedSeries.univariate(
        QQ, cap, [(-1) ** m * Fraction(exact_binomial(q, m + 1)) / q for m in range(cap)]
    )


def theta_k_2adic(q: PadicExponent, cap: int) -> TruncatedSeries:
    """theta^q(L) with q a 2-adic unit; coefficients C(q, m+1)/q = C(q-1, m)/(m+1)."""
    require_unit(q)
    coeffs, prec = [], q.N
    for m in range(cap):
        c, k = padic_binomial(q, m + 1)
        coeffs.append(c)
        prec = min(prec, k)
    R = IntegersMod2(prec)
    inv_q = pow(q.value, -1, 1 << prec)
    return TruncatedSeries.univariate(R, cap, [(-1) ** m * c * inv_q for m, c in enumerate(coeffs)])


def adams_stable_psi(F: FormalGroupLaw, q: int, x: TruncatedSeries) -> TruncatedSeries:
    """psi^q on a degree-two class: [q]_F(x) / q."""
    return compose(F.n_series(q), [x]).scale(Fraction(1, q))


def adams_closed_formula(q, cap: int) -> TruncatedSeries:
    """((1-x)^-q - (1-x)^q) / (q ((1-x)^-1 - (1-x)))."""
    x = TruncatedSeries.variable(QQ, 1, cap + 1)
    y = 1 - x
    num = y ** (-q) - y ** q
    den = (y.inverse() - y).scale(q)
    return exact_quotient(num, den).truncate(cap)


def euler_class_route(q: int, cap: int) -> TruncatedSeries:
    """theta^q(L^2) = psi^q(e) / e with e = x - [-1](x) for F = x + y - xy."""
    F = multiplicative(QQ, cap + 1)
    x = TruncatedSeries.variable(QQ, 1, cap + 1)
    xbar = F.n_series(-1)
    e = x - xbar
    psi_e = adams_stable_psi(F, q, x) - adams_stable_psi(F, q, xbar)
    return exact_quotient(psi_e, e).truncate(cap)


def theta_of_line_power(q: int, k: int, cap: int) -> TruncatedSeries:
    """theta^q(L^k) = theta^q evaluated at the Euler class [k](x) of L^k."""
    F = multiplicative(QQ, cap + 1)
    xk = F.n_series(k)
    psi = adams_stable_psi(F, q, xk)
    return exact_quotient(psi, xk).truncate(cap)


def virtual_identity_holds() -> bool:
    """(1-L)^2 - (1-L)(1-Lbar) = L^2 - 1 + Lbar - L as Laurent polynomials in L."""
    def mul(a: Counter, b: Counter) -> Counter:
        out = Counter()
        for i, x in a.items():
            for j, y in b.items():
                out[i + j] += x * y
        return out

    one_minus_L = Counter({0: 1, 1: -1})
    one_minus_Lbar = Counter({0: 1, -1: -1})
    lhs = Counter(mul(one_minus_L, one_minus_L))
    lhs.subtract(mul(one_minus_L, one_minus_Lbar))
    rhs = Counter({2: 1, 0: -1, -1: 1, 1: -1})
    clean = lambda c: {k: v for k, v in c.items() if v}
    return clean(lhs) == clean(rhs)


def theta_u_virtual(q: int, bundle: dict, cap: int) -> TruncatedSeries:
    """Complex theta^q of a virtual sum  sum_k n_k L^k  (trivial summands give 1)."""
    result = TruncatedSeries.constant(QQ, 1, cap)
    for k, n in bundle.items():
        if k == 0 or n == 0:
            continue
        t = theta_of_line_power(q, k, cap)
        result = result * (t ** n)
    return result


def su_quotient_route(q: int, cap: int) -> TruncatedSeries:
    """theta_U((1-L)^2) / theta_U((1-L)(1-Lbar))."""
    square = {0: 1, 1: -2, 2: 1}            # (1-L)^2
    mixed = {0: 2, 1: -1, -1: -1}           # (1-L)(1-Lbar)
    return theta_u_virtual(q, square, cap) * theta_u_virtual(q, mixed, cap).inverse()


@dataclass
class RealSquareReport:
    q: int
    displayed: TruncatedSeries
    euler: TruncatedSeries
    su: TruncatedSeries

    @property
    def passed(self) -> bool:
        return self.displayed == self.euler == self.su and (self.q != 1 or self.displayed == 1)


def verify_real_square_theta(q: int, cap: int = 8) -> RealSquareReport:
    return RealSquareReport(q, adams_closed_formula(q, cap), euler_class_route(q, cap), su_quotient_route(q, cap))


# ---------------------------------------------------------------------------
# E-theory
# ---------------------------------------------------------------------------


def theta_complex_e(d: StabilizerElementData) -> TruncatedSeries:
    """theta_C^g(L) = (g.x)/x = sum_i t_i t0^-1 u^i x^i."""
    gx = act_on_euler_class(d)
    return divide_by_x(gx)


def theta_complex_e_sum(d: StabilizerElementData, nlines: int) -> TruncatedSeries:
    """theta_C^g(L_1 + ... + L_n) as a series in n Euler classes."""
    th = theta_complex_e(d)
    G = th.ring
    out = TruncatedSeries.constant(G, nlines, th.cap, G.one)
    for k in range(nlines):
        xk = TruncatedSeries.variable(G, nlines, th.cap, k)
        out = out * compose(th, [xk])
    return out


# ---------------------------------------------------------------------------
# exponent bookkeeping
# ---------------------------------------------------------------------------


class Monomial:
    """Element of the free abelian group on opaque symbols, written multiplicatively."""

    def __init__(self, exps: dict | None = None):
        self.exps = {k: v for k, v in (exps or {}).items() if v}

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> "Monomial":
        return cls({name: power})

    def __mul__(self, other: "Monomial") -> "Monomial":
        out = Counter(self.exps)
        out.update(other.exps)
        return Monomial(dict(out))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return self * other ** -1

    def __pow__(self, n: int) -> "Monomial":
        return Monomial({k: v * n for k, v in self.exps.items()})

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps

    def __hash__(self):
        return hash(frozenset(self.exps.items()))

    def exponent(self, name: str) -> int:
        return self.exps.get(name, 0)

    def __repr__(self):
        if not self.exps:
            return "1"
        return "*".join(f"{k}^{v}" if v != 1 else k for k, v in sorted(self.exps.items()))


ONE = Monomial()


def psi_on(g: str, det: int, m: Monomial) -> Monomial:
    """psi^g on products of r_U and the Thom class x.

    psi^g(r_U) = q0^g r_U^det and psi^g(x) = theta_C^g x; psi^g is
    multiplicative, and other symbols become psi^g-decorated symbols.
    """
    out = ONE
    for name, e in m.exps.items():
        if name == "r_U":
            image = Monomial({f"q0[{g}]": 1, "r_U": det})
        elif name == "x":
            image = Monomial({f"thetaC[{g}]": 1, "x": 1})
        elif g == "id":
            image = Monomial.symbol(name)
        else:
            image = Monomial.symbol(f"psi[{g}]({name})")
        out = out * image ** e
    return out


@dataclass
class ExponentReport:
    passed: bool
    computed: Monomial
    claimed: Monomial


def verify_cannibal_exponent_identity(g: str, det: int) -> ExponentReport:
    """theta^g(re) = psi^g(r_U x)/(r_U x) equals q0^g r_U^(det-1) theta_C^g."""
    thom = Monomial({"r_U": 1, "x": 1})
    computed = psi_on(g, det, thom) / thom
    if g == "id":
        claimed = ONE
        computed = Monomial({k: v for k, v in computed.exps.items() if not k.endswith("[id]")})
    else:
        claimed = Monomial({f"q0[{g}]": 1, "r_U": det - 1, f"thetaC[{g}]": 1})
    return ExponentReport(computed == claimed, computed, claimed)


def verify_real_square_identity(g: str, det: int) -> ExponentReport:
    """(theta^g)^2 = c*(theta^g(re)) = c*(q0^g theta_C^g) r^(det-1) with r = c* r_U."""
    theta_re = psi_on(g, det, Monomial({"r_U": 1, "x": 1})) / Monomial({"r_U": 1, "x": 1})
    pulled = Monomial({f"c*{k}": v for k, v in theta_re.exps.items()})
    computed = Monomial({("r" if k == "c*r_U" else k): v for k, v in pulled.exps.items()})
    claimed = Monomial({f"c*q0[{g}]": 1, f"c*thetaC[{g}]": 1, "r": det - 1})
    return ExponentReport(computed == claimed, computed, claimed)


def verify_composition_law(g: str, nu: str) -> ExponentReport:
    """theta^(g nu) = psi^nu(theta^g) theta^nu, from psi^(g nu) = psi^nu o psi^g on Thom classes.

    With psi^h(tau) = theta^h tau:
    psi^nu(psi^g(tau)) = psi^nu(theta^g) psi^nu(tau) = psi^nu(theta^g) theta^nu tau.
    """
    tau = Monomial.symbol("tau")

    def act(h: str, m: Monomial) -> Monomial:
        out = ONE
        for name, e in m.exps.items():
            image = Monomial({f"theta[{h}]": 1, "tau": 1}) if name == "tau" else Monomial.symbol(f"psi[{h}]({name})")
            out = out * image ** e
        return out

    computed = act(nu, act(g, tau)) / tau
    claimed = Monomial({f"psi[{nu}](theta[{g}])": 1, f"theta[{nu}]": 1})
    return ExponentReport(computed == claimed, computed, claimed)
