"""Formal group laws from Weierstrass curves and the tools to compare them.

Curves are in the family ``y^2 + a1*x*y + a3*y = x^3``.  Near the point at
infinity we use the chart ``z = x/y, w = 1/y`` in which the curve reads
``w + a1*z*w + a3*w^2 = z^3`` and ``w`` is a power series in ``z``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable

from .errors import AmbiguousSolution, NotIsomorphic
from .series import TruncatedSeries, compose, reverse, solve_implicit_w


@dataclass(frozen=True)
class WeierstrassCurve:
    ring: object
    a1: object
    a3: object

    def w_series(self, cap: int) -> TruncatedSeries:
        return solve_implicit_w(self.ring, self.a1, self.a3, cap)


class FormalGroupLaw:
    """A two-variable series F(x, y) satisfying the group law axioms at its cap."""

    def __init__(self, F: TruncatedSeries, name: str = "F"):
        if F.nvars != 2:
            raise ValueError("a formal group law is a series in two variables")
        self.F = F
        self.name = name

    @property
    def ring(self):
        return self.F.ring

    @property
    def cap(self) -> int:
        return self.F.cap

    def __call__(self, x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
        return compose(self.F, [x, y])

    def __eq__(self, other):
        return isinstance(other, FormalGroupLaw) and self.F == other.F

    def __hash__(self):
        return hash(self.F)

    def __repr__(self):
        return f"FormalGroupLaw({self.name}, cap={self.cap}, ring={self.ring})"

    # -- axioms ---------------------------------------------------------------

    def axiom_failures(self) -> list[str]:
        """Names of violated axioms (empty when all hold at the cap)."""
        ring, cap = self.ring, self.cap
        x = TruncatedSeries.variable(ring, 1, cap)
        zero1 = TruncatedSeries.zero(ring, 1, cap)
        bad = []
        if compose(self.F, [x, zero1]) != x:
            bad.append("left unit")
        if compose(self.F, [zero1, x]) != x:
            bad.append("right unit")
        X = TruncatedSeries.variable(ring, 2, cap, 0)
        Y = TruncatedSeries.variable(ring, 2, cap, 1)
        if compose(self.F, [Y, X]) != self.F:
            bad.append("commutativity")
        a, b, c = (TruncatedSeries.variable(ring, 3, cap, k) for k in range(3))
        F = self.F
        if compose(F, [compose(F, [a, b]), c]) != compose(F, [a, compose(F, [b, c])]):
            bad.append("associativity")
        return bad

    # -- derived series -------------------------------------------------------

    def inversion_series(self) -> TruncatedSeries:
        """The series i(z) with F(z, i(z)) = 0."""
        ring, cap = self.ring, self.cap
        z = TruncatedSeries.variable(ring, 1, cap)
        i = -z
        for _ in range(cap):
            r = compose(self.F, [z, i])
            if not r:
                break
            i = i - r
        return i

    def n_series(self, n: int) -> TruncatedSeries:
        ring, cap = self.ring, self.cap
        z = TruncatedSeries.variable(ring, 1, cap)
        acc = TruncatedSeries.zero(ring, 1, cap)
        for _ in range(abs(n)):
            acc = compose(self.F, [z, acc]) if acc else z
        if n < 0:
            acc = compose(self.inversion_series(), [acc]) if acc else acc
        return acc

    def twist(self, phi: TruncatedSeries) -> "FormalGroupLaw":
        """phi^{-1}(F(phi x, phi y)) for an invertible univariate phi."""
        X = TruncatedSeries.variable(self.ring, 2, self.cap, 0)
        Y = TruncatedSeries.variable(self.ring, 2, self.cap, 1)
        phi2 = compose(phi, [X])
        phi2y = compose(phi, [Y])
        inner = compose(self.F, [phi2, phi2y])
        return FormalGroupLaw(compose(reverse(phi), [inner]), f"{self.name}^phi")

    def pushforward(self, h: Callable, ring=None, name: str | None = None) -> "FormalGroupLaw":
        """Apply a ring map ``h`` to every coefficient."""
        return FormalGroupLaw(self.F.map_coefficients(h, ring), name or f"h_*{self.name}")

    def truncate(self, cap: int) -> "FormalGroupLaw":
        return FormalGroupLaw(self.F.truncate(cap), self.name)


def additive(ring, cap: int) -> FormalGroupLaw:
    X = TruncatedSeries.variable(ring, 2, cap, 0)
    Y = TruncatedSeries.variable(ring, 2, cap, 1)
    return FormalGroupLaw(X + Y, "additive")


def multiplicative(ring, cap: int, v=1) -> FormalGroupLaw:
    """x + y - v*x*y, the formal group of K-theory with Bott class v."""
    X = TruncatedSeries.variable(ring, 2, cap, 0)
    Y = TruncatedSeries.variable(ring, 2, cap, 1)
    return FormalGroupLaw(X + Y - (X * Y).scale(v), "multiplicative")


def complete_homogeneous(ring, cap: int, d: int) -> TruncatedSeries:
    """h_d(x, y) = sum_{i+j=d} x^i y^j."""
    return TruncatedSeries(ring, 2, cap, {(i, d - i): ring.one for i in range(d + 1)})


def flip_coordinate(F: FormalGroupLaw) -> FormalGroupLaw:
    """The same formal group in the coordinate -z: (x, y) -> -F(-x, -y)."""
    X = TruncatedSeries.variable(F.ring, 2, F.cap, 0)
    Y = TruncatedSeries.variable(F.ring, 2, F.cap, 1)
    return FormalGroupLaw(-compose(F.F, [-X, -Y]), F.name)


def fgl_from_curve(curve: WeierstrassCurve, cap: int, coordinate: str = "x/y") -> FormalGroupLaw:
    """Chord construction in the (z, w) chart.

    ``coordinate`` selects z = x/y (default, the chart of the implicit
    w-equation) or z = -x/y.

    The line through (z1, w(z1)) and (z2, w(z2)) has slope
    lambda = (w(z1) - w(z2)) / (z1 - z2) = sum_n A_n h_{n-1}(z1, z2).
    Its third intersection with the curve is negated with
    z -> -z / (1 + a1*z + a3*w).
    """
    if cap < 4:
        raise ValueError("cap must be at least 4")
    ring = curve.ring
    a1, a3 = ring(curve.a1), ring(curve.a3)
    w = curve.w_series(cap + 1)
    z1 = TruncatedSeries.variable(ring, 2, cap, 0)
    z2 = TruncatedSeries.variable(ring, 2, cap, 1)
    lam = TruncatedSeries.zero(ring, 2, cap)
    for n in range(3, cap + 1):
        c = w[n]
        if c:
            lam = lam + complete_homogeneous(ring, cap, n - 1).scale(c)
    w1 = compose(w.truncate(cap), [z1])
    nu = w1 - lam * z1
    z3 = lam.scale(a1) + (lam * lam).scale(a3) - z1 - z2
    w3 = lam * z3 + nu
    F = FormalGroupLaw(-z3 / (1 + z3.scale(a1) + w3.scale(a3)), "F_curve")
    if coordinate == "x/y":
        return F
    if coordinate == "-x/y":
        return flip_coordinate(F)
    raise ValueError(f"unknown coordinate {coordinate!r}")


def curve_inversion(curve: WeierstrassCurve, cap: int) -> TruncatedSeries:
    """Formal negation z -> -z / (1 + a1*z + a3*w(z))."""
    ring = curve.ring
    w = curve.w_series(cap)
    z = TruncatedSeries.variable(ring, 1, cap)
    return -z / (1 + z.scale(curve.a1) + w.scale(curve.a3))


@dataclass
class HomomorphismReport:
    passed: bool
    first_mismatch: tuple | None = None
    cap: int = 0

    @property
    def degree(self) -> int | None:
        return None if self.first_mismatch is None else sum(self.first_mismatch)

    def __bool__(self):
        return self.passed

    def describe(self) -> str:
        if self.passed:
            return f"homomorphism identity holds below degree {self.cap}"
        return f"first mismatch at monomial x^{self.first_mismatch[0]} y^{self.first_mismatch[1]}"


def homomorphism_defect(phi: TruncatedSeries, F: FormalGroupLaw, G: FormalGroupLaw) -> TruncatedSeries:
    """phi(F(x, y)) - G(phi(x), phi(y))."""
    if phi.constant_term():
        raise ValueError("phi must have zero constant term")
    cap = min(phi.cap, F.cap, G.cap)
    ring = F.ring
    X = TruncatedSeries.variable(ring, 2, cap, 0)
    Y = TruncatedSeries.variable(ring, 2, cap, 1)
    lhs = compose(phi, [F.F.truncate(cap)])
    rhs = compose(G.F, [compose(phi, [X]), compose(phi, [Y])])
    return lhs - rhs


def verify_homomorphism(phi: TruncatedSeries, F: FormalGroupLaw, G: FormalGroupLaw) -> HomomorphismReport:
    """Check phi(F(x, y)) = G(phi(x), phi(y)) below the common cap."""
    d = homomorphism_defect(phi, F, G)
    cap = d.cap
    if not d:
        return HomomorphismReport(True, None, cap)
    first = min(d.terms, key=lambda e: (sum(e), e))
    return HomomorphismReport(False, first, cap)


def logarithm(F: FormalGroupLaw) -> TruncatedSeries:
    """log_F with log' = 1 / (dF/dy)(x, 0); needs a Q-algebra."""
    ring, cap = F.ring, F.cap
    x = TruncatedSeries.variable(ring, 1, cap)
    zero = TruncatedSeries.zero(ring, 1, cap)
    dF = F.F.derivative(1)
    dF = TruncatedSeries(ring, 2, cap, dF.terms)
    inv_diff = compose(dF, [x, zero]).inverse()
    return inv_diff.integrate(0).truncate(cap)


def solve_strict_iso(F: FormalGroupLaw, G: FormalGroupLaw) -> TruncatedSeries:
    """The strict isomorphism phi with phi(F(x,y)) = G(phi x, phi y).

    Over a Q-algebra this is exp_G o log_F.  Otherwise coefficients are
    solved degree by degree; over a finite ring underdetermined degrees are
    searched exhaustively and the search must end with exactly one solution.
    """
    cap = min(F.cap, G.cap)
    ring = F.ring
    if F.F == G.F:
        return TruncatedSeries.variable(ring, 1, cap)
    if getattr(ring, "two_invertible", False) and getattr(ring, "is_field", False):
        return compose(reverse(logarithm(G)), [logarithm(F)]).truncate(cap)
    solutions = _search_iso(F.truncate(cap), G.truncate(cap), ring, cap)
    if not solutions:
        raise NotIsomorphic("degree-by-degree system is inconsistent")
    if len(solutions) > 1:
        raise AmbiguousSolution("strict isomorphism is not unique at this cap")
    return solutions[0]


def _search_iso(F, G, ring, cap, limit: int = 2) -> list:
    z = TruncatedSeries.variable(ring, 1, cap)
    found: list = []

    def step(phi: TruncatedSeries, n: int):
        if len(found) >= limit:
            return
        if n >= cap:
            found.append(phi)
            return
        defect = homomorphism_defect(phi, F, G)
        lower = [e for e in defect.terms if sum(e) < n]
        if lower:
            return
        eqs = [(comb(n, e[0]), -defect[e]) for e in ((k, n - k) for k in range(n + 1)) if 0 < e[0] < n]
        eqs += [(0, -defect[e]) for e in ((0, n), (n, 0))]
        cand = None
        for a, b in eqs:
            try:
                x = ring.solve_scalar(ring(a), b)
            except ArithmeticError:
                return
            if x is not None:
                cand = x
                break
        if cand is not None:
            candidates = [cand]
        elif hasattr(ring, "elements"):
            candidates = ring.elements()
        else:
            raise AmbiguousSolution(f"degree {n} coefficient is underdetermined")
        for c in candidates:
            if all(ring(a) * c == b for a, b in eqs):
                step(phi + TruncatedSeries(ring, 1, cap, {(n,): c}), n + 1)

    step(z, 2)
    return found
