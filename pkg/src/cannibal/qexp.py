"""q-expansions of the Weierstrass Phi-function and its relatives.

A QExpansion is a polynomial in q (powers below Q) whose coefficients are
truncated power series in one or more x-variables (total x-degree at most
Dx).  Coefficients are exact rationals or elements of Q(zeta_12).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import ContextMismatch, NotNormalizable
from .rings import CYCLO12, QQ, E0Element, E0Ring
from .series import TruncatedSeries, compose
from .stabilizer import Precision, StabilizerElementData, build_i_action, build_omega_action


class QExpansion:
    """sum_{n < Q} q^n A_n(x_1, ..., x_k) with deg A_n <= Dx."""

    def __init__(self, ring, Q: int, Dx: int, nvars: int = 1, slices=None):
        self.ring, self.Q, self.Dx, self.nvars = ring, Q, Dx, nvars
        zero = TruncatedSeries.zero(ring, nvars, Dx + 1)
        slices = list(slices or [])[:Q]
        self.slices = slices + [zero] * (Q - len(slices))

    # constructors -----------------------------------------------------------

    @classmethod
    def from_x(cls, s: TruncatedSeries, Q: int, Dx: int) -> "QExpansion":
        """A series independent of q."""
        return cls(s.ring, Q, Dx, s.nvars, [s.truncate(Dx + 1)])

    @classmethod
    def from_q(cls, ring, coeffs, Q: int, Dx: int, nvars: int = 1) -> "QExpansion":
        """A series in q alone."""
        return cls(ring, Q, Dx, nvars, [TruncatedSeries.constant(ring, nvars, Dx + 1, c) for c in coeffs])

    @classmethod
    def one(cls, ring, Q: int, Dx: int, nvars: int = 1) -> "QExpansion":
        return cls.from_q(ring, [ring.one], Q, Dx, nvars)

    # access -----------------------------------------------------------------

    def __getitem__(self, key):
        """Coefficient of q^n x^m (m an int or an exponent tuple)."""
        n, m = key
        if n >= self.Q:
            raise IndexError(f"q^{n} is beyond Q = {self.Q}")
        return self.slices[n][m]

    def x_slice(self, m) -> list:
        """The q-series coefficient of x^m."""
        return [s[m] for s in self.slices]

    # arithmetic -------------------------------------------------------------

    def _check(self, other: "QExpansion"):
        if (self.Q, self.Dx, self.nvars) != (other.Q, other.Dx, other.nvars):
            raise ContextMismatch(f"(Q, Dx, n) = {(self.Q, self.Dx, self.nvars)} vs {(other.Q, other.Dx, other.nvars)}")

    def _coerce(self, other):
        if isinstance(other, QExpansion):
            self._check(other)
            return other
        return QExpansion.from_q(self.ring, [self.ring(other)], self.Q, self.Dx, self.nvars)

    def _new(self, slices) -> "QExpansion":
        return QExpansion(self.ring, self.Q, self.Dx, self.nvars, slices)

    def __add__(self, other):
        other = self._coerce(other)
        return self._new([a + b for a, b in zip(self.slices, other.slices)])

    __radd__ = __add__

    def __neg__(self):
        return self._new([-a for a in self.slices])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, QExpansion):
            c = self.ring(other)
            return self._new([a.scale(c) for a in self.slices])
        self._check(other)
        out = [TruncatedSeries.zero(self.ring, self.nvars, self.Dx + 1) for _ in range(self.Q)]
        for i, a in enumerate(self.slices):
            if not a:
                continue
            for j in range(self.Q - i):
                b = other.slices[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return self._new(out)

    __rmul__ = __mul__

    def inverse(self) -> "QExpansion":
        a0 = self.slices[0]
        if not self.ring.is_unit(a0.constant_term()):
            raise NotNormalizable("constant term is not a unit")
        b0 = a0.inverse()
        out = [b0]
        for n in range(1, self.Q):
            acc = TruncatedSeries.zero(self.ring, self.nvars, self.Dx + 1)
            for k in range(1, n + 1):
                if self.slices[k]:
                    acc = acc + self.slices[k] * out[n - k]
            out.append(-(b0 * acc))
        return self._new(out)

    def __truediv__(self, other):
        if not isinstance(other, QExpansion):
            return self * self.ring.inverse(self.ring(other))
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = QExpansion.one(self.ring, self.Q, self.Dx, self.nvars)
        for _ in range(n):
            result = result * self
        return result

    def substitute_x(self, inners: list) -> "QExpansion":
        """Replace the x-variables by series (q-independent)."""
        nv = inners[0].nvars
        return QExpansion(self.ring, self.Q, self.Dx, nv, [compose(s, inners) for s in self.slices])

    def map_x(self, fn) -> "QExpansion":
        return self._new([fn(s) for s in self.slices])

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        return (self.Q, self.Dx, self.nvars) == (other.Q, other.Dx, other.nvars) and self.slices == other.slices

    def first_difference(self, other: "QExpansion"):
        """(q-power, x-exponent) of the first differing coefficient, or None."""
        self._check(other)
        for n, (a, b) in enumerate(zip(self.slices, other.slices)):
            d = a.first_difference(b)
            if d is not None:
                return (n, d)
        return None

    def __repr__(self):
        parts = [f"q^{n}*[{s!r}]" for n, s in enumerate(self.slices) if s]
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Bernoulli numbers and Eisenstein series
# ---------------------------------------------------------------------------


def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2, from sum_{j<=m} C(m+1, j) B_j = 0."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return B[n]


def sigma(k: int, n: int) -> int:
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


NORMALIZATIONS = {
    "-B/(4k)": lambda k: -bernoulli(2 * k) / (4 * k),
    "+B/(4k)": lambda k: bernoulli(2 * k) / (4 * k),
}
NORMALIZATION = "-B/(4k)"


@dataclass(frozen=True)
class EisensteinSeries:
    weight: int
    coefficients: tuple

    def __getitem__(self, n: int) -> Fraction:
        return self.coefficients[n]


def eisenstein(k: int, Q: int, normalization: str = NORMALIZATION) -> EisensteinSeries:
    """G_{2k} = c_k + sum_{n>=1} sigma_{2k-1}(n) q^n."""
    if k < 1:
        raise ValueError("k must be at least 1")
    c = NORMALIZATIONS[normalization](k)
    return EisensteinSeries(2 * k, (c,) + tuple(Fraction(sigma(2 * k - 1, n)) for n in range(1, Q)))


# ---------------------------------------------------------------------------
# Phi
# ---------------------------------------------------------------------------


def _exp_x(ring, Dx: int, scale=Fraction(1)) -> TruncatedSeries:
    """exp(scale * x) up to x^Dx."""
    return TruncatedSeries.univariate(ring, Dx + 1, [ring(Fraction(scale) ** m / factorial(m)) for m in range(Dx + 1)])


def _phi_product_shifted(ring, Q: int, Dx: int, c) -> QExpansion:
    """Phi(x + a) in product form where c = e^{a/2} is a root of unity."""
    c = ring(c)
    c_inv = ring.inverse(c)
    c2, c2_inv = c * c, c_inv * c_inv
    ex = QExpansion.from_x(_exp_x(ring, Dx), Q, Dx)
    emx = QExpansion.from_x(_exp_x(ring, Dx, -1), Q, Dx)
    ehalf = QExpansion.from_x(_exp_x(ring, Dx, Fraction(1, 2)), Q, Dx)
    emhalf = QExpansion.from_x(_exp_x(ring, Dx, Fraction(-1, 2)), Q, Dx)
    result = ehalf * c - emhalf * c_inv
    for n in range(1, Q):
        qn = QExpansion.from_q(ring, [ring.zero] * n + [ring.one], Q, Dx)
        num = (1 - qn * ex * c2) * (1 - qn * emx * c2_inv)
        den = (1 - qn) * (1 - qn)
        result = result * num / den
    return result


def phi_product(Q: int = 6, Dx: int = 9, ring=QQ) -> QExpansion:
    """(e^{x/2} - e^{-x/2}) prod_n (1 - q^n e^x)(1 - q^n e^-x) / (1 - q^n)^2."""
    return _phi_product_shifted(ring, Q, Dx, ring.one)


def phi_exponential(Q: int = 6, Dx: int = 9, ring=QQ, normalization: str = NORMALIZATION) -> QExpansion:
    """x exp(-sum_k 2/(2k)! G_2k x^2k)."""
    expo = QExpansion(ring, Q, Dx)
    for k in range(1, Dx // 2 + 1):
        G = eisenstein(k, Q, normalization)
        coeff = Fraction(-2, factorial(2 * k))
        slices = [TruncatedSeries(ring, 1, Dx + 1, {(2 * k,): ring(coeff * G[n])}) for n in range(Q)]
        expo = expo + QExpansion(ring, Q, Dx, 1, slices)
    # exp of a series with no x^0 part: finitely many powers
    term = QExpansion.one(ring, Q, Dx)
    total = QExpansion.one(ring, Q, Dx)
    for m in range(1, Dx // 2 + 1):
        term = term * expo * Fraction(1, m)
        total = total + term
    x = QExpansion.from_x(TruncatedSeries.variable(ring, 1, Dx + 1), Q, Dx)
    return x * total


@dataclass
class PhiComparison:
    normalization: str
    first_difference: tuple | None

    @property
    def passed(self) -> bool:
        return self.first_difference is None


def compare_phi(Q: int = 6, Dx: int = 9) -> PhiComparison:
    """phi_product against phi_exponential.  A mismatch at q^0 or q^1 reports
    every candidate normalization of the Eisenstein constant term."""
    prod = phi_product(Q, Dx)
    diff = prod.first_difference(phi_exponential(Q, Dx))
    if diff is not None and diff[0] <= 1:
        alternatives = {
            name: prod.first_difference(phi_exponential(Q, Dx, normalization=name)) for name in NORMALIZATIONS
        }
        raise AssertionError(f"Eisenstein normalization mismatch at {diff}; candidates: {alternatives}")
    return PhiComparison(NORMALIZATION, diff)


def negate_x(f: QExpansion) -> QExpansion:
    return f.map_x(lambda s: s.map_monomials(lambda m, c: c * (-1) ** sum(m)))


def is_odd_in_x(f: QExpansion) -> bool:
    return negate_x(f) == -f


def is_even_in_x(f: QExpansion) -> bool:
    return negate_x(f) == f


# ---------------------------------------------------------------------------
# beta and 2-structures
# ---------------------------------------------------------------------------


def beta_series(Q: int = 6, Dx: int = 9) -> QExpansion:
    """Phi(x - omega) / Phi(-omega) with omega = 2 pi i / 3.

    e^{(x - omega)/2} = zeta_6^-1 e^{x/2}, so the shift enters through the
    root of unity c = zeta_6^-1.
    """
    R = CYCLO12
    c = R.root_of_unity(-1, 6)
    shifted = _phi_product_shifted(R, Q, Dx, c)
    at_zero = QExpansion.from_q(R, [s[0] for s in shifted.slices], Q, Dx)
    return shifted / at_zero


def x_variables(f: QExpansion, nvars: int) -> list:
    return [TruncatedSeries.variable(f.ring, nvars, f.Dx + 1, k) for k in range(nvars)]


def two_structure(g: QExpansion) -> QExpansion:
    """delta(g)(x, y) = g(x + y) / (g(x) g(y))."""
    if g.nvars != 1:
        raise ValueError("two_structure takes a series in one x-variable")
    if not g.ring.is_unit(g[0, 0]):
        raise NotNormalizable("g(0) is not a unit at q^0")
    x, y = x_variables(g, 2)
    return g.substitute_x([x + y]) / (g.substitute_x([x]) * g.substitute_x([y]))


def swap_xy(f: QExpansion) -> QExpansion:
    x, y = x_variables(f, 2)
    return f.substitute_x([y, x])


def cocycle_holds(g: QExpansion) -> bool:
    """delta(x, y) delta(x + y, z) = delta(x, y + z) delta(y, z)."""
    d = two_structure(g)
    x, y, z = x_variables(g, 3)
    lhs = d.substitute_x([x, y]) * d.substitute_x([x + y, z])
    rhs = d.substitute_x([x, y + z]) * d.substitute_x([y, z])
    return lhs == rhs


# ---------------------------------------------------------------------------
# leading term of q_0^g
# ---------------------------------------------------------------------------


@dataclass
class Q0LeadingReport:
    name: str
    middle: E0Element
    displayed: E0Element
    via_h: E0Element
    denominator: E0Element

    @property
    def passed(self) -> bool:
        return self.middle == self.displayed == self.via_h

    @property
    def trivial(self) -> bool:
        """Numerator equals denominator: q_0^g = 1 to this order."""
        return self.displayed == self.denominator


def q0_leading_term_check(d: StabilizerElementData, det: int) -> Q0LeadingReport:
    """Coefficient of -u^3 x0 x1 x2 in the numerator of f^* q_0^g, three ways.

    middle:    3((t0 u1 + 2 t1/(3 t0))^3 - 1) t0^3
    displayed: 3((t0^2 u1 + (2/3) t1)^3 - t0^3)
    via_h:     3(h(u1)^3 - 1) t0^3
    """
    R: E0Ring = d.ring
    u1 = R.u1
    t0, t1 = d.t(0), d.t(1)
    third = R.inverse(R(3))
    middle = 3 * ((t0 * u1 + 2 * t1 * R.inverse(3 * t0)) ** 3 - 1) * t0 ** 3
    displayed = 3 * ((t0 * t0 * u1 + 2 * third * t1) ** 3 - t0 ** 3)
    via_h = 3 * (d.h_on_u1 ** 3 - 1) * t0 ** 3
    denominator = det * 3 * (u1 ** 3 - 1)
    return Q0LeadingReport(d.name, middle, displayed, via_h, denominator)


def q0_leading_reports(prec: Precision = Precision(10, 6, 4)) -> list:
    return [
        q0_leading_term_check(build_omega_action(prec), 1),
        q0_leading_term_check(build_i_action(prec), 1),
    ]
