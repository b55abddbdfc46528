"""2-adic binomial series B_alpha(t) = sum C(alpha, n) t^n.

An exponent alpha is known modulo 2^N.  Dividing by n! costs v2(n!) bits, so
C(alpha, n) is only determined modulo 2^(N - v2(n!)).  Every series below
records the precision it actually certifies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import NotAUnit, NotOdd, PrecisionExhausted
from .rings import QQ, IntegersMod2
from .series import TruncatedSeries


def v2(n: int) -> int:
    if n == 0:
        raise ValueError("v2(0) is infinite")
    return (n & -n).bit_length() - 1


def v2_factorial(n: int) -> int:
    """Legendre: v2(n!) = n - popcount(n)."""
    return n - bin(n).count("1")


@dataclass(frozen=True)
class PadicExponent:
    """alpha in Z_2 known modulo 2^N."""

    value: int
    N: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % (1 << self.N))

    @property
    def signed(self) -> int:
        half = 1 << (self.N - 1)
        return self.value - (1 << self.N) if self.value >= half else self.value

    @property
    def is_unit(self) -> bool:
        return bool(self.value & 1)


def exact_binomial(a: int | Fraction, n: int):
    """C(a, n) for any integer or rational a."""
    num = 1
    for k in range(n):
        num *= a - k
    if isinstance(a, Fraction):
        return num / factorial(n)
    return num // factorial(n)


def binomial_precision(N: int, n: int) -> int:
    return N - v2_factorial(n)


def padic_binomial(alpha: PadicExponent, n: int) -> tuple[int, int]:
    """(C(alpha, n) mod 2^k, k) with k = N - v2(n!)."""
    k = binomial_precision(alpha.N, n)
    if k < 1:
        raise PrecisionExhausted(f"C(alpha, {n}) needs more than {alpha.N} bits")
    return exact_binomial(alpha.signed, n) % (1 << k), k


@dataclass(frozen=True)
class BinomialSeries:
    alpha: PadicExponent
    series: TruncatedSeries

    @property
    def precision(self) -> int:
        return self.series.ring.N


def binomial_series(alpha: PadicExponent, cap: int) -> BinomialSeries:
    """B_alpha over Z/2^N' with N' = N - v2((cap-1)!)."""
    Np = binomial_precision(alpha.N, cap - 1)
    if Np < 1:
        raise PrecisionExhausted(f"cap {cap} needs more than {alpha.N} bits of alpha")
    R = IntegersMod2(Np)
    coeffs = [exact_binomial(alpha.signed, n) for n in range(cap)]
    return BinomialSeries(alpha, TruncatedSeries.univariate(R, cap, coeffs))


def binomial_series_exact(a, cap: int) -> TruncatedSeries:
    """B_a over Q for an integer or rational exponent."""
    return TruncatedSeries.univariate(QQ, cap, [Fraction(exact_binomial(a, n)) for n in range(cap)])


def functional_equation_defect(B: TruncatedSeries) -> TruncatedSeries:
    """B(t1) B(t2) - B(t1 + t2 + t1 t2) in two variables."""
    from .series import compose

    ring, cap = B.ring, B.cap
    t1 = TruncatedSeries.variable(ring, 2, cap, 0)
    t2 = TruncatedSeries.variable(ring, 2, cap, 1)
    lhs = compose(B, [t1]) * compose(B, [t2])
    rhs = compose(B, [t1 + t2 + t1 * t2])
    return lhs - rhs


def functional_equation_holds(B: TruncatedSeries) -> bool:
    return not functional_equation_defect(B)


@dataclass
class UniquenessReport:
    unique: bool
    series: TruncatedSeries | None
    underdetermined_degree: int | None = None


def unique_solution_check(lead, cap: int, ring=QQ) -> UniquenessReport:
    """Solve q(t1)q(t2) = q(t1+t2+t1t2) with q = 1 + lead*t + ... degree by degree.

    The coefficient of t1^(n-1) t2 forces n q_n = (lead - n + 1) q_(n-1).
    The whole equation is then re-checked on every monomial below the cap.
    """
    lead = ring(lead)
    coeffs = [ring.one, lead]
    for n in range(2, cap):
        rhs = (lead - (n - 1)) * coeffs[-1]
        try:
            q = ring.solve_scalar(ring(n), rhs)
        except ArithmeticError:
            return UniquenessReport(False, None, n)
        if q is None:
            return UniquenessReport(False, None, n)
        coeffs.append(q)
    series = TruncatedSeries(ring, 1, cap, {(n,): c for n, c in enumerate(coeffs[:cap])})
    if functional_equation_defect(series):
        return UniquenessReport(False, series, None)
    return UniquenessReport(True, series)


def binomial_mod2_lucas(alpha: PadicExponent, cap: int) -> list[int]:
    """(1+t)^alpha mod 2 as prod over bits of (1 + t^(2^i))."""
    coeffs = [1] + [0] * (cap - 1)
    for i in range(alpha.N):
        if (alpha.value >> i) & 1:
            step = 1 << i
            if step >= cap:
                break
            coeffs = [(coeffs[n] + (coeffs[n - step] if n >= step else 0)) & 1 for n in range(cap)]
    return coeffs


@dataclass
class SeparationReport:
    first_difference: int | None
    expected: int

    @property
    def passed(self) -> bool:
        return self.first_difference == self.expected


def mod_p_separation(alpha: PadicExponent, beta: PadicExponent, s: int) -> SeparationReport:
    """If alpha = beta mod 2^s but not mod 2^(s+1), B_alpha and B_beta first differ
    mod 2 in degree 2^s."""
    N = min(alpha.N, beta.N)
    diff = (alpha.value - beta.value) % (1 << N)
    if diff and (v2(diff) != s):
        raise ValueError(f"alpha - beta has valuation {v2(diff)}, not {s}")
    cap = (1 << s) + 1
    if N < cap.bit_length():
        raise PrecisionExhausted("need more bits to read binomials mod 2")
    a = binomial_mod2_lucas(alpha, cap)
    b = binomial_mod2_lucas(beta, cap)
    # cross-check against exact binomials reduced mod 2
    for x, ser in ((alpha, a), (beta, b)):
        exact = [exact_binomial(x.signed, n) & 1 for n in range(cap)]
        if exact != ser:
            raise AssertionError("Lucas expansion disagrees with exact binomials")
    first = next((n for n in range(cap) if a[n] != b[n]), None)
    return SeparationReport(first, (1 << s) if diff else None)


@dataclass
class FinalTheoremReport:
    d: int
    coefficients: list[int]
    expected: list[int]
    precision: int

    @property
    def passed(self) -> bool:
        return self.coefficients == self.expected


def final_theorem_coefficients(d: int, cap: int = 11, N: int = 20) -> FinalTheoremReport:
    """Coefficients of (1+r)^(d-1) ((1+r)^(2d) - 1), against C(3d-1,k) - C(d-1,k)."""
    if d % 2 == 0:
        raise NotOdd(f"determinant {d} is even")
    Bd = binomial_series(PadicExponent(d - 1, N), cap)
    B2d = binomial_series(PadicExponent(2 * d, N), cap)
    prod = Bd.series * (B2d.series - 1)
    Np = Bd.precision
    mod = 1 << Np
    got = [prod[k].value for k in range(cap)]
    want = [(exact_binomial(3 * d - 1, k) - exact_binomial(d - 1, k)) % mod for k in range(cap)]
    return FinalTheoremReport(d, got, want, Np)


def require_unit(q: PadicExponent):
    if not q.is_unit:
        raise NotAUnit(f"{q.signed} is not a 2-adic unit")
