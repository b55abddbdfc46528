"""Truncated multivariate power series over an abstract coefficient ring.

A series in ``nvars`` variables is stored sparsely as a dict from exponent
tuples to nonzero coefficients; every monomial of total degree >= ``cap`` is
discarded.  The coefficient ring is any object following the protocol in
:mod:`cannibal.rings`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import (
    BadLeadingTerm,
    ContextMismatch,
    NonzeroConstantTerm,
    NotAUnit,
    NotReversible,
    TwoNotInvertible,
)


class TruncatedSeries:
    __slots__ = ("ring", "nvars", "cap", "terms")

    def __init__(self, ring, nvars: int, cap: int, terms: dict | None = None):
        self.ring = ring
        self.nvars = nvars
        self.cap = cap
        clean = {}
        if terms:
            for e, c in terms.items():
                if sum(e) < cap and c:
                    clean[e] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, ring, nvars, cap, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.nvars = nvars
        obj.cap = cap
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, ring, nvars: int, cap: int) -> "TruncatedSeries":
        return cls._raw(ring, nvars, cap, {})

    @classmethod
    def constant(cls, ring, nvars: int, cap: int, value=1) -> "TruncatedSeries":
        return cls(ring, nvars, cap, {(0,) * nvars: ring(value)})

    @classmethod
    def variable(cls, ring, nvars: int, cap: int, index: int = 0) -> "TruncatedSeries":
        e = [0] * nvars
        e[index] = 1
        return cls(ring, nvars, cap, {tuple(e): ring.one})

    @classmethod
    def univariate(cls, ring, cap: int, coeffs: Iterable) -> "TruncatedSeries":
        """Build sum c_n z^n from a coefficient sequence."""
        return cls(ring, 1, cap, {(n,): ring(c) for n, c in enumerate(coeffs) if n < cap})

    # -- access -------------------------------------------------------------

    def __getitem__(self, exps) -> object:
        if isinstance(exps, int):
            exps = (exps,)
        return self.terms.get(tuple(exps), self.ring.zero)

    def coefficient(self, *exps):
        return self[exps]

    def coefficients(self) -> list:
        """Dense coefficient list of a univariate series, degrees 0..cap-1."""
        self._require_univariate()
        return [self.terms.get((n,), self.ring.zero) for n in range(self.cap)]

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, self.ring.zero)

    def valuation(self) -> int | None:
        """Lowest total degree carrying a nonzero term, or None for zero."""
        return min((sum(e) for e in self.terms), default=None)

    def homogeneous_part(self, d: int) -> dict:
        return {e: c for e, c in self.terms.items() if sum(e) == d}

    def _require_univariate(self):
        if self.nvars != 1:
            raise ValueError(f"expected a univariate series, got {self.nvars} variables")

    def _check(self, other: "TruncatedSeries"):
        if self.nvars != other.nvars:
            raise ContextMismatch(f"{self.nvars} vs {other.nvars} variables")
        if self.ring != other.ring:
            raise ContextMismatch(f"{self.ring} vs {other.ring}")

    def _lift(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        return TruncatedSeries.constant(self.ring, self.nvars, self.cap, other)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        cap = min(self.cap, other.cap)
        out = {e: c for e, c in self.terms.items() if sum(e) < cap}
        for e, c in other.terms.items():
            if sum(e) >= cap:
                continue
            v = out.get(e)
            v = c if v is None else v + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return TruncatedSeries._raw(self.ring, self.nvars, cap, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw(self.ring, self.nvars, self.cap, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "TruncatedSeries":
        c = self.ring(c)
        out = {}
        for e, v in self.terms.items():
            p = v * c
            if p:
                out[e] = p
        return TruncatedSeries._raw(self.ring, self.nvars, self.cap, out)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        cap = min(self.cap, other.cap)
        a = [(e, sum(e), c) for e, c in self.terms.items()]
        b = sorted(((e, sum(e), c) for e, c in other.terms.items()), key=lambda t: t[1])
        out: dict = {}
        n = self.nvars
        for ea, da, ca in a:
            lim = cap - da
            for eb, db, cb in b:
                if db >= lim:
                    break
                e = tuple(ea[k] + eb[k] for k in range(n)) if n > 1 else (ea[0] + eb[0],)
                p = ca * cb
                v = out.get(e)
                out[e] = p if v is None else v + p
        return TruncatedSeries._raw(self.ring, n, cap, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncatedSeries.constant(self.ring, self.nvars, self.cap)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; the constant term must be a unit."""
        c0 = self.constant_term()
        if not self.ring.is_unit(c0):
            raise NotAUnit(f"constant term {c0!r} is not a unit")
        inv0 = self.ring.inverse(c0)
        # 1/(c0(1 + m)) = inv0 * sum (-m)^k with m of positive valuation
        m = self.scale(inv0) - 1
        result = TruncatedSeries.constant(self.ring, self.nvars, self.cap)
        for _ in range(self.cap):
            result = 1 - m * result
        return result.scale(inv0)

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return self.scale(self.ring.inverse(self.ring(other)))

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = self._lift(other)
        if self.nvars != other.nvars:
            return False
        return self.first_difference(other) is None

    def __hash__(self):
        return hash((self.nvars, self.cap, frozenset(self.terms.items())))

    def first_difference(self, other: "TruncatedSeries"):
        """Smallest (by total degree) monomial where two series differ, else None."""
        cap = min(self.cap, other.cap)
        keys = {e for e in self.terms if sum(e) < cap} | {e for e in other.terms if sum(e) < cap}
        for e in sorted(keys, key=lambda t: (sum(t), t)):
            a = self.terms.get(e)
            b = other.terms.get(e)
            if a is None or b is None or not (a == b):
                if a is None and b is not None and not b:
                    continue
                if b is None and a is not None and not a:
                    continue
                return e
        return None

    def truncate(self, cap: int) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, self.nvars, min(cap, self.cap), self.terms)

    def map_coefficients(self, fn: Callable, ring=None) -> "TruncatedSeries":
        """Apply ``fn`` to every coefficient, landing in ``ring`` (default: same ring)."""
        ring = self.ring if ring is None else ring
        return TruncatedSeries(ring, self.nvars, self.cap, {e: fn(c) for e, c in self.terms.items()})

    def map_monomials(self, fn: Callable) -> "TruncatedSeries":
        """Replace each coefficient c of x^e by fn(e, c)."""
        return TruncatedSeries(self.ring, self.nvars, self.cap, {e: fn(e, c) for e, c in self.terms.items()})

    def derivative(self, index: int = 0) -> "TruncatedSeries":
        out = {}
        for e, c in self.terms.items():
            k = e[index]
            if k:
                f = list(e)
                f[index] = k - 1
                v = c * k
                if v:
                    out[tuple(f)] = v
        return TruncatedSeries._raw(self.ring, self.nvars, self.cap - 1, out)

    def integrate(self, index: int = 0) -> "TruncatedSeries":
        out = {}
        for e, c in self.terms.items():
            f = list(e)
            f[index] += 1
            out[tuple(f)] = c * self.ring.inverse(self.ring(e[index] + 1))
        return TruncatedSeries(self.ring, self.nvars, self.cap + 1, out)

    def exp(self) -> "TruncatedSeries":
        """exp of a series with zero constant term (needs a Q-algebra)."""
        if self.constant_term():
            raise NonzeroConstantTerm("exp needs zero constant term")
        result = TruncatedSeries.constant(self.ring, self.nvars, self.cap)
        term = result
        for n in range(1, self.cap):
            term = (term * self).scale(Fraction(1, n))
            result = result + term
        return result

    def log(self) -> "TruncatedSeries":
        """log of a series with constant term 1 (needs a Q-algebra)."""
        if self.constant_term() != 1:
            raise BadLeadingTerm("log needs constant term 1")
        m = self - 1
        result = TruncatedSeries.zero(self.ring, self.nvars, self.cap)
        power = TruncatedSeries.constant(self.ring, self.nvars, self.cap)
        for n in range(1, self.cap):
            power = power * m
            result = result + power.scale(Fraction((-1) ** (n + 1), n))
        return result

    def __repr__(self):
        if not self.terms:
            return f"O(deg {self.cap})"
        names = "xyzvw" if self.nvars > 1 else "z"
        parts = []
        for e in sorted(self.terms, key=lambda t: (sum(t), t)):
            mono = "*".join(
                (names[i] if i < len(names) else f"x{i}") + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(e)
                if k
            )
            c = self.terms[e]
            cs = str(c) if isinstance(c, Fraction) else repr(c)
            parts.append(f"({cs})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) + f" + O(deg {self.cap})"


def compose(outer: TruncatedSeries, inners: Sequence[TruncatedSeries]) -> TruncatedSeries:
    """Substitute ``inners[k]`` for variable k of ``outer``.

    All inners must share a ring, variable count and have zero constant term.
    The result lives at the smallest cap involved.
    """
    if len(inners) != outer.nvars:
        raise ValueError(f"outer has {outer.nvars} variables, got {len(inners)} inner series")
    if not inners:
        return outer
    for s in inners:
        if s.constant_term():
            raise NonzeroConstantTerm("inner series must have zero constant term")
        if s.ring != outer.ring:
            raise ContextMismatch(f"{s.ring} vs {outer.ring}")
    target_vars = inners[0].nvars
    cap = min([outer.cap] + [s.cap for s in inners])
    return _compose(outer.terms, inners, outer.ring, target_vars, cap)


def _compose(terms: dict, inners, ring, target_vars, cap) -> TruncatedSeries:
    n = len(inners)
    if not terms:
        return TruncatedSeries.zero(ring, target_vars, cap)
    if n == 0:
        c = terms.get((), ring.zero)
        return TruncatedSeries(ring, target_vars, cap, {(0,) * target_vars: c})
    last = inners[-1]
    groups: dict = {}
    for e, c in terms.items():
        groups.setdefault(e[-1], {})[e[:-1]] = c
    top = max(groups)
    acc = TruncatedSeries.zero(ring, target_vars, cap)
    for k in range(top, -1, -1):
        if k < top:
            acc = acc * last
        if k in groups:
            acc = acc + _compose(groups[k], inners[:-1], ring, target_vars, cap)
    return acc


def reverse(s: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse of a univariate series z*unit + ..."""
    s._require_univariate()
    if s.constant_term():
        raise NotReversible("constant term must vanish")
    a1 = s[1]
    if not s.ring.is_unit(a1):
        raise NotReversible(f"linear coefficient {a1!r} is not a unit")
    inv = s.ring.inverse(a1)
    z = TruncatedSeries.variable(s.ring, 1, s.cap)
    g = z.scale(inv)
    # each step fixes one more degree
    for _ in range(s.cap):
        g = g - (compose(s, [g]) - z).scale(inv)
    return g


def solve_implicit_w(ring, a1, a3, cap: int) -> TruncatedSeries:
    """The unique w(z) = z^3 + O(z^4) with w + a1*z*w + a3*w^2 = z^3."""
    if cap < 4:
        raise ValueError("cap must be at least 4")
    a1, a3 = ring(a1), ring(a3)
    z = TruncatedSeries.variable(ring, 1, cap)
    z3 = z ** 3
    w = z3
    for _ in range(cap):
        nxt = z3 - (z * w).scale(a1) - (w * w).scale(a3)
        if nxt == w:
            break
        w = nxt
    return w


def implicit_w_residual(w: TruncatedSeries, a1, a3) -> TruncatedSeries:
    z = TruncatedSeries.variable(w.ring, 1, w.cap)
    return w + (z * w).scale(a1) + (w * w).scale(a3) - z ** 3


def binomial_half(n: int) -> Fraction:
    """C(1/2, n)."""
    c = Fraction(1)
    for k in range(n):
        c = c * (Fraction(1, 2) - k) / (k + 1)
    return c


def series_sqrt(s: TruncatedSeries) -> TruncatedSeries:
    """Square root with constant term 1 via the binomial series B_{1/2}."""
    if not getattr(s.ring, "two_invertible", False):
        raise TwoNotInvertible(f"2 is not invertible in {s.ring}")
    if s.constant_term() != 1:
        raise BadLeadingTerm("square root needs constant term 1")
    m = s - 1
    result = TruncatedSeries.constant(s.ring, s.nvars, s.cap)
    power = result
    for n in range(1, s.cap):
        power = power * m
        if not power:
            break
        result = result + power.scale(binomial_half(n))
    return result
