"""Exact coefficient rings.

The tower used throughout the package:

* ``F4``               -- the field with four elements, F2[alpha], alpha^2 = alpha + 1
* ``WittRing(N)``      -- Z_2[omega] / 2^N, the Witt vectors of F4 in the omega basis
* ``E0Ring(N, M)``     -- W(F4)[[u1]] / (2^N, u1^M)
* ``GradedRing(E0)``   -- homogeneous elements body * u^k of E_* = E0[u, 1/u]
* ``IntegersMod2(N)``  -- Z / 2^N
* ``QQ``               -- the rationals (elements are plain ``Fraction``)
* ``CYCLO12``          -- Q(zeta_12)

Every ring object exposes the same small protocol, which is all the series
engine relies on: ``zero``, ``one``, ``__call__`` (coercion), ``is_unit``,
``inverse``, ``two_invertible`` and ``solve_scalar``.

Precision lives on the ring object, never on an element.  Mixing elements of
two different contexts raises :class:`ContextMismatch`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterator

from .errors import ContextMismatch, NotAUnit, PrecisionExhausted


def _v2(n: int) -> int:
    """2-adic valuation of a nonzero integer."""
    return (n & -n).bit_length() - 1


# ---------------------------------------------------------------------------
# F4
# ---------------------------------------------------------------------------


class F4Element:
    """c0 + c1*alpha with alpha^2 = alpha + 1."""

    __slots__ = ("c0", "c1")

    def __init__(self, c0: int, c1: int = 0):
        self.c0 = c0 & 1
        self.c1 = c1 & 1

    @property
    def ring(self) -> "F4Field":
        return F4

    def _coerce(self, other):
        if isinstance(other, F4Element):
            return other
        if isinstance(other, int):
            return F4Element(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return F4Element(self.c0 ^ other.c0, self.c1 ^ other.c1)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a0, a1, b0, b1 = self.c0, self.c1, other.c0, other.c1
        t = a1 & b1
        return F4Element((a0 & b0) ^ t, (a0 & b1) ^ (a1 & b0) ^ t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return F4.inverse(self) ** (-n)
        result = F4Element(1)
        for _ in range(n % 3 if self else n):
            result = result * self
        if n and not self:
            return F4Element(0)
        return result

    def __truediv__(self, other):
        return self * F4.inverse(self._coerce(other))

    def frobenius(self) -> "F4Element":
        """x -> x^2; sends alpha to alpha + 1."""
        return F4Element(self.c0 ^ self.c1, self.c1)

    def __bool__(self):
        return bool(self.c0 or self.c1)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.c0 == other.c0 and self.c1 == other.c1

    def __hash__(self):
        return hash(("F4", self.c0, self.c1))

    def __repr__(self):
        names = {(0, 0): "0", (1, 0): "1", (0, 1): "a", (1, 1): "a+1"}
        return names[(self.c0, self.c1)]


class F4Field:
    two_invertible = False
    is_field = True

    @property
    def zero(self):
        return F4Element(0)

    @property
    def one(self):
        return F4Element(1)

    @property
    def alpha(self):
        return F4Element(0, 1)

    def __call__(self, value) -> F4Element:
        if isinstance(value, F4Element):
            return value
        if isinstance(value, Fraction):
            if value.denominator % 2 == 0:
                raise NotAUnit(f"{value} is not 2-integral")
            return F4Element(value.numerator)
        return F4Element(int(value))

    def elements(self) -> list[F4Element]:
        return [F4Element(a, b) for b in (0, 1) for a in (0, 1)]

    def is_unit(self, x) -> bool:
        return bool(x)

    def inverse(self, x: F4Element) -> F4Element:
        if not x:
            raise NotAUnit("0 in F4")
        # x^3 = 1 for x != 0
        return x * x

    def solve_scalar(self, a, b):
        if a:
            return b * self.inverse(a)
        if b:
            raise ArithmeticError("inconsistent: 0 * c = b != 0")
        return None

    def __repr__(self):
        return "F4"


F4 = F4Field()


# ---------------------------------------------------------------------------
# Z / 2^N
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntegersMod2:
    """Z/2^N, used as the home of 2-adic integers at precision N."""

    N: int

    two_invertible = False
    is_field = False

    def __post_init__(self):
        if self.N < 1:
            raise PrecisionExhausted(f"2-adic precision must be >= 1, got {self.N}")

    @cached_property
    def modulus(self) -> int:
        return 1 << self.N

    @property
    def zero(self):
        return Mod2Element(self, 0)

    @property
    def one(self):
        return Mod2Element(self, 1)

    def __call__(self, value) -> "Mod2Element":
        if isinstance(value, Mod2Element):
            if value.ring != self:
                if value.ring.N < self.N:
                    raise ContextMismatch(f"cannot lift {value.ring} to {self}")
                return Mod2Element(self, value.value)
            return value
        if isinstance(value, Fraction):
            if value.denominator % 2 == 0:
                raise NotAUnit(f"{value} is not 2-integral")
            return Mod2Element(self, value.numerator * pow(value.denominator, -1, self.modulus))
        return Mod2Element(self, int(value))

    def is_unit(self, x) -> bool:
        return bool(self(x).value & 1)

    def inverse(self, x):
        x = self(x)
        if not x.value & 1:
            raise NotAUnit(f"{x.value} is even in {self}")
        return Mod2Element(self, pow(x.value, -1, self.modulus))

    def solve_scalar(self, a, b):
        a, b = self(a), self(b)
        if a.value & 1:
            return b * self.inverse(a)
        va = _v2(a.value) if a.value else self.N
        vb = _v2(b.value) if b.value else self.N
        if vb < va:
            raise ArithmeticError("inconsistent 2-adic equation")
        return None

    def __repr__(self):
        return f"Z/2^{self.N}"


class Mod2Element:
    __slots__ = ("ring", "value")

    def __init__(self, ring: IntegersMod2, value: int):
        self.ring = ring
        self.value = value & (ring.modulus - 1)

    def _coerce(self, other):
        if isinstance(other, Mod2Element):
            if other.ring != self.ring:
                raise ContextMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Mod2Element(self.ring, self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Mod2Element(self.ring, self.value - other.value)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Mod2Element(self.ring, -self.value)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Mod2Element(self.ring, self.value * other.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self.ring.inverse(other)

    def __pow__(self, n: int):
        if n < 0:
            return self.ring.inverse(self) ** (-n)
        return Mod2Element(self.ring, pow(self.value, n, self.ring.modulus))

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.value == other.value

    def __hash__(self):
        return hash((self.ring.N, self.value))

    def signed(self) -> int:
        """Representative in [-2^(N-1), 2^(N-1))."""
        half = self.ring.modulus >> 1
        return self.value - self.ring.modulus if self.value >= half else self.value

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.signed()} (mod 2^{self.ring.N})"


# ---------------------------------------------------------------------------
# W(F4) = Z_2[omega]
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WittRing:
    """Z_2[omega]/2^N with omega^2 = -1 - omega."""

    N: int

    two_invertible = False
    is_field = False

    def __post_init__(self):
        if self.N < 1:
            raise PrecisionExhausted(f"2-adic precision must be >= 1, got {self.N}")

    @cached_property
    def modulus(self) -> int:
        return 1 << self.N

    @property
    def zero(self):
        return WittElement(self, 0, 0)

    @property
    def one(self):
        return WittElement(self, 1, 0)

    @property
    def omega(self):
        return WittElement(self, 0, 1)

    def __call__(self, value) -> "WittElement":
        if isinstance(value, WittElement):
            if value.ring == self:
                return value
            if value.ring.N < self.N:
                raise ContextMismatch(f"cannot lift {value.ring} to {self}")
            return WittElement(self, value.a0, value.a1)
        if isinstance(value, Fraction):
            if value.denominator % 2 == 0:
                raise NotAUnit(f"{value} is not 2-integral")
            return WittElement(self, value.numerator * pow(value.denominator, -1, self.modulus), 0)
        if isinstance(value, Mod2Element):
            return WittElement(self, value.value, 0)
        return WittElement(self, int(value), 0)

    def is_unit(self, x) -> bool:
        x = self(x)
        return bool((x.a0 * x.a0 - x.a0 * x.a1 + x.a1 * x.a1) & 1)

    def inverse(self, x):
        x = self(x)
        n = (x.a0 * x.a0 - x.a0 * x.a1 + x.a1 * x.a1) % self.modulus
        if not n & 1:
            raise NotAUnit(f"{x!r} has even norm")
        return x.conjugate() * pow(n, -1, self.modulus)

    def valuation(self, x) -> int:
        x = self(x)
        if not (x.a0 or x.a1):
            return self.N
        return min(_v2(c) if c else self.N for c in (x.a0, x.a1))

    def solve_scalar(self, a, b):
        a, b = self(a), self(b)
        if self.is_unit(a):
            return b * self.inverse(a)
        if self.valuation(b) < self.valuation(a):
            raise ArithmeticError("inconsistent 2-adic equation")
        return None

    def __repr__(self):
        return f"W(F4)/2^{self.N}"


class WittElement:
    """a0 + a1*omega with integer coordinates mod 2^N."""

    __slots__ = ("ring", "a0", "a1")

    def __init__(self, ring: WittRing, a0: int, a1: int = 0):
        mask = ring.modulus - 1
        self.ring = ring
        self.a0 = a0 & mask
        self.a1 = a1 & mask

    def _coerce(self, other):
        if isinstance(other, WittElement):
            if other.ring != self.ring:
                raise ContextMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction, Mod2Element)):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return WittElement(self.ring, self.a0 + other.a0, self.a1 + other.a1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return WittElement(self.ring, self.a0 - other.a0, self.a1 - other.a1)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return WittElement(self.ring, -self.a0, -self.a1)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.a1 * other.a1
        return WittElement(
            self.ring,
            self.a0 * other.a0 - p,
            self.a0 * other.a1 + self.a1 * other.a0 - p,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self.ring.inverse(self._coerce(other))

    def __rtruediv__(self, other):
        return self._coerce(other) * self.ring.inverse(self)

    def __pow__(self, n: int):
        if n < 0:
            return self.ring.inverse(self) ** (-n)
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "WittElement":
        """Galois conjugation omega -> omega^2 = -1 - omega."""
        return WittElement(self.ring, self.a0 - self.a1, -self.a1)

    def norm(self) -> "WittElement":
        """w * conj(w); always has zero omega-coordinate."""
        return WittElement(self.ring, self.a0 * self.a0 - self.a0 * self.a1 + self.a1 * self.a1, 0)

    def reduce(self) -> F4Element:
        """Reduction mod 2, omega -> alpha."""
        return F4Element(self.a0, self.a1)

    def __bool__(self):
        return bool(self.a0 or self.a1)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except ContextMismatch:
            raise
        if other is NotImplemented:
            return other
        return self.a0 == other.a0 and self.a1 == other.a1

    def __hash__(self):
        return hash((self.ring.N, self.a0, self.a1))

    def signed(self) -> tuple[int, int]:
        half = self.ring.modulus >> 1
        m = self.ring.modulus
        return tuple(c - m if c >= half else c for c in (self.a0, self.a1))

    def __repr__(self):
        s0, s1 = self.signed()
        if not s1:
            return f"{s0}"
        if not s0:
            return f"{s1}w"
        return f"({s0}{s1:+d}w)"


def witt_conjugate(w: WittElement) -> WittElement:
    return w.conjugate()


def witt_norm(w: WittElement) -> WittElement:
    return w.norm()


# ---------------------------------------------------------------------------
# E0 = W(F4)[[u1]]
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class E0Ring:
    """W(F4)[[u1]] truncated modulo (2^N, u1^M)."""

    N: int
    M: int

    two_invertible = False
    is_field = False

    def __post_init__(self):
        if self.N < 1 or self.M < 1:
            raise PrecisionExhausted(f"invalid precision (N={self.N}, M={self.M})")

    @cached_property
    def witt(self) -> WittRing:
        return WittRing(self.N)

    @cached_property
    def modulus(self) -> int:
        return 1 << self.N

    @property
    def zero(self):
        return E0Element(self, (0,) * self.M, (0,) * self.M)

    @property
    def one(self):
        return self.constant(1)

    @property
    def u1(self):
        if self.M == 1:
            return self.zero
        re = [0] * self.M
        re[1] = 1
        return E0Element(self, tuple(re), (0,) * self.M)

    @property
    def omega(self):
        return self.constant(self.witt.omega)

    def constant(self, value) -> "E0Element":
        w = self.witt(value)
        re = [0] * self.M
        om = [0] * self.M
        re[0], om[0] = w.a0, w.a1
        return E0Element(self, tuple(re), tuple(om))

    def from_coefficients(self, coeffs) -> "E0Element":
        """Build from a sequence of Witt-coercible coefficients of u1^0, u1^1, ..."""
        re = [0] * self.M
        om = [0] * self.M
        for k, c in enumerate(coeffs):
            if k >= self.M:
                break
            w = self.witt(c)
            re[k], om[k] = w.a0, w.a1
        return E0Element(self, tuple(re), tuple(om))

    def __call__(self, value) -> "E0Element":
        if isinstance(value, E0Element):
            if value.ring == self:
                return value
            return value.change_precision(self)
        return self.constant(value)

    def is_unit(self, x) -> bool:
        x = self(x)
        return self.witt.is_unit(x[0])

    def inverse(self, x):
        x = self(x)
        c0 = x[0]
        if not self.witt.is_unit(c0):
            raise NotAUnit(f"constant term {c0!r} is not a unit")
        inv0 = self.witt.inverse(c0)
        coeffs = [inv0]
        for n in range(1, self.M):
            acc = self.witt.zero
            for k in range(1, n + 1):
                acc = acc + x[k] * coeffs[n - k]
            coeffs.append(-(inv0 * acc))
        return self.from_coefficients(coeffs)

    def solve_scalar(self, a, b):
        a, b = self(a), self(b)
        if self.is_unit(a):
            return b * self.inverse(a)
        return None

    def reduction(self) -> "E0Ring":
        """The residue field as a ring of the same protocol (F4)."""
        return F4

    def __repr__(self):
        return f"E0(N={self.N}, M={self.M})"


class E0Element:
    """Element of W(F4)[[u1]]/(2^N, u1^M), stored as two coordinate tuples.

    ``re[k] + om[k]*omega`` is the coefficient of u1^k.
    """

    __slots__ = ("ring", "re", "om")

    def __init__(self, ring: E0Ring, re: tuple, om: tuple):
        self.ring = ring
        self.re = re
        self.om = om

    def __getitem__(self, k: int) -> WittElement:
        return WittElement(self.ring.witt, self.re[k], self.om[k])

    def coefficients(self) -> list[WittElement]:
        return [self[k] for k in range(self.ring.M)]

    def _coerce(self, other):
        if isinstance(other, E0Element):
            if other.ring != self.ring:
                raise ContextMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction, WittElement, Mod2Element)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        mask = self.ring.modulus - 1
        return E0Element(
            self.ring,
            tuple((a + b) & mask for a, b in zip(self.re, other.re)),
            tuple((a + b) & mask for a, b in zip(self.om, other.om)),
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        mask = self.ring.modulus - 1
        return E0Element(
            self.ring,
            tuple((a - b) & mask for a, b in zip(self.re, other.re)),
            tuple((a - b) & mask for a, b in zip(self.om, other.om)),
        )

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        mask = self.ring.modulus - 1
        return E0Element(
            self.ring, tuple(-a & mask for a in self.re), tuple(-a & mask for a in self.om)
        )

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        M = self.ring.M
        A0, A1, B0, B1 = self.re, self.om, other.re, other.om
        r0 = [0] * M
        r1 = [0] * M
        nzb = [j for j in range(M) if B0[j] or B1[j]]
        for i in range(M):
            x0 = A0[i]
            x1 = A1[i]
            if not (x0 or x1):
                continue
            lim = M - i
            for j in nzb:
                if j >= lim:
                    break
                y0 = B0[j]
                y1 = B1[j]
                p = x1 * y1
                r0[i + j] += x0 * y0 - p
                r1[i + j] += x0 * y1 + x1 * y0 - p
        mask = self.ring.modulus - 1
        return E0Element(self.ring, tuple(v & mask for v in r0), tuple(v & mask for v in r1))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self.ring.inverse(self._coerce(other))

    def __rtruediv__(self, other):
        return self._coerce(other) * self.ring.inverse(self)

    def __pow__(self, n: int):
        if n < 0:
            return self.ring.inverse(self) ** (-n)
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conjugate(self) -> "E0Element":
        """Galois conjugation applied to every u1-coefficient."""
        mask = self.ring.modulus - 1
        return E0Element(
            self.ring,
            tuple((a - b) & mask for a, b in zip(self.re, self.om)),
            tuple(-b & mask for b in self.om),
        )

    def change_precision(self, ring: E0Ring) -> "E0Element":
        """Reduce to a coarser context (N' <= N, M' <= M)."""
        if ring.N > self.ring.N or ring.M > self.ring.M:
            raise PrecisionExhausted(f"cannot lift {self.ring} to {ring}")
        mask = ring.modulus - 1
        return E0Element(
            ring,
            tuple(a & mask for a in self.re[: ring.M]),
            tuple(a & mask for a in self.om[: ring.M]),
        )

    def reduce(self) -> F4Element:
        """Reduction modulo the maximal ideal (2, u1)."""
        return F4Element(self.re[0], self.om[0])

    def reduce_mod2(self) -> list[F4Element]:
        """Image in F4[[u1]]/(u1^M)."""
        return [F4Element(a, b) for a, b in zip(self.re, self.om)]

    def is_zero(self) -> bool:
        return not (any(self.re) or any(self.om))

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.om == other.om

    def __hash__(self):
        return hash((self.ring, self.re, self.om))

    def first_difference(self, other) -> int | None:
        """Lowest u1-degree where two elements differ, or None."""
        other = self._coerce(other)
        for k in range(self.ring.M):
            if self.re[k] != other.re[k] or self.om[k] != other.om[k]:
                return k
        return None

    def __repr__(self):
        parts = []
        for k in range(self.ring.M):
            c = self[k]
            if c:
                parts.append(f"{c!r}" if k == 0 else f"{c!r}*u1^{k}" if k > 1 else f"{c!r}*u1")
        return " + ".join(parts) if parts else "0"


def e0_invert(e: E0Element) -> E0Element:
    return e.ring.inverse(e)


# ---------------------------------------------------------------------------
# Ring homomorphisms of E0
# ---------------------------------------------------------------------------


class E0Hom:
    """A continuous ring endomorphism of W(F4)[[u1]].

    It is determined by the image of u1 (a rule that can be evaluated at any
    precision) and by whether it acts on W(F4) through Frobenius.  Because the
    image of u1 may have a constant term in 2*W, applying the map to an
    element known modulo u1^M only determines the result modulo a smaller
    power of u1; :meth:`apply` accounts for that loss explicitly.
    """

    def __init__(self, name: str, u1_image: Callable[[E0Ring], E0Element], frobenius: bool = False):
        self.name = name
        self._u1_image = u1_image
        self.frobenius = frobenius

    def u1_image(self, ring: E0Ring) -> E0Element:
        return self._u1_image(ring)

    def loss(self, N: int) -> int:
        """u1-orders lost when applying the map at 2-adic precision N."""
        c0 = self._u1_image(E0Ring(N, 1))[0]
        if not c0:
            return 0
        v = c0.ring.valuation(c0)
        if v == 0:
            raise ValueError(f"{self.name}: image of u1 is a unit, map is not local")
        return -(-N // v) - 1

    def apply(self, e: E0Element, target: E0Ring | None = None) -> E0Element:
        src = e.ring
        M_out = src.M - self.loss(src.N)
        if M_out < 1:
            raise PrecisionExhausted(
                f"{self.name}: input known mod u1^{src.M} does not determine any output at N={src.N}"
            )
        if target is None:
            target = E0Ring(src.N, M_out)
        elif target.N > src.N or target.M > M_out:
            raise PrecisionExhausted(
                f"{self.name}: input at {src} certifies at most E0(N={src.N}, M={M_out}), asked {target}"
            )
        img = self._u1_image(target)
        coeffs = [e[k] for k in range(src.M)]
        # Horner in the image of u1
        acc = target.zero
        for c in reversed(coeffs):
            if self.frobenius:
                c = c.conjugate()
            acc = acc * img + target.constant(WittElement(target.witt, c.a0, c.a1))
        return acc

    def __call__(self, e: E0Element, target: E0Ring | None = None) -> E0Element:
        return self.apply(e, target)

    def then(self, first: "E0Hom") -> "E0Hom":
        """The composite ``self o first`` (apply ``first``, then ``self``)."""
        outer = self

        def image(ring: E0Ring) -> E0Element:
            hi = E0Ring(ring.N, ring.M + outer.loss(ring.N))
            return outer.apply(first.u1_image(hi), ring)

        return E0Hom(f"{outer.name}*{first.name}", image, outer.frobenius ^ first.frobenius)

    def __repr__(self):
        return f"E0Hom({self.name})"


IDENTITY_HOM = E0Hom("id", lambda ring: ring.u1)


# ---------------------------------------------------------------------------
# Graded coefficients E_* = E0[u, 1/u]
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GradedRing:
    """Homogeneous elements ``body * u^k`` of E_*; u sits in degree -2."""

    base: E0Ring

    two_invertible = False
    is_field = False

    @property
    def zero(self):
        return GradedElement(self.base.zero, 0)

    @property
    def one(self):
        return GradedElement(self.base.one, 0)

    @property
    def u(self):
        return GradedElement(self.base.one, 1)

    def __call__(self, value) -> "GradedElement":
        if isinstance(value, GradedElement):
            if value.body.ring != self.base:
                raise ContextMismatch(f"{value.body.ring} vs {self.base}")
            return value
        return GradedElement(self.base(value), 0)

    def is_unit(self, x) -> bool:
        return self.base.is_unit(self(x).body)

    def inverse(self, x):
        x = self(x)
        return GradedElement(self.base.inverse(x.body), -x.u_power)

    def solve_scalar(self, a, b):
        a, b = self(a), self(b)
        if self.is_unit(a):
            return b * self.inverse(a)
        return None

    def __repr__(self):
        return f"Graded[{self.base}]"


class GradedElement:
    """body * u^u_power.  Sums require equal u-powers unless a summand is 0."""

    __slots__ = ("body", "u_power")

    def __init__(self, body: E0Element, u_power: int = 0):
        self.body = body
        self.u_power = u_power if body else 0

    @property
    def ring(self) -> GradedRing:
        return GradedRing(self.body.ring)

    @property
    def degree(self) -> int:
        return -2 * self.u_power

    def _coerce(self, other):
        if isinstance(other, GradedElement):
            return other
        if isinstance(other, (int, Fraction, WittElement, E0Element, Mod2Element)):
            return GradedElement(self.body.ring(other), 0)
        return NotImplemented

    def _match(self, other):
        if not other.body:
            return self.u_power
        if not self.body:
            return other.u_power
        if self.u_power != other.u_power:
            raise ValueError(f"inhomogeneous sum: u^{self.u_power} + u^{other.u_power}")
        return self.u_power

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        k = self._match(other)
        return GradedElement(self.body + other.body, k)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        k = self._match(other)
        return GradedElement(self.body - other.body, k)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return GradedElement(-self.body, self.u_power)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GradedElement(self.body * other.body, self.u_power + other.u_power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * self.ring.inverse(other)

    def __pow__(self, n: int):
        if n < 0:
            return self.ring.inverse(self) ** (-n)
        return GradedElement(self.body ** n, self.u_power * n)

    def __bool__(self):
        return bool(self.body)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.body and not other.body:
            return True
        return self.u_power == other.u_power and self.body == other.body

    def __hash__(self):
        return hash((self.body, self.u_power))

    def __repr__(self):
        if not self.u_power:
            return repr(self.body)
        return f"({self.body!r})*u^{self.u_power}"


# ---------------------------------------------------------------------------
# Q and Q(zeta_12)
# ---------------------------------------------------------------------------


class RationalField:
    two_invertible = True
    is_field = True
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, value) -> Fraction:
        return Fraction(value)

    def is_unit(self, x) -> bool:
        return x != 0

    def inverse(self, x):
        if x == 0:
            raise NotAUnit("0 in Q")
        return 1 / Fraction(x)

    def solve_scalar(self, a, b):
        if a:
            return Fraction(b) / a
        if b:
            raise ArithmeticError("inconsistent: 0 * c = b != 0")
        return None

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def _cyclo_mul(a: tuple, b: tuple) -> tuple:
    # power basis 1, z, z^2, z^3 with z^4 = z^2 - 1 (so z^5 = z^3 - z, z^6 = -1)
    p = [0] * 7
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    p[i + j] += x * y
    c0 = p[0] - p[4] + p[6] * -1
    c1 = p[1] - p[5]
    c2 = p[2] + p[4]
    c3 = p[3] + p[5]
    return (Fraction(c0), Fraction(c1), Fraction(c2), Fraction(c3))


class CycloRational:
    """Element of Q(zeta_12) in the power basis of zeta = zeta_12."""

    __slots__ = ("c",)

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        self.c = (Fraction(c0), Fraction(c1), Fraction(c2), Fraction(c3))

    @classmethod
    def _raw(cls, c: tuple) -> "CycloRational":
        obj = cls.__new__(cls)
        obj.c = c
        return obj

    @property
    def ring(self) -> "CyclotomicField12":
        return CYCLO12

    def _coerce(self, other):
        if isinstance(other, CycloRational):
            return other
        if isinstance(other, (int, Fraction)):
            return CycloRational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloRational._raw(tuple(a + b for a, b in zip(self.c, other.c)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloRational._raw(tuple(a - b for a, b in zip(self.c, other.c)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return CycloRational._raw(tuple(-a for a in self.c))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloRational._raw(tuple(a * other for a in self.c))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloRational._raw(_cyclo_mul(self.c, other.c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * CYCLO12.inverse(self._coerce(other))

    def __rtruediv__(self, other):
        return self._coerce(other) * CYCLO12.inverse(self)

    def __pow__(self, n: int):
        if n < 0:
            return CYCLO12.inverse(self) ** (-n)
        result, base = CYCLO12.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def __repr__(self):
        terms = []
        for k, x in enumerate(self.c):
            if x:
                terms.append(f"{x}" if k == 0 else f"{x}*z^{k}" if k > 1 else f"{x}*z")
        return "(" + " + ".join(terms) + ")" if terms else "0"


class CyclotomicField12:
    two_invertible = True
    is_field = True

    @property
    def zero(self):
        return CycloRational()

    @property
    def one(self):
        return CycloRational(1)

    @property
    def zeta(self) -> CycloRational:
        """zeta_12 = exp(2 pi i / 12)."""
        return CycloRational(0, 1)

    def root_of_unity(self, k: int, n: int = 12) -> CycloRational:
        """exp(2 pi i k / n) for n dividing 12."""
        if 12 % n:
            raise ValueError(f"{n} does not divide 12")
        return self.zeta ** ((k * (12 // n)) % 12)

    def __call__(self, value) -> CycloRational:
        if isinstance(value, CycloRational):
            return value
        return CycloRational(value)

    def is_unit(self, x) -> bool:
        return bool(self(x))

    def inverse(self, x):
        x = self(x)
        if not x:
            raise NotAUnit("0 in Q(zeta_12)")
        # solve x * y = 1 via the multiplication matrix
        cols = [_cyclo_mul(x.c, tuple(Fraction(int(i == j)) for i in range(4))) for j in range(4)]
        rows = [[cols[j][i] for j in range(4)] + [Fraction(int(i == 0))] for i in range(4)]
        for col in range(4):
            piv = next(r for r in range(col, 4) if rows[r][col])
            rows[col], rows[piv] = rows[piv], rows[col]
            p = rows[col][col]
            rows[col] = [v / p for v in rows[col]]
            for r in range(4):
                if r != col and rows[r][col]:
                    f = rows[r][col]
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
        return CycloRational._raw(tuple(rows[i][4] for i in range(4)))

    def solve_scalar(self, a, b):
        a, b = self(a), self(b)
        if a:
            return b * self.inverse(a)
        if b:
            raise ArithmeticError("inconsistent: 0 * c = b != 0")
        return None

    def __repr__(self):
        return "Q(zeta12)"


CYCLO12 = CyclotomicField12()


def iter_witt_small(ring: WittRing, bound: int) -> Iterator[WittElement]:
    """All a0 + a1*omega with |a0|, |a1| <= bound."""
    for a0 in range(-bound, bound + 1):
        for a1 in range(-bound, bound + 1):
            yield WittElement(ring, a0, a1)
