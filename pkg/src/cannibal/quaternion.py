"""The maximal order O = Z_2[omega]<S> / (S^2 = 2, S a = conj(a) S).

Elements are pairs (a, b) of Witt vectors standing for a + b*S, so

    (a + bS)(c + dS) = (ac + 2 b conj(d)) + (ad + b conj(c)) S
    det(a + bS)      = a conj(a) - 2 b conj(b).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import ContextMismatch, NotAUnit
from .rings import WittElement, WittRing


@dataclass(frozen=True)
class QuaternionElement:
    a: WittElement
    b: WittElement

    @property
    def ring(self) -> WittRing:
        return self.a.ring

    @classmethod
    def of(cls, ring: WittRing, a=0, b=0) -> "QuaternionElement":
        return cls(ring(a), ring(b))

    def _coerce(self, other):
        if isinstance(other, QuaternionElement):
            if other.ring != self.ring:
                raise ContextMismatch(f"{self.ring} vs {other.ring}")
            return other
        return QuaternionElement(self.ring(other), self.ring.zero)

    def __add__(self, other):
        other = self._coerce(other)
        return QuaternionElement(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return QuaternionElement(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return QuaternionElement(-self.a, -self.b)

    def __mul__(self, other):
        return quat_mul(self, self._coerce(other))

    def __rmul__(self, other):
        return quat_mul(self._coerce(other), self)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = QuaternionElement(self.ring.one, self.ring.zero)
        for _ in range(n):
            result = result * self
        return result

    def conjugate(self) -> "QuaternionElement":
        """Quaternion conjugate: q * conj(q) = det(q)."""
        return QuaternionElement(self.a.conjugate(), -self.b)

    def det(self) -> WittElement:
        return quat_det(self)

    def trace(self) -> WittElement:
        return self.a + self.a.conjugate()

    def inverse(self) -> "QuaternionElement":
        d = self.det()
        if not self.ring.is_unit(d):
            raise NotAUnit(f"det {d!r} is not a unit")
        inv = self.ring.inverse(d)
        c = self.conjugate()
        return QuaternionElement(c.a * inv, c.b * inv)

    def __eq__(self, other):
        if not isinstance(other, QuaternionElement):
            other = self._coerce(other)
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"{self.a!r} + {self.b!r}*S"


def quat_mul(p: QuaternionElement, q: QuaternionElement) -> QuaternionElement:
    if p.ring != q.ring:
        raise ContextMismatch(f"{p.ring} vs {q.ring}")
    return QuaternionElement(
        p.a * q.a + 2 * p.b * q.b.conjugate(),
        p.a * q.b + p.b * q.a.conjugate(),
    )


def quat_det(q: QuaternionElement) -> WittElement:
    return q.a.norm() - 2 * q.b.norm()


def quat_S(ring: WittRing) -> QuaternionElement:
    return QuaternionElement(ring.zero, ring.one)


def quat_omega(ring: WittRing) -> QuaternionElement:
    return QuaternionElement(ring.omega, ring.zero)


def find_order_four_units(bound: int, ring: WittRing) -> list[QuaternionElement]:
    """All a + bS with integer omega-coordinates in [-bound, bound],
    q^2 = -1 and det(q) = 1 at the ring's precision."""
    minus_one = QuaternionElement(ring(-1), ring.zero)
    found = []
    rng = range(-bound, bound + 1)
    for a0, a1, b0, b1 in product(rng, repeat=4):
        q = QuaternionElement(ring(a0) + ring(a1) * ring.omega, ring(b0) + ring(b1) * ring.omega)
        if q * q == minus_one and q.det() == 1:
            found.append(q)
    return found


def conjugate_by(g: QuaternionElement, q: QuaternionElement) -> QuaternionElement:
    return g * q * g.inverse()


def hensel_root(ring: WittRing, poly, dpoly, start: int) -> int:
    """Lift a simple root of an integer-valued polynomial mod 2 to mod 2^N."""
    m = ring.modulus
    x = start
    for _ in range(ring.N + 1):
        fx = poly(x) % m
        if not fx:
            break
        x = (x - fx * pow(dpoly(x) % m, -1, m)) % m
    if poly(x) % m:
        raise ArithmeticError("Hensel lifting did not converge")
    return x


def hurwitz_triple(ring: WittRing) -> tuple:
    """Order-four units (i, j, k) with j = omega i omega^-1, k = omega j omega^-1,
    pairwise anticommuting, ij = k and i + j + k = -(1 + 2 omega).

    i = a + bS with a = -(1 + 2 omega)/3 and b = b0 + omega, N(b) = -1/3,
    so that omega = (-1 - i - j - k)/2.
    """
    m = ring.modulus
    third = pow(3, -1, m)
    a = (ring(-1) - 2 * ring.omega) * third
    # N(b0 + omega) = b0^2 - b0 + 1 = -1/3
    c = (1 + third) % m

    def poly(x):
        return x * x - x + c

    def dpoly(x):
        return 2 * x - 1

    omega = quat_omega(ring)
    for start in (0, 1):
        b0 = hensel_root(ring, poly, dpoly, start)
        i = QuaternionElement(a, ring(b0) + ring.omega)
        j = conjugate_by(omega, i)
        k = conjugate_by(omega, j)
        if i * j == k:
            return i, j, k
    raise ArithmeticError("no orientation gives ij = k")


def quaternion_relation_failures(i: QuaternionElement) -> list[str]:
    """Check the Q8 relations for i and its omega-conjugates j, k."""
    ring = i.ring
    one = QuaternionElement(ring.one, ring.zero)
    omega = quat_omega(ring)
    j = conjugate_by(omega, i)
    k = conjugate_by(omega, j)
    bad = []
    for name, q in (("i", i), ("j", j), ("k", k)):
        if q * q != -one:
            bad.append(f"{name}^2 != -1")
        if q.det() != 1:
            bad.append(f"det {name} != 1")
    if conjugate_by(omega, k) != i:
        bad.append("omega k omega^-1 != i")
    for (n1, p), (n2, q) in ((("i", i), ("j", j)), (("j", j), ("k", k)), (("k", k), ("i", i))):
        if p * q != -(q * p):
            bad.append(f"{n1}{n2} != -{n2}{n1}")
    if i * j != k:
        bad.append("ij != k")
    return bad


def generate_unit_group(gens: list[QuaternionElement], limit: int = 1000) -> set:
    one = QuaternionElement(gens[0].ring.one, gens[0].ring.zero)
    group = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = g * s
                if h not in group:
                    group.add(h)
                    nxt.append(h)
                    if len(group) > limit:
                        raise ArithmeticError("group closure exceeded limit")
        frontier = nxt
    return group


def witt_from_fraction(ring: WittRing, x0: Fraction, x1: Fraction = Fraction(0)) -> WittElement:
    return ring(x0) + ring(x1) * ring.omega
