"""The curve C: y^2 + y = x^3 over F4, its automorphisms and GL2(Z/3).

The nine F4-points form (Z/3)^2.  Automorphisms act on the basis
P = (0, 0), Q = (1, alpha); a matrix records the images of P and Q as its
columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable

from .errors import NotGroupAutomorphism
from .rings import F4, F4Element

ALPHA = F4.alpha


@dataclass(frozen=True)
class CurvePoint:
    """An affine point (x, y), or the point at infinity when ``x`` is None."""

    x: F4Element | None = None
    y: F4Element | None = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __neg__(self) -> "CurvePoint":
        if self.is_infinity:
            return self
        return CurvePoint(self.x, self.y + 1)

    def __add__(self, other: "CurvePoint") -> "CurvePoint":
        return add_points(self, other)

    def __repr__(self):
        return "O" if self.is_infinity else f"({self.x!r}, {self.y!r})"


INFINITY = CurvePoint()


def on_curve(x: F4Element, y: F4Element) -> bool:
    return y * y + y == x * x * x


def enumerate_points() -> list[CurvePoint]:
    return list(_points())


@lru_cache(maxsize=1)
def _points() -> tuple:
    pts = [INFINITY]
    for x, y in product(F4.elements(), repeat=2):
        if on_curve(x, y):
            pts.append(CurvePoint(x, y))
    return tuple(pts)


@lru_cache(maxsize=1)
def addition_table() -> dict:
    """P + Q for every pair of F4-points."""
    pts = _points()
    return {(P, Q): add_points(P, Q) for P in pts for Q in pts}


def add_points(P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    """Chord-tangent law for a1 = 0, a3 = 1 in characteristic 2."""
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y != Q.y:
            # Q = -P since the only other point over x is (x, y+1)
            return INFINITY
        # tangent slope (3x^2 - a1 y)/(2y + a1 x + a3) = x^2
        lam = P.x * P.x
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    nu = P.y - lam * P.x
    x3 = lam * lam + P.x + Q.x
    y3 = lam * x3 + nu + 1
    return CurvePoint(x3, y3)


def scalar_multiple(n: int, P: CurvePoint) -> CurvePoint:
    acc = INFINITY
    base = P if n >= 0 else -P
    for _ in range(abs(n)):
        acc = acc + base
    return acc


def point_order(P: CurvePoint) -> int:
    n, acc = 1, P
    while not acc.is_infinity:
        acc = acc + P
        n += 1
    return n


# ---------------------------------------------------------------------------
# automorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurveAutomorphism:
    name: str
    rule: Callable[[F4Element, F4Element], tuple]

    def __call__(self, P: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return P
        x, y = self.rule(P.x, P.y)
        return CurvePoint(x, y)

    def then(self, first: "CurveAutomorphism") -> "CurveAutomorphism":
        """``self o first``."""
        def rule(x, y):
            return self.rule(*first.rule(x, y))

        return CurveAutomorphism(f"{self.name}*{first.name}", rule)


AUT_IDENTITY = CurveAutomorphism("id", lambda x, y: (x, y))
AUT_MINUS_ONE = CurveAutomorphism("-1", lambda x, y: (x, y + 1))
AUT_OMEGA = CurveAutomorphism("omega", lambda x, y: (ALPHA * x, y))
AUT_I = CurveAutomorphism("i", lambda x, y: (x + 1, x + y + ALPHA))
AUT_SIGMA = CurveAutomorphism("sigma", lambda x, y: (x * x, y * y))

GENERATORS = {"-1": AUT_MINUS_ONE, "omega": AUT_OMEGA, "i": AUT_I, "sigma": AUT_SIGMA}

BASIS = (CurvePoint(F4(0), F4(0)), CurvePoint(F4(1), ALPHA))


def coordinates_table() -> dict:
    """Map each point to its coordinates (a, b) in the basis, P = aP0 + bQ0."""
    return dict(_coordinates())


@lru_cache(maxsize=1)
def _coordinates() -> tuple:
    P0, Q0 = BASIS
    table = {}
    for a, b in product(range(3), repeat=2):
        table[scalar_multiple(a, P0) + scalar_multiple(b, Q0)] = (a, b)
    if len(table) != 9:
        raise AssertionError("basis does not span C(F4)")
    return tuple(table.items())


def is_group_automorphism(a: CurveAutomorphism) -> bool:
    pts = _points()
    image = {P: a(P) for P in pts}
    if set(image.values()) != set(pts):
        return False
    add = addition_table()
    return all(image[add[P, Q]] == add[image[P], image[Q]] for P in pts for Q in pts)


# ---------------------------------------------------------------------------
# GL2(Z/3)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GL2Z3Matrix:
    """Row-major entries ((a, b), (c, d)) mod 3."""

    rows: tuple

    @classmethod
    def of(cls, a, b, c, d) -> "GL2Z3Matrix":
        return cls(((a % 3, b % 3), (c % 3, d % 3)))

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.rows
        return (a * d - b * c) % 3

    def __mul__(self, other: "GL2Z3Matrix") -> "GL2Z3Matrix":
        (a, b), (c, d) = self.rows
        (e, f), (g, h) = other.rows
        return GL2Z3Matrix.of(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def apply(self, v: tuple) -> tuple:
        (a, b), (c, d) = self.rows
        return ((a * v[0] + b * v[1]) % 3, (c * v[0] + d * v[1]) % 3)

    def order(self) -> int:
        n, acc = 1, self
        while acc != IDENTITY_MATRIX:
            acc = acc * self
            n += 1
        return n

    def signed(self) -> tuple:
        """Entries in {-1, 0, 1}."""
        return tuple(tuple(e - 3 if e == 2 else e for e in row) for row in self.rows)

    def __repr__(self):
        return f"[{self.signed()[0]}, {self.signed()[1]}]"


IDENTITY_MATRIX = GL2Z3Matrix.of(1, 0, 0, 1)


def matrix_of(a: CurveAutomorphism) -> GL2Z3Matrix:
    if not is_group_automorphism(a):
        raise NotGroupAutomorphism(f"{a.name} is not additive on C(F4)")
    table = dict(_coordinates())
    c1 = table[a(BASIS[0])]
    c2 = table[a(BASIS[1])]
    return GL2Z3Matrix.of(c1[0], c2[0], c1[1], c2[1])


def generate_group(gens: Iterable[GL2Z3Matrix]) -> frozenset:
    gens = list(gens)
    group = {IDENTITY_MATRIX}
    frontier = [IDENTITY_MATRIX]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = g * s
                if h not in group:
                    group.add(h)
                    nxt.append(h)
        frontier = nxt
    return frozenset(group)


def all_gl2() -> frozenset:
    return frozenset(
        m for m in (GL2Z3Matrix.of(*e) for e in product(range(3), repeat=4)) if m.det
    )


def subgroup_g24() -> frozenset:
    """SL2(Z/3)."""
    return frozenset(m for m in all_gl2() if m.det == 1)


def subgroup_g0() -> frozenset:
    """Stabilizer of the line Z/3 x 0: upper triangular matrices."""
    return frozenset(m for m in all_gl2() if m.rows[1][0] == 0)


def subgroup_g1() -> frozenset:
    """Stabilizer of the point (1, 0)."""
    return frozenset(m for m in all_gl2() if m.apply((1, 0)) == (1, 0))


def subgroup_q8() -> frozenset:
    """The 2-Sylow subgroup of SL2(Z/3): elements of order dividing 4."""
    return frozenset(m for m in subgroup_g24() if m.order() in (1, 2, 4))


def subgroup_c3(gen: GL2Z3Matrix) -> frozenset:
    return generate_group([gen])
