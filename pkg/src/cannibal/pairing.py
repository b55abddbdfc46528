"""Exponent-lattice model of a bilinear alternating pairing on an O-module.

f(x u, x v) for u, v in the basis {1, omega, S, omega S} of O gives sixteen
symbols.  A product of pairing values is an integer vector in Z^16, and the
rules f obeys become a relation lattice.  Identities are checked by
reducing to a canonical Hermite-form representative.

Elements of O with integer coordinates are 4-tuples (a0, a1, b0, b1)
standing for a0 + a1 omega + (b0 + b1 omega) S.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product

BASIS = ("1", "w", "S", "wS")
DIM = 16


def index(u: int, v: int) -> int:
    return 4 * u + v


def unit_vector(u: int, v: int) -> tuple:
    e = [0] * DIM
    e[index(u, v)] = 1
    return tuple(e)


def symbol_name(i: int) -> str:
    u, v = divmod(i, 4)
    return f"f(x{BASIS[u]},x{BASIS[v]})"


# ---------------------------------------------------------------------------
# integer-coordinate arithmetic in O
# ---------------------------------------------------------------------------


def _w_mul(a, b):
    """(a0 + a1 w)(b0 + b1 w) with w^2 = -1 - w."""
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0] - a[1] * b[1])


def _w_conj(a):
    return (a[0] - a[1], -a[1])


def o_mul(p: tuple, q: tuple) -> tuple:
    """(a + bS)(c + dS) = (ac + 2 b conj(d)) + (ad + b conj(c)) S."""
    a, b = p[:2], p[2:]
    c, d = q[:2], q[2:]
    ac = _w_mul(a, c)
    bd = _w_mul(b, _w_conj(d))
    ad = _w_mul(a, d)
    bc = _w_mul(b, _w_conj(c))
    return (ac[0] + 2 * bd[0], ac[1] + 2 * bd[1], ad[0] + bc[0], ad[1] + bc[1])


def o_conj_w(a: tuple) -> tuple:
    """Embed conj(a0 + a1 w) into O."""
    c = _w_conj(a)
    return (c[0], c[1], 0, 0)


def o_det(p: tuple) -> int:
    a0, a1, b0, b1 = p
    return a0 * a0 - a0 * a1 + a1 * a1 - 2 * (b0 * b0 - b0 * b1 + b1 * b1)


O_BASIS = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
O_ONE, O_OMEGA, O_S, O_OMEGA_S = O_BASIS


def o_add(*ps: tuple) -> tuple:
    return tuple(sum(c) for c in zip(*ps))


def o_scale(k: int, p: tuple) -> tuple:
    return tuple(k * c for c in p)


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------


def expand_bilinear(left: tuple, right: tuple) -> tuple:
    """Exponent vector of f(x*left, x*right)."""
    out = [0] * DIM
    for u, v in product(range(4), repeat=2):
        out[index(u, v)] += left[u] * right[v]
    return tuple(out)


def vadd(*vs: tuple) -> tuple:
    return tuple(sum(c) for c in zip(*vs))


def vscale(k: int, v: tuple) -> tuple:
    return tuple(k * c for c in v)


def vsub(a: tuple, b: tuple) -> tuple:
    return vadd(a, vscale(-1, b))


# ---------------------------------------------------------------------------
# Hermite normal form
# ---------------------------------------------------------------------------


def hermite_normal_form(rows: list) -> list:
    """Row-style HNF: pivots positive, entries above each pivot in [0, pivot)."""
    A = [list(r) for r in rows if any(r)]
    ncols = len(A[0]) if A else DIM
    H: list = []
    r = 0
    for col in range(ncols):
        # Euclid on column col among rows r..
        while True:
            nz = [i for i in range(r, len(A)) if A[i][col]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(A[i][col]))
            A[r], A[p] = A[p], A[r]
            done = True
            for i in range(r + 1, len(A)):
                if A[i][col]:
                    q = A[i][col] // A[r][col]
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    if A[i][col]:
                        done = False
            if done:
                break
        if r < len(A) and A[r][col]:
            if A[r][col] < 0:
                A[r] = [-x for x in A[r]]
            for i in range(r):
                q = A[i][col] // A[r][col]
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
            r += 1
    H = [tuple(row) for row in A[:r]]
    return H


def rational_rank(rows: list) -> int:
    A = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(A[0]) if A else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][col]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for i in range(len(A)):
            if i != rank and A[i][col]:
                f = A[i][col] / A[rank][col]
                A[i] = [x - f * y for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# relation lattice
# ---------------------------------------------------------------------------


def alternation_relations() -> list:
    rels = []
    for u in range(4):
        rels.append(unit_vector(u, u))
        for v in range(u + 1, 4):
            rels.append(vadd(unit_vector(u, v), unit_vector(v, u)))
    return rels


def omega_invariance_relations() -> list:
    """f(x u omega, x v omega) f(x u, x v)^-1."""
    return [
        vsub(expand_bilinear(o_mul(O_BASIS[u], O_OMEGA), o_mul(O_BASIS[v], O_OMEGA)), unit_vector(u, v))
        for u, v in product(range(4), repeat=2)
    ]


ONE_PLUS_S = (1, 0, 1, 0)


def one_plus_s_relations() -> list:
    """f(x u (1+S), x v (1+S)) f(x u, x v)."""
    return [
        vadd(expand_bilinear(o_mul(O_BASIS[u], ONE_PLUS_S), o_mul(O_BASIS[v], ONE_PLUS_S)), unit_vector(u, v))
        for u, v in product(range(4), repeat=2)
    ]


@dataclass(frozen=True)
class RelationLattice:
    relations: tuple

    @cached_property
    def hnf(self) -> list:
        return hermite_normal_form(list(self.relations))

    @cached_property
    def pivots(self) -> list:
        return [next(i for i, x in enumerate(row) if x) for row in self.hnf]

    def reduce(self, v: tuple) -> tuple:
        """Canonical representative of v modulo the lattice."""
        v = list(v)
        for row, col in zip(self.hnf, self.pivots):
            q = v[col] // row[col]
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, v: tuple) -> bool:
        return not any(self.reduce(v))

    def equivalent(self, a: tuple, b: tuple) -> bool:
        return self.contains(vsub(a, b))

    def has_infinite_order(self, v: tuple) -> bool:
        rels = list(self.relations)
        return rational_rank(rels + [v]) > rational_rank(rels)

    def extend(self, more: list) -> "RelationLattice":
        return RelationLattice(tuple(self.relations) + tuple(more))


BASE_LATTICE = RelationLattice(tuple(alternation_relations() + omega_invariance_relations()))


@dataclass(frozen=True)
class LatticeSetup:
    lattice: RelationLattice
    one_plus_s_derivable: bool


@lru_cache(maxsize=1)
def build_lattice() -> LatticeSetup:
    """Alternation and omega-invariance, plus the (1+S)-rule if it is not already a consequence."""
    rules = one_plus_s_relations()
    derivable = all(BASE_LATTICE.contains(r) for r in rules)
    lattice = BASE_LATTICE if derivable else BASE_LATTICE.extend(rules)
    return LatticeSetup(lattice, derivable)


def reduce_mod_relations(v: tuple) -> tuple:
    return build_lattice().lattice.reduce(v)


E_1S = unit_vector(0, 2)


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------


@dataclass
class LatticeReport:
    passed: bool
    case: tuple
    residual: tuple

    def describe(self) -> str:
        if self.passed:
            return "ok"
        terms = [f"{c}*{symbol_name(i)}" for i, c in enumerate(self.residual) if c]
        return f"case {self.case}: residual " + " + ".join(terms)


def det_lemma_vector(a: tuple, b: tuple) -> tuple:
    """f(x(a + bS), x(conj(a) S + 2 conj(b)))."""
    g = (a[0], a[1], b[0], b[1])
    right = o_add(o_mul(o_conj_w(a), O_S), o_scale(2, o_conj_w(b)))
    return expand_bilinear(g, right)


def verify_det_lemma(a: tuple, b: tuple) -> LatticeReport:
    L = build_lattice().lattice
    det = o_det((a[0], a[1], b[0], b[1]))
    residual = L.reduce(vsub(det_lemma_vector(a, b), vscale(det, E_1S)))
    return LatticeReport(not any(residual), (a, b), residual)


def verify_det_lemma_grid(bound: int = 2) -> list:
    """Failures over all integer quadruples with |coordinate| <= bound."""
    rng = range(-bound, bound + 1)
    out = []
    for a0, a1, b0, b1 in product(rng, repeat=4):
        r = verify_det_lemma((a0, a1), (b0, b1))
        if not r.passed:
            out.append(r)
    return out


def verify_middle_cancellation(a: tuple, b: tuple) -> LatticeReport:
    """f(x a, x 2 conj(b)) f(x bS, x conj(a) S) reduces to the trivial class."""
    A = (a[0], a[1], 0, 0)
    bS = (0, 0, b[0], b[1])
    v = vadd(
        expand_bilinear(A, o_scale(2, o_conj_w(b))),
        expand_bilinear(bS, o_mul(o_conj_w(a), O_S)),
    )
    residual = build_lattice().lattice.reduce(v)
    return LatticeReport(not any(residual), (a, b), residual)


def verify_middle_cancellation_random(n: int = 200, seed: int = 0, bound: int = 50) -> list:
    rnd = random.Random(seed)
    out = []
    for _ in range(n):
        a = (rnd.randint(-bound, bound), rnd.randint(-bound, bound))
        b = (rnd.randint(-bound, bound), rnd.randint(-bound, bound))
        r = verify_middle_cancellation(a, b)
        if not r.passed:
            out.append(r)
    return out


def omega_square_relation() -> tuple:
    """f(x omega, x)^2 f(xS, x omega S)^-1."""
    return vsub(vscale(2, expand_bilinear(O_OMEGA, O_ONE)), expand_bilinear(O_S, O_OMEGA_S))


def omega_chain_relation() -> tuple:
    """f(x omega, x) f(x omega (1+S), x (1+S))."""
    return vadd(
        expand_bilinear(O_OMEGA, O_ONE),
        expand_bilinear(o_mul(O_OMEGA, ONE_PLUS_S), ONE_PLUS_S),
    )


def one_plus_s_rule_holds() -> bool:
    L = build_lattice().lattice
    return all(L.contains(r) for r in one_plus_s_relations())


@dataclass
class PairingSummary:
    det_failures: int
    omega_square: bool
    omega_chain: bool
    one_plus_s: bool
    one_plus_s_derivable: bool
    infinite_order: bool

    @property
    def passed(self) -> bool:
        return not self.det_failures and self.omega_square and self.omega_chain and self.one_plus_s and self.infinite_order


def pairing_summary(bound: int = 2) -> PairingSummary:
    setup = build_lattice()
    L = setup.lattice
    return PairingSummary(
        det_failures=len(verify_det_lemma_grid(bound)),
        omega_square=L.contains(omega_square_relation()),
        omega_chain=L.contains(omega_chain_relation()),
        one_plus_s=one_plus_s_rule_holds(),
        one_plus_s_derivable=setup.one_plus_s_derivable,
        infinite_order=L.has_infinite_order(E_1S),
    )
