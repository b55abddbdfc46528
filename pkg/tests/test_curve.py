import pytest

from cannibal.curve import (
    AUT_I,
    AUT_OMEGA,
    AUT_SIGMA,
    BASIS,
    GENERATORS,
    INFINITY,
    CurveAutomorphism,
    CurvePoint,
    GL2Z3Matrix,
    all_gl2,
    coordinates_table,
    enumerate_points,
    generate_group,
    is_group_automorphism,
    matrix_of,
    point_order,
    subgroup_c3,
    subgroup_g0,
    subgroup_g1,
    subgroup_g24,
    subgroup_q8,
)
from cannibal.errors import NotGroupAutomorphism
from cannibal.rings import F4

ALPHA = F4.alpha


def test_nine_points_all_of_order_three():
    pts = enumerate_points()
    assert len(pts) == 9
    assert all(point_order(P) == 3 for P in pts if not P.is_infinity)


def test_explicit_addition():
    P = CurvePoint(F4(0), F4(0))
    Q = CurvePoint(F4(1), ALPHA)
    assert P + Q == CurvePoint(ALPHA, ALPHA)
    assert P + (-P) == INFINITY
    assert P + P + P == INFINITY


def test_group_law_is_associative_and_commutative():
    pts = enumerate_points()
    for P in pts:
        for Q in pts:
            assert P + Q == Q + P
            for R in pts:
                assert (P + Q) + R == P + (Q + R)


def test_basis_spans():
    assert len(coordinates_table()) == 9
    assert coordinates_table()[BASIS[1]] == (0, 1)


@pytest.mark.parametrize(
    "name,entries",
    [("-1", (-1, 0, 0, -1)), ("omega", (1, 1, 0, 1)), ("i", (0, -1, 1, 0)), ("sigma", (1, 0, 0, -1))],
)
def test_generator_matrices(name, entries):
    assert matrix_of(GENERATORS[name]) == GL2Z3Matrix.of(*entries)


def test_determinants():
    dets = [matrix_of(GENERATORS[n]).det for n in ("-1", "omega", "i", "sigma")]
    assert dets == [1, 1, 1, 2]


def test_matrix_of_is_a_homomorphism():
    auts = list(GENERATORS.values())
    for a in auts:
        for b in auts:
            assert matrix_of(a.then(b)) == matrix_of(a) * matrix_of(b)


def test_subgroup_orders():
    G = generate_group(matrix_of(a) for a in GENERATORS.values())
    assert len(G) == 48 and G == all_gl2()
    assert len(subgroup_g24()) == 24
    assert len(subgroup_g0()) == 12
    assert len(subgroup_g1()) == 6
    assert len(subgroup_q8()) == 8
    assert len(subgroup_c3(matrix_of(AUT_OMEGA))) == 3


def test_g1_is_generated_by_omega_and_sigma():
    assert generate_group([matrix_of(AUT_OMEGA), matrix_of(AUT_SIGMA)]) == subgroup_g1()


def test_automorphism_orders():
    assert matrix_of(AUT_OMEGA).order() == 3
    assert matrix_of(AUT_I).order() == 4
    assert matrix_of(AUT_SIGMA).order() == 2


def test_non_automorphism_is_rejected():
    bad = CurveAutomorphism("swap", lambda x, y: (x + 1, y))
    assert not is_group_automorphism(bad)
    with pytest.raises(NotGroupAutomorphism):
        matrix_of(bad)
