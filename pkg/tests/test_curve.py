import itertools
import math

import pytest

from agshare.curve import O, CurvePoint, EllipticCurve, group_sum, projective_points
from agshare.gf import field_new

CORPUS = [
    (7, 1, (0, 0, 0, 5, 4)),
    (2, 2, (0, 1, 0, 0, 0)),
    (5, 1, (0, 0, 0, 1, 1)),
    (5, 1, (0, 0, 0, 0, 1)),
    (11, 1, (0, 0, 0, 1, 0)),
    (2, 3, (1, 0, 0, 0, 1)),
    (3, 2, (0, 0, 0, 1, 0)),
    (2, 1, (0, 1, 0, 1, 0)),
]


def curve(p, k, coeffs):
    return EllipticCurve.from_coefficients(field_new(p, k), list(coeffs))


@pytest.fixture(params=CORPUS, ids=lambda c: f"GF({c[0]}^{c[1]}){c[2]}")
def E(request):
    return curve(*request.param)


def naive_count_prime(p, a4, a6):
    """Independent count for short Weierstrass curves over a prime field."""
    return 1 + sum(1 for x in range(p) for y in range(p) if (y * y - x ** 3 - a4 * x - a6) % p == 0)


def test_example1_points_and_multiples(ex1_curve):
    E = ex1_curve
    assert len(E.rational_points()) == 10 == naive_count_prime(7, 5, 4)
    listed = [(3, 2), (2, 6), (4, 2), (0, 5), (5, 0), (0, 2), (4, 5), (2, 1), (3, 5)]
    P0 = E.point(3, 2)
    for i, xy in enumerate(listed):
        assert E.scalar_mul(i + 1, P0) == CurvePoint(*xy)
    assert E.scalar_mul(10, P0) == O
    S = E.group_structure()
    assert (S.n1, S.n2) == (1, 10)


def test_hermitian_curve(herm_curve):
    assert len(herm_curve.rational_points()) == 9
    S = herm_curve.group_structure()
    assert (S.n1, S.n2) == (3, 3)
    assert S.supersingular_shape() == "Z(sqrt q+1)^2"


def test_enumeration_order(ex1_curve):
    pts = ex1_curve.rational_points()
    assert pts[0] == O
    assert pts[1:] == sorted(pts[1:])


def test_identity_and_inverse(E):
    for P in E.rational_points():
        assert E.add(P, O) == P == E.add(O, P)
        assert E.add(P, E.neg(P)) == O


def test_group_law_exhaustive(E):
    pts = E.rational_points()
    for P, Q in itertools.product(pts, repeat=2):
        assert E.add(P, Q) == E.add(Q, P)
    if len(pts) <= 30:
        for P, Q, R in itertools.product(pts, repeat=3):
            assert E.add(E.add(P, Q), R) == E.add(P, E.add(Q, R))


def test_order_annihilates(E):
    N = len(E.rational_points())
    assert all(E.scalar_mul(N, P) == O for P in E.rational_points())


def test_structure_invariants(E):
    S = E.group_structure()
    q = E.field.q
    assert S.n2 % S.n1 == 0
    assert (q - 1) % S.n1 == 0
    assert S.order == len(E.rational_points())
    assert abs(S.order - q - 1) <= 2 * math.sqrt(q) and E.hasse_ok()
    coords = [S.coord(P) for P in E.rational_points()]
    assert len(set(coords)) == len(coords)
    for P, Q in itertools.product(E.rational_points(), repeat=2):
        assert S.coord(E.add(P, Q)) == S.add_coords(S.coord(P), S.coord(Q))


def test_singular_curve_rejected():
    with pytest.raises(ValueError):
        EllipticCurve(field_new(7), 0, 0, 0, 0, 0)      # y^2 = x^3


def test_point_off_curve_rejected(ex1_curve):
    with pytest.raises(ValueError):
        ex1_curve.point(1, 1)


def test_group_sum(ex1_curve):
    S = ex1_curve.group_structure()
    P0 = ex1_curve.point(3, 2)
    mult = {k: ex1_curve.scalar_mul(k, P0) for k in range(1, 10)}
    assert group_sum(S, []) == (0, 0)
    # multiples 2, 3 and 5 sum to zero
    assert group_sum(S, [mult[2], mult[3], mult[5]]) == (0, 0)
    assert group_sum(S, mult.values()) != (0, 0)


def test_klein_points(klein):
    pts = klein.rational_points()
    assert len(pts) == 24
    for Q in (klein.Q1, klein.Q2, klein.Q3):
        assert Q in pts
    on_y0 = [P for P in pts if P.y == 0]
    assert sorted(on_y0) == sorted([klein.Q1, klein.Q3])
    assert len(klein.participant_points()) == 21
    assert len(klein.default_D()) == 22


def test_projective_plane_size():
    F = field_new(2, 3)
    pts = list(projective_points(F))
    assert len(pts) == len(set(pts)) == 8 * 8 + 8 + 1
