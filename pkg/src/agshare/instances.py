"""The concrete curves, point sets and schemes worked through in the examples."""

from __future__ import annotations

from .code import eval_code
from .curve import EllipticCurve, KleinQuartic
from .funcspace import basis_elliptic_mO
from .gf import field_new
from .lsss import scheme_from_ag


def example1_curve() -> EllipticCurve:
    """y^2 = x^3 + 5x + 4 over GF(7); cyclic of order 10."""
    return EllipticCurve(field_new(7), 0, 0, 0, 5, 4)


def example1_points(E=None) -> list:
    """P_i = (i+1) * (3, 2) for i = 0..8; P_0 is the dealer's point."""
    E = E or example1_curve()
    P0 = E.point(3, 2)
    return [E.scalar_mul(i + 1, P0) for i in range(9)]


def example1_labels(E=None) -> dict:
    E = E or example1_curve()
    return {P: f"P{i}" for i, P in enumerate(example1_points(E))}


def example1_scheme(m: int = 3, variant: str = "omega"):
    E = example1_curve()
    return scheme_from_ag(E, example1_points(E), m, variant)


def hermitian_curve() -> EllipticCurve:
    """y^2 + y = x^3 over GF(4); 9 points, Z3 + Z3."""
    return EllipticCurve(field_new(2, 2), 0, 1, 0, 0, 0)


HERMITIAN_ORDER = [(1, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)]


def hermitian_points(E=None) -> list:
    """P10, P01, P02, ..., P22 under this package's choice of generators."""
    E = E or hermitian_curve()
    S = E.group_structure()
    return [S.point(i, j) for i, j in HERMITIAN_ORDER]


def hermitian_labels(E=None) -> dict:
    E = E or hermitian_curve()
    S = E.group_structure()
    return {P: "P%d%d" % S.coord(P) for P in hermitian_points(E)}


def example2_scheme(variant: str = "omega"):
    E = hermitian_curve()
    return scheme_from_ag(E, hermitian_points(E), 3, variant)


def example3_points(E=None) -> list:
    E = E or example1_curve()
    pts = example1_points(E)
    return [pts[i] for i in (0, 1, 2, 3, 5, 6, 7, 8)]


def example3_code():
    E = example1_curve()
    return eval_code(basis_elliptic_mO(E, 4), example3_points(E))


def example4_code():
    E = hermitian_curve()
    return eval_code(basis_elliptic_mO(E, 4), hermitian_points(E))


def klein_curve() -> KleinQuartic:
    return KleinQuartic(field_new(2, 3))


def klein_scheme(variant: str = "omega"):
    K = klein_curve()
    return scheme_from_ag(K, K.default_D(), 4, variant)


def shamir_scheme(q: int, n: int, m: int, variant: str = "omega"):
    """Genus-0 scheme over GF(q) (q prime) on the points 0, 1, ..., n; secret at 0."""
    F = field_new(q)
    if n + 1 > q:
        raise ValueError("not enough points on the affine line")
    return scheme_from_ag(F, list(range(n + 1)), m, variant)
