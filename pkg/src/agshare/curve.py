"""Elliptic curves in generalized Weierstrass form and plane-curve point search.

Points carry integer field encodings.  The point at infinity is ``O``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .gf import Field

__all__ = [
    "CurvePoint", "O", "EllipticCurve", "GroupStructure", "ProjectivePlanePoint",
    "HomogeneousPolynomial", "enumerate_plane_curve_points", "klein_quartic",
    "group_sum", "KleinQuartic",
]


class CurvePoint(NamedTuple):
    x: Optional[int]
    y: Optional[int]

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self):
        return "O" if self.x is None else f"({self.x},{self.y})"


O = CurvePoint(None, None)


class EllipticCurve:
    """y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 over ``field``."""

    def __init__(self, field: Field, a1=0, a3=0, a2=0, a4=0, a6=0):
        self.field = field
        coeffs = [int(c) for c in (a1, a3, a2, a4, a6)]
        for c in coeffs:
            if not 0 <= c < field.q:
                raise ValueError(f"coefficient {c} not an element of {field}")
        self.a1, self.a3, self.a2, self.a4, self.a6 = coeffs
        if self.discriminant() == 0:
            raise ValueError("singular curve (discriminant is zero)")
        self._points = None
        self._structure = None

    @classmethod
    def from_coefficients(cls, field, coeffs):
        """Coefficient list in config order [a1, a3, a2, a4, a6]."""
        if len(coeffs) != 5:
            raise ValueError("expected [a1, a3, a2, a4, a6]")
        return cls(field, *coeffs)

    @property
    def coefficients(self):
        return [self.a1, self.a3, self.a2, self.a4, self.a6]

    def discriminant(self) -> int:
        F = self.field
        a1, a3, a2, a4, a6 = (F(c) for c in self.coefficients)

        def c(n):
            return F(F.from_int(n))

        b2 = a1 * a1 + c(4) * a2
        b4 = c(2) * a4 + a1 * a3
        b6 = a3 * a3 + c(4) * a6
        b8 = a1 * a1 * a6 + c(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        disc = -(b2 * b2 * b8) - c(8) * b4 * b4 * b4 - c(27) * b6 * b6 + c(9) * b2 * b4 * b6
        return disc.value

    def contains(self, P: CurvePoint) -> bool:
        if P.is_infinity:
            return True
        F = self.field
        m, a = F.mul, F.add
        x, y = P
        lhs = a(a(m(y, y), m(m(self.a1, x), y)), m(self.a3, y))
        x2 = m(x, x)
        rhs = a(a(a(m(x2, x), m(self.a2, x2)), m(self.a4, x)), self.a6)
        return lhs == rhs

    def point(self, x, y) -> CurvePoint:
        P = CurvePoint(int(x), int(y))
        if not self.contains(P):
            raise ValueError(f"{P} is not on the curve")
        return P

    def _check(self, P):
        if not isinstance(P, CurvePoint) or not self.contains(P):
            raise ValueError(f"{P} is not on the curve")

    def neg(self, P: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return P
        F = self.field
        x, y = P
        return CurvePoint(x, F.sub(F.neg(y), F.add(F.mul(self.a1, x), self.a3)))

    def add(self, P: CurvePoint, Q: CurvePoint, check: bool = True) -> CurvePoint:
        if check:
            self._check(P)
            self._check(Q)
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        F = self.field
        m, a, s = F.mul, F.add, F.sub
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if y2 == self.neg(P).y:
                return O
            num = a(a(m(F.from_int(3), m(x1, x1)), m(m(F.from_int(2), self.a2), x1)),
                    s(self.a4, m(self.a1, y1)))
            den = a(a(m(F.from_int(2), y1), m(self.a1, x1)), self.a3)
        else:
            num = s(y2, y1)
            den = s(x2, x1)
        lam = F.div(num, den)
        nu = s(y1, m(lam, x1))
        x3 = s(s(s(a(m(lam, lam), m(self.a1, lam)), self.a2), x1), x2)
        y3 = s(s(F.neg(m(a(lam, self.a1), x3)), nu), self.a3)
        return CurvePoint(x3, y3)

    def scalar_mul(self, n: int, P: CurvePoint) -> CurvePoint:
        self._check(P)
        if n < 0:
            n, P = -n, self.neg(P)
        R = O
        while n:
            if n & 1:
                R = self.add(R, P, check=False)
            P = self.add(P, P, check=False)
            n >>= 1
        return R

    def rational_points(self) -> list:
        """All rational points, O first, then affine points sorted by (x, y)."""
        if self._points is None:
            pts = [O]
            for x, y in itertools.product(range(self.field.q), repeat=2):
                if self.contains(CurvePoint(x, y)):
                    pts.append(CurvePoint(x, y))
            self._points = pts
        return list(self._points)

    def order_of(self, P: CurvePoint) -> int:
        n, R = 1, P
        while not R.is_infinity:
            R = self.add(R, P, check=False)
            n += 1
        return n

    def group_structure(self) -> GroupStructure:
        if self._structure is None:
            self._structure = _compute_structure(self)
        return self._structure

    def hasse_ok(self) -> bool:
        N = len(self.rational_points())
        q = self.field.q
        return (N - q - 1) ** 2 <= 4 * q

    def format_point(self, P: CurvePoint) -> str:
        if P.is_infinity:
            return "O"
        f = self.field.format
        return f"({f(P.x)},{f(P.y)})"

    def to_dict(self) -> dict:
        return {"field": self.field.to_dict(), "coefficients": self.coefficients}

    def __str__(self):
        return f"EllipticCurve({self.field}, [a1,a3,a2,a4,a6]={self.coefficients})"


@dataclass(frozen=True)
class GroupStructure:
    """E(GF(q)) as Z_n1 + Z_n2 with explicit generators and coordinates."""

    curve: EllipticCurve
    n1: int
    n2: int
    generators: tuple
    coords: dict
    points_by_coord: dict

    @property
    def order(self) -> int:
        return self.n1 * self.n2

    def coord(self, P: CurvePoint) -> tuple:
        try:
            return self.coords[P]
        except KeyError:
            raise ValueError(f"{P} is not a rational point of the curve") from None

    def add_coords(self, a, b) -> tuple:
        return ((a[0] + b[0]) % self.n1, (a[1] + b[1]) % self.n2)

    def neg_coord(self, a) -> tuple:
        return ((-a[0]) % self.n1, (-a[1]) % self.n2)

    def point(self, i: int, j: int) -> CurvePoint:
        return self.points_by_coord[(i % self.n1, j % self.n2)]

    def supersingular_shape(self) -> Optional[str]:
        """Which of the supersingular group shapes (n1, n2) fits, if any."""
        q = self.curve.field.q
        r = math.isqrt(q)
        if self.n1 == 1:
            return "cyclic"
        if (self.n1, self.n2) == (2, (q + 1) // 2) and (q + 1) % 2 == 0:
            return "Z2+Z(q+1)/2"
        if r * r == q:
            if self.n1 == self.n2 == r - 1:
                return "Z(sqrt q-1)^2"
            if self.n1 == self.n2 == r + 1:
                return "Z(sqrt q+1)^2"
        return None


def _compute_structure(E: EllipticCurve) -> GroupStructure:
    pts = E.rational_points()
    N = len(pts)
    orders = {P: E.order_of(P) for P in pts}
    n2 = max(orders.values())
    n1 = N // n2
    g2 = next(P for P in pts if orders[P] == n2)
    multiples = [O]
    for _ in range(n2 - 1):
        multiples.append(E.add(multiples[-1], g2, check=False))
    cyclic = set(multiples)
    g1 = O
    if n1 > 1:
        for P in pts:
            if orders[P] != n1:
                continue
            R, ok = P, True
            for _ in range(n1 - 1):
                if R in cyclic:
                    ok = False
                    break
                R = E.add(R, P, check=False)
            if ok:
                g1 = P
                break
        else:  # pragma: no cover
            raise AssertionError("could not find a complementary generator")
    coords = {}
    row_start = O
    for i in range(n1):
        R = row_start
        for j in range(n2):
            coords[R] = (i, j)
            R = E.add(R, g2, check=False)
        row_start = E.add(row_start, g1, check=False)
    assert len(coords) == N, "generators do not span the group"
    assert n2 % n1 == 0 and (E.field.q - 1) % n1 == 0
    return GroupStructure(E, n1, n2, (g1, g2), coords, {v: k for k, v in coords.items()})


def group_sum(structure: GroupStructure, points) -> tuple:
    """Sum of the given rational points, as coordinates in Z_n1 + Z_n2."""
    acc = (0, 0)
    for P in points:
        acc = structure.add_coords(acc, structure.coord(P))
    return acc


# --- projective plane curves ------------------------------------------------

class ProjectivePlanePoint(NamedTuple):
    """Homogeneous coordinates normalized so the first nonzero entry is 1."""

    x: int
    y: int
    z: int

    @classmethod
    def normalize(cls, field: Field, x, y, z) -> ProjectivePlanePoint:
        coords = [int(x), int(y), int(z)]
        lead = next((c for c in coords if c), None)
        if lead is None:
            raise ValueError("(0:0:0) is not a projective point")
        s = field.inv(lead)
        return cls(*(field.mul(c, s) for c in coords))

    def __str__(self):
        return f"({self.x}:{self.y}:{self.z})"


class HomogeneousPolynomial:
    """Sum of c * x^i y^j z^k, given as {(i, j, k): c} with c a field encoding."""

    def __init__(self, field: Field, terms: dict):
        self.field = field
        self.terms = {tuple(e): int(c) for e, c in terms.items() if int(c)}
        degrees = {sum(e) for e in self.terms}
        if len(degrees) > 1:
            raise ValueError("polynomial is not homogeneous")
        self.degree = degrees.pop() if degrees else 0

    def __call__(self, x, y, z) -> int:
        F = self.field
        acc = 0
        for (i, j, k), c in self.terms.items():
            acc = F.add(acc, F.mul(c, F.mul(F.pow(x, i), F.mul(F.pow(y, j), F.pow(z, k)))))
        return acc


def projective_points(field: Field):
    """All q^2 + q + 1 points of the plane, in a fixed order."""
    q = field.q
    for y, z in itertools.product(range(q), repeat=2):
        yield ProjectivePlanePoint(1, y, z)
    for z in range(q):
        yield ProjectivePlanePoint(0, 1, z)
    yield ProjectivePlanePoint(0, 0, 1)


def enumerate_plane_curve_points(F: HomogeneousPolynomial, field: Field = None) -> list:
    field = field or F.field
    return [P for P in projective_points(field) if F(*P) == 0]


def klein_quartic(field: Field) -> HomogeneousPolynomial:
    """x^3 y + y^3 z + z^3 x."""
    return HomogeneousPolynomial(field, {(3, 1, 0): 1, (0, 3, 1): 1, (1, 0, 3): 1})


class KleinQuartic:
    """The Klein quartic over GF(8) with its distinguished points Q1, Q2, Q3."""

    genus = 3

    def __init__(self, field: Field):
        if (field.p, field.k) != (2, 3):
            raise ValueError("the Klein quartic construction is over GF(8)")
        self.field = field
        self.equation = klein_quartic(field)
        self.Q1 = ProjectivePlanePoint(1, 0, 0)
        self.Q2 = ProjectivePlanePoint(0, 1, 0)
        self.Q3 = ProjectivePlanePoint(0, 0, 1)
        self._points = None

    def rational_points(self) -> list:
        if self._points is None:
            self._points = enumerate_plane_curve_points(self.equation, self.field)
        return list(self._points)

    def participant_points(self) -> list:
        """Points other than Q3 on the lines y = a x, a != 0 (21 of them)."""
        pts = []
        for P in self.rational_points():
            if P in (self.Q1, self.Q2, self.Q3):
                continue
            x, y, _ = P
            if x and y:
                pts.append(P)
        return pts

    def default_D(self) -> list:
        return [self.Q2] + self.participant_points()

    def lines(self) -> list:
        """All q^2 + q + 1 lines a x + b y + c z = 0, as normalized (a:b:c)."""
        return list(projective_points(self.field))

    def on_line(self, line, P) -> bool:
        F = self.field
        a, b, c = line
        return F.add(F.add(F.mul(a, P[0]), F.mul(b, P[1])), F.mul(c, P[2])) == 0

    def __str__(self):
        return f"KleinQuartic({self.field})"
