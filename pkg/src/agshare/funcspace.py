"""Riemann-Roch bases for the three curve families used here.

* genus 0: the projective line, divisor m*(infinity), basis 1, t, ..., t^m;
* elliptic curves in Weierstrass form, divisor m*O, monomials x^i y^j
  ordered by pole order at O (x has pole order 2, y has 3);
* the Klein quartic over GF(8) with the fixed divisor 3*Q1 + Q3, basis
  x/y, 1, z/y.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .curve import CurvePoint, EllipticCurve, ProjectivePlanePoint
from .gf import Field

__all__ = [
    "Monomial", "EllipticFunction", "KleinFunction", "RRBasis",
    "basis_genus0", "basis_elliptic_mO", "basis_klein", "evaluate_matrix",
]


def _poly_eval(F: Field, coeffs, x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), c)
    return acc


def _power(var, e):
    if e == 0:
        return "1"
    return var if e == 1 else f"{var}^{e}"


@dataclass(frozen=True)
class Monomial:
    """t^degree on the affine line."""

    field: Field
    degree: int

    def __call__(self, t: int) -> int:
        return self.field.pow(t, self.degree)

    def __str__(self):
        return _power("t", self.degree)


@dataclass(frozen=True)
class EllipticFunction:
    """a(x) + b(x) * y, with a and b coefficient lists (low degree first)."""

    field: Field
    a: tuple
    b: tuple = ()

    def __call__(self, P: CurvePoint) -> int:
        if P.is_infinity:
            raise ValueError("polynomial functions have a pole at O")
        F = self.field
        return F.add(_poly_eval(F, self.a, P.x), F.mul(_poly_eval(F, self.b, P.x), P.y))

    def pole_order(self) -> int:
        orders = [2 * i for i, c in enumerate(self.a) if c]
        orders += [2 * i + 3 for i, c in enumerate(self.b) if c]
        return max(orders, default=0)

    @classmethod
    def monomial(cls, field, i, j):
        coeffs = tuple([0] * i + [1])
        return cls(field, coeffs, ()) if j == 0 else cls(field, (), coeffs)

    def __str__(self):
        F = self.field
        terms = []
        for part, suffix in ((self.a, ""), (self.b, "y")):
            for i, c in enumerate(part):
                if not c:
                    continue
                mono = "*".join(s for s in (_power("x", i) if i else "", suffix) if s) or "1"
                terms.append(mono if c == 1 else f"{F.format(c)}*{mono}")
        return " + ".join(terms) or "0"


@dataclass(frozen=True)
class KleinFunction:
    """(a x + b y + c z) / y on the Klein quartic."""

    field: Field
    a: int
    b: int
    c: int

    def __call__(self, P: ProjectivePlanePoint) -> int:
        F = self.field
        x, y, z = P
        if y == 0:
            raise ValueError(f"pole: y = 0 at {P}")
        num = F.add(F.add(F.mul(self.a, x), F.mul(self.b, y)), F.mul(self.c, z))
        return F.div(num, y)

    def __str__(self):
        named = {(1, 0, 0): "x/y", (0, 1, 0): "1", (0, 0, 1): "z/y"}
        key = (self.a, self.b, self.c)
        if key in named:
            return named[key]
        return f"({self.a}*x + {self.b}*y + {self.c}*z)/y"


@dataclass(frozen=True)
class RRBasis:
    family: str          # "genus0" | "elliptic" | "klein"
    field: Field
    degree: int          # deg G
    genus: int
    functions: tuple
    divisor: str
    curve: object = dc_field(default=None, compare=False)

    @property
    def dimension(self) -> int:
        return len(self.functions)

    def names(self) -> list:
        return [str(f) for f in self.functions]


def basis_genus0(field: Field, m: int) -> RRBasis:
    if m < 0:
        raise ValueError("degree must be >= 0")
    funcs = tuple(Monomial(field, i) for i in range(m + 1))
    return RRBasis("genus0", field, m, 0, funcs, f"{m}*inf")


def basis_elliptic_mO(E: EllipticCurve, m: int) -> RRBasis:
    if m < 1:
        raise ValueError("L(mO) basis needs m >= 1")
    mons = []
    for j in (0, 1):
        i = 0
        while 2 * i + 3 * j <= m:
            mons.append((2 * i + 3 * j, i, j))
            i += 1
    mons.sort()
    funcs = tuple(EllipticFunction.monomial(E.field, i, j) for _, i, j in mons)
    assert len(funcs) == m
    return RRBasis("elliptic", E.field, m, 1, funcs, f"{m}*O", curve=E)


def basis_klein(field: Field) -> RRBasis:
    if (field.p, field.k) != (2, 3):
        raise ValueError("the Klein quartic construction is over GF(8)")
    funcs = (KleinFunction(field, 1, 0, 0), KleinFunction(field, 0, 1, 0),
             KleinFunction(field, 0, 0, 1))
    return RRBasis("klein", field, 4, 3, funcs, "3*Q1+Q3")


def evaluate_matrix(basis: RRBasis, D) -> list:
    """dim x |D| matrix with entry (i, j) = f_i(D[j])."""
    D = list(D)
    if len(set(D)) != len(D):
        raise ValueError("evaluation points must be distinct")
    if basis.family == "elliptic":
        for P in D:
            if P.is_infinity:
                raise ValueError("O is in the support of mO")
    elif basis.family == "klein":
        for P in D:
            if P[1] == 0:
                raise ValueError(f"basis has a pole at {P} (y = 0)")
    return [[f(P) for P in D] for f in basis.functions]
