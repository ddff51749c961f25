"""Matroid circuits of linear codes and the group-sum oracles for elliptic codes.

Here the circuits of a code C are the inclusion-minimal supports of its
nonzero codewords, i.e. the circuits of the column matroid of a parity
check matrix of C.  For the secret-sharing matroid (columns of the sharing
code's generator) pass the dual of the sharing code.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .code import DEFAULT_CODEWORD_BUDGET, LinearCode, codeword_blocks, dual_code
from .curve import GroupStructure
from .errors import PreconditionError

__all__ = [
    "CircuitSet", "OracleSpec", "circuits_from_code", "oracle_thm5", "oracle_thm6",
    "matroid_self_dual", "minimal_qualified_from_circuits", "is_circuit_of_columns",
]


def _members0(mask: int) -> tuple:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


@dataclass(frozen=True)
class CircuitSet:
    N: int
    circuits: tuple
    provenance: str = "code"

    def __post_init__(self):
        sets = [frozenset(c) for c in self.circuits]
        for a, b in itertools.permutations(sets, 2):
            if a < b:
                raise ValueError("circuits do not form an antichain")

    def by_size(self) -> dict:
        out = {}
        for c in self.circuits:
            out.setdefault(len(c), []).append(list(c))
        return dict(sorted(out.items()))

    def as_sets(self) -> set:
        return {frozenset(c) for c in self.circuits}

    def to_dict(self) -> dict:
        return {"ground_set_size": self.N,
                "circuits_by_size": {str(k): v for k, v in self.by_size().items()}}


def circuits_from_code(C: LinearCode, budget: int = DEFAULT_CODEWORD_BUDGET) -> CircuitSet:
    weights = 1 << np.arange(C.N, dtype=np.int64)
    supports = set()
    for block in codeword_blocks(C, budget):
        m = ((block != 0).astype(np.int64) * weights).sum(axis=1)
        supports.update(np.unique(m[m != 0]).tolist())
    kept = []
    for m in sorted(supports, key=lambda m: (bin(m).count("1"), m)):
        if not any(k & m == k for k in kept):
            kept.append(m)
    circuits = sorted((_members0(m) for m in kept), key=lambda c: (len(c), c))
    return CircuitSet(C.N, tuple(circuits), "code")


def is_circuit_of_columns(field, columns, S) -> bool:
    """S is a minimal dependent set of the given columns."""
    S = list(S)
    cols = [columns[j] for j in S]
    if linalg.rank(field, cols) != len(S) - 1:
        return False
    return all(linalg.rank(field, cols[:i] + cols[i + 1:]) == len(S) - 1 for i in range(len(S)))


def matroid_self_dual(C: LinearCode, budget: int = DEFAULT_CODEWORD_BUDGET):
    """(verdict, circuits of C, circuits of the dual)."""
    mine = circuits_from_code(C, budget)
    theirs = circuits_from_code(dual_code(C), budget)
    return mine.as_sets() == theirs.as_sets(), mine, theirs


def minimal_qualified_from_circuits(circuits: CircuitSet, secret: int = 0) -> list:
    out = [tuple(i for i in c if i != secret) for c in circuits.circuits if secret in c]
    return sorted(out, key=lambda A: (len(A), A))


@dataclass(frozen=True)
class OracleSpec:
    """Points of D as group coordinates, plus the divisor degree m.

    ``secret`` is the position in D of the dealer's point (access-structure oracle)
    or None (circuit oracle, where D is the whole ground set).
    """

    structure: GroupStructure
    coords: tuple
    m: int
    secret: Optional[int] = None

    @classmethod
    def from_points(cls, structure, D, m, secret=None):
        return cls(structure, tuple(structure.coord(P) for P in D), m, secret)

    def sum(self, indices) -> tuple:
        acc = (0, 0)
        for i in indices:
            acc = self.structure.add_coords(acc, self.coords[i])
        return acc

    def check_self_dual_setup(self):
        if len(self.coords) % 2 or self.m != len(self.coords) // 2:
            raise PreconditionError("need |D| even and m = |D|/2")
        if self.sum(range(len(self.coords))) != (0, 0):
            raise PreconditionError("the points of D do not sum to zero")
        if (0, 0) in self.coords:
            raise PreconditionError("D must not contain O")


def oracle_thm5(spec: OracleSpec, A) -> bool:
    """Is P - A a minimal qualified set?  A indexes D, excluding the dealer.

    |A| = m: the points of A sum to zero.  |A| = m - 1: they sum to zero,
    or adding one of them again gives zero.
    """
    A = list(A)
    if spec.secret in A:
        raise ValueError("A must not contain the dealer's point")
    zero = (0, 0)
    total = spec.sum(A)
    if len(A) == spec.m:
        return total == zero
    if len(A) == spec.m - 1:
        if total == zero:
            return True
        return any(spec.structure.add_coords(total, spec.coords[j]) == zero for j in A)
    raise ValueError(f"|A| must be m or m-1 (m = {spec.m}), got {len(A)}")


def oracle_thm6(spec: OracleSpec, A) -> bool:
    """Is D - A a circuit of the self-dual code C_L(D, mO)?  A indexes D.

    |A| = m: zero sum.  |A| = m - 1: zero sum, or the missing summand -sum(A)
    is a nonzero group element lying outside D or inside A.
    """
    spec.check_self_dual_setup()
    A = list(A)
    zero = (0, 0)
    total = spec.sum(A)
    if len(A) == spec.m:
        return total == zero
    if len(A) == spec.m - 1:
        if total == zero:
            return True
        g = spec.structure.neg_coord(total)
        in_A = g in {spec.coords[i] for i in A}
        outside_D = g not in set(spec.coords)
        return in_A or outside_D
    raise ValueError(f"|A| must be m or m-1 (m = {spec.m}), got {len(A)}")
