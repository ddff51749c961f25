"""Linear codes over small finite fields."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .errors import BudgetExceeded, PreconditionError
from .funcspace import RRBasis, evaluate_matrix
from .gf import Field

__all__ = [
    "LinearCode", "eval_code", "dual_code", "min_distance", "min_distance_by_rank",
    "ag_distance_bounds", "schur_span_contains", "self_duality", "SelfDuality",
    "codeword_iter", "codeword_blocks", "span_blocks", "DEFAULT_CODEWORD_BUDGET",
]

DEFAULT_CODEWORD_BUDGET = 10 ** 7
_BLOCK = 1 << 16


class LinearCode:
    """A k-dimensional subspace of GF(q)^N given by a full-rank generator."""

    def __init__(self, field: Field, generator, provenance: Optional[dict] = None):
        G = [list(map(int, row)) for row in generator]
        if not G:
            raise ValueError("a code needs at least one generator row")
        N = len(G[0])
        if any(len(r) != N for r in G):
            raise ValueError("ragged generator matrix")
        if linalg.rank(field, G) != len(G):
            raise ValueError("generator matrix is not of full row rank")
        self.field = field
        self.generator = G
        self.N = N
        self.k = len(G)
        self.provenance = dict(provenance or {})

    def column(self, j: int) -> list:
        return [row[j] for row in self.generator]

    def columns(self) -> list:
        return [list(c) for c in zip(*self.generator)]

    def encode(self, message) -> list:
        F = self.field
        out = [0] * self.N
        for u, row in zip(message, self.generator):
            if u:
                mu = F.mul_table[u]
                out = [F.add_table[a][mu[b]] for a, b in zip(out, row)]
        return out

    def contains(self, word) -> bool:
        return linalg.rank(self.field, self.generator + [list(word)]) == self.k

    def same_space(self, other: LinearCode) -> bool:
        return self.N == other.N and linalg.row_space_equal(self.field, self.generator, other.generator)

    def puncture(self, positions) -> LinearCode:
        """Delete the given coordinates (keeping a basis of what remains)."""
        drop = set(positions)
        keep = [j for j in range(self.N) if j not in drop]
        rows = [[row[j] for j in keep] for row in self.generator]
        R, _ = linalg.rref(self.field, rows, len(keep))
        return LinearCode(self.field, R, {"punctured_from": self.provenance, "dropped": sorted(drop)})

    def codeword_count(self) -> int:
        return self.field.q ** self.k

    def __repr__(self):
        return f"LinearCode([{self.N}, {self.k}] over GF({self.field.q}))"


def eval_code(basis: RRBasis, D) -> LinearCode:
    """C_L(D, G): evaluations of the basis of L(G) at the points of D."""
    D = list(D)
    g, m = basis.genus, basis.degree
    if basis.family == "klein":
        expected = 3
    else:
        if not (2 * g - 2 < m < len(D)):
            raise PreconditionError(
                f"divisor degree {m} outside the window 2g-2 < m < |D| = {len(D)}")
        expected = m - g + 1
    M = evaluate_matrix(basis, D)
    if linalg.rank(basis.field, M) != expected:
        raise PreconditionError(f"evaluation matrix has rank < {expected}")
    prov = {"family": basis.family, "genus": g, "m": m, "divisor": basis.divisor,
            "basis": basis.names(), "kind": "functional"}
    return LinearCode(basis.field, M, prov)


def dual_code(C: LinearCode) -> LinearCode:
    if C.k == C.N:
        raise ValueError("the dual of the full space is the zero code")
    H = linalg.nullspace(C.field, C.generator, C.N)
    prov = dict(C.provenance)
    if prov.get("kind") == "functional":
        prov["kind"] = "residue"
    elif prov.get("kind") == "residue":
        prov["kind"] = "functional"
    return LinearCode(C.field, H, prov)


def span_blocks(field: Field, generator, budget: int = DEFAULT_CODEWORD_BUDGET,
                block: int = _BLOCK, what: str = "span"):
    """Yield all u G for u in GF(q)^rows, as numpy blocks, u in lexicographic order.

    The generator need not have full rank; repeated vectors are repeated.
    """
    F, q, k = field, field.q, len(generator)
    total = q ** k
    if total > budget:
        raise BudgetExceeded(what, total, budget)
    G = np.array(generator, dtype=np.int64).reshape(k, -1)
    width = G.shape[1]
    weights = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, block):
        idx = np.arange(start, min(start + block, total), dtype=np.int64)
        msgs = (idx[:, None] // weights[None, :]) % q
        words = np.zeros((len(idx), width), dtype=np.int64)
        for r in range(k):
            words = F.add_np[words, F.mul_np[msgs[:, r:r + 1], G[r][None, :]]]
        yield words


def codeword_blocks(C: LinearCode, budget: int = DEFAULT_CODEWORD_BUDGET, block: int = _BLOCK):
    """Yield numpy arrays of codewords; messages run in lexicographic order."""
    return span_blocks(C.field, C.generator, budget, block, what=f"codewords of {C!r}")


def codeword_iter(C: LinearCode, budget: int = DEFAULT_CODEWORD_BUDGET):
    for block in codeword_blocks(C, budget):
        for w in block:
            yield tuple(int(v) for v in w)


def min_distance(C: LinearCode, budget: int = DEFAULT_CODEWORD_BUDGET) -> int:
    """Minimum nonzero weight, by enumerating all q^k codewords."""
    best = C.N
    for block in codeword_blocks(C, budget):
        w = np.count_nonzero(block, axis=1)
        w = w[w > 0]
        if len(w):
            best = min(best, int(w.min()))
    return best


def min_distance_by_rank(C: LinearCode, budget: int = 1 << 22) -> int:
    """Minimum distance from column ranks: d = N - max{|S| : rank(G_S) < k}.

    A nonzero codeword vanishes on S exactly when the columns in S do not
    span GF(q)^k.  Rank-deficient sets are closed under taking subsets, so
    the sizes are scanned upwards from k until none is deficient.
    """
    F, N, k = C.field, C.N, C.k
    cols = C.columns()
    largest = k - 1
    spent = 0
    for s in range(k, N + 1):
        found = False
        for S in itertools.combinations(range(N), s):
            spent += 1
            if spent > budget:
                raise BudgetExceeded("column subsets for min distance", spent, budget)
            if linalg.rank(F, [cols[j] for j in S]) < k:
                found = True
                break
        if not found:
            break
        largest = s
    return N - largest


def ag_distance_bounds(N: int, m: int, g: int) -> tuple:
    """Designed distances (C_L, C_Omega) for length N and deg G = m."""
    return max(N - m, 1), max(m - 2 * g + 2, 1)


def schur_span_contains(field: Field, columns, target):
    """Coefficients expressing target in the span of columns, or None."""
    return linalg.combination(field, columns, target)


@dataclass(frozen=True)
class SelfDuality:
    kind: str                      # "exact" | "monomial" | "none"
    diagonal: Optional[tuple] = None

    @property
    def self_dual(self) -> bool:
        return self.kind != "none"


def self_duality(C: LinearCode, budget: int = DEFAULT_CODEWORD_BUDGET) -> SelfDuality:
    """Is C equal to its dual, exactly or after scaling columns by nonzero constants?

    The monomial test looks for a nonzero diagonal d with G diag(d) G^T = 0;
    then C diag(d) is a k-dimensional subspace of the dual, hence equal to it.
    """
    F, N, k = C.field, C.N, C.k
    if 2 * k != N:
        return SelfDuality("none")
    G = C.generator
    gram = linalg.matmul(F, G, linalg.transpose(G))
    if not any(any(r) for r in gram):
        return SelfDuality("exact", tuple([1] * N))
    eqs = []
    for a in range(k):
        for b in range(a, k):
            eqs.append([F.mul(G[a][j], G[b][j]) for j in range(N)])
    basis = linalg.nullspace(F, eqs, N)
    if not basis:
        return SelfDuality("none")
    if F.q ** len(basis) > budget:
        raise BudgetExceeded("diagonal witness search", F.q ** len(basis), budget)
    for coeffs in itertools.product(range(F.q), repeat=len(basis)):
        d = [0] * N
        for c, v in zip(coeffs, basis):
            if c:
                d = [F.add(x, F.mul(c, y)) for x, y in zip(d, v)]
        if all(d):
            return SelfDuality("monomial", tuple(d))
    return SelfDuality("none")
