"""Linear secret sharing from a linear code, secret at coordinate 0.

Participants are the coordinates 1..n of the sharing code.  Subsets of
participants are passed around as sorted tuples of these indices and
internally as bitmasks (bit i-1 stands for participant i).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb
from typing import Optional

import numpy as np

from . import linalg
from .code import (DEFAULT_CODEWORD_BUDGET, LinearCode, codeword_blocks, dual_code, eval_code,
                   min_distance, min_distance_by_rank, span_blocks)
from .curve import EllipticCurve, KleinQuartic
from .errors import BudgetExceeded, PreconditionError, UnqualifiedSetError
from .funcspace import basis_elliptic_mO, basis_genus0, basis_klein
from .gf import Field

__all__ = [
    "Scheme", "ShareVector", "AccessStructure", "CheatReport", "PrivacyVerdict",
    "scheme_from_ag", "share", "reconstruct", "is_qualified", "is_qualified_lemma1",
    "minimal_access_structure", "threshold_check", "cheat_parameters", "is_Q2", "is_Q3",
    "multiplicativity", "strong_multiplicativity", "privacy_audit", "theorem1_check",
    "DEFAULT_SUBSET_BUDGET", "DEFAULT_RANDOMNESS_BUDGET",
]

DEFAULT_SUBSET_BUDGET = 1 << 22
DEFAULT_RANDOMNESS_BUDGET = 10 ** 6


def _mask(A) -> int:
    m = 0
    for i in A:
        m |= 1 << (i - 1)
    return m


def _members(mask: int) -> tuple:
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _sorted_sets(sets) -> tuple:
    return tuple(sorted((tuple(sorted(s)) for s in sets), key=lambda s: (len(s), s)))


class Scheme:
    """An ideal LSSS: secret = coordinate 0 of a codeword, shares = 1..n."""

    def __init__(self, code: LinearCode, provenance: Optional[dict] = None, seed: int = 0):
        n = code.N - 1
        if n <= 1:
            raise PreconditionError("a scheme needs at least two participants")
        cols = code.columns()
        if not any(cols[0]):
            raise PreconditionError("column m_0 is zero; the secret is always 0")
        for j, c in enumerate(cols):
            if not any(c):
                # e_j would be a weight-1 codeword of the dual
                raise PreconditionError(f"dual code has a weight-1 codeword at position {j}")
        self.code = code
        self.field = code.field
        self.n = n
        self.k = code.k
        self.columns = cols
        self.provenance = dict(provenance or code.provenance)
        self.seed = seed
        self._rng = random.Random(seed)
        self._dual = None
        self._share_basis = None

    @property
    def dual(self) -> LinearCode:
        if self._dual is None:
            self._dual = dual_code(self.code)
        return self._dual

    @property
    def participants(self) -> tuple:
        return tuple(range(1, self.n + 1))

    @property
    def complexity(self) -> int:
        """Total share size in field elements (n for an ideal scheme)."""
        return self.n

    def share_basis(self):
        """(u1, K): u1 . m_0 = 1 and K spans {u : u . m_0 = 0}."""
        if self._share_basis is None:
            F = self.field
            m0 = self.columns[0]
            u1 = linalg.solve(F, [m0], [1], self.k)
            K = linalg.nullspace(F, [m0], self.k)
            self._share_basis = (u1, K)
        return self._share_basis

    def __repr__(self):
        v = self.provenance.get("variant", "?")
        return f"Scheme(n={self.n}, code=[{self.code.N},{self.k}], variant={v})"


@dataclass(frozen=True)
class ShareVector:
    secret: int
    shares: tuple

    @property
    def codeword(self) -> tuple:
        return (self.secret,) + tuple(self.shares)

    def restrict(self, A) -> dict:
        return {i: self.shares[i - 1] for i in A}


def scheme_from_ag(curve, D, m: Optional[int] = None, variant: str = "omega",
                   seed: int = 0) -> Scheme:
    """LSSS from C_Omega(D, G) (variant "omega") or C_L(D, G) ("functional").

    ``curve`` is a Field (genus 0, the affine line), an EllipticCurve (G = mO)
    or a KleinQuartic (G = 3 Q1 + Q3).  D[0] is the dealer's point.
    """
    if variant not in ("omega", "functional"):
        raise ValueError(f"unknown variant {variant!r}")
    D = list(D)
    if isinstance(curve, Field):
        basis = basis_genus0(curve, m)
        family, field = "genus0", curve
    elif isinstance(curve, EllipticCurve):
        for P in D:
            if not curve.contains(P):
                raise ValueError(f"{P} is not on the curve")
        basis = basis_elliptic_mO(curve, m)
        family, field = "elliptic", curve.field
    elif isinstance(curve, KleinQuartic):
        if m not in (None, 4):
            raise PreconditionError("the Klein divisor 3*Q1+Q3 has degree 4")
        for P in D:
            if curve.equation(*P) != 0:
                raise ValueError(f"{P} is not on the Klein quartic")
        basis = basis_klein(curve.field)
        family, field = "klein", curve.field
    else:
        raise TypeError(f"unsupported curve {curve!r}")
    functional = eval_code(basis, D)
    code = functional if variant == "functional" else dual_code(functional)
    prov = {"family": family, "genus": basis.genus, "m": basis.degree, "variant": variant,
            "divisor": basis.divisor, "basis": basis.names(), "points": D, "field": str(field),
            "curve": curve}
    return Scheme(code, prov, seed=seed)


def share(s: Scheme, secret: int, rng=None) -> ShareVector:
    """Deal ``secret``: u uniform on {u : u . m_0 = secret}, shares = u M."""
    F = s.field
    rng = s._rng if rng is None else rng
    u1, K = s.share_basis()
    u = [F.mul(secret, a) for a in u1]
    for kv in K:
        r = rng.randrange(F.q)
        if r:
            u = [F.add(a, F.mul(r, b)) for a, b in zip(u, kv)]
    word = s.code.encode(u)
    assert word[0] == secret
    return ShareVector(word[0], tuple(word[1:]))


def _dual_vector(s: Scheme, A):
    """Dual codeword v with v_0 = 1 and support in {0} + A, or None."""
    F = s.field
    H = s.dual.generator
    allowed = {0} | set(A)
    rows = [[h[j] for h in H] for j in range(s.code.N) if j not in allowed]
    rhs = [0] * len(rows)
    rows.append([h[0] for h in H])
    rhs.append(1)
    x = linalg.solve(F, rows, rhs, len(H))
    if x is None:
        return None
    return [F.dot(x, col) for col in zip(*H)]


def reconstruct(s: Scheme, A, shares) -> int:
    """Recover the secret from the shares of A as -sum v_i c_i (v from the dual code)."""
    A = tuple(sorted(set(A)))
    if isinstance(shares, ShareVector):
        shares = shares.restrict(A)
    missing = [i for i in A if i not in shares]
    if missing:
        raise ValueError(f"missing shares for participants {missing}")
    v = _dual_vector(s, A)
    if v is None:
        raise UnqualifiedSetError(f"{list(A)} is not qualified")
    F = s.field
    acc = 0
    for i in A:
        acc = F.add(acc, F.mul(v[i], shares[i]))
    return F.neg(acc)


def is_qualified(s: Scheme, A) -> bool:
    """m_0 lies in the span of the columns m_i, i in A."""
    F = s.field
    cols = [s.columns[i] for i in A]
    if not cols:
        return False
    r = linalg.rank(F, cols)
    return linalg.rank(F, cols + [s.columns[0]]) == r


def is_qualified_lemma1(s: Scheme, A) -> bool:
    """A dual codeword with v_0 = 1 is supported inside {0} + A."""
    return _dual_vector(s, A) is not None


@dataclass(frozen=True)
class AccessStructure:
    n: int
    minimal: tuple

    def __post_init__(self):
        masks = [_mask(A) for A in self.minimal]
        for a, b in itertools.permutations(masks, 2):
            if a & b == a:
                raise ValueError("minimal sets do not form an antichain")

    @property
    def masks(self) -> list:
        return [_mask(A) for A in self.minimal]

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def contains(self, A) -> bool:
        m = _mask(A) if not isinstance(A, int) else A
        return any(mm & m == mm for mm in self.masks)

    def sizes(self) -> dict:
        out = {}
        for A in self.minimal:
            out[len(A)] = out.get(len(A), 0) + 1
        return dict(sorted(out.items()))

    def qualified_table(self, budget: int = DEFAULT_SUBSET_BUDGET) -> np.ndarray:
        """Boolean array indexed by bitmask: is the subset qualified."""
        if 2 ** self.n > budget:
            raise BudgetExceeded("subset lattice", 2 ** self.n, budget)
        all_masks = np.arange(2 ** self.n, dtype=np.int64)
        table = np.zeros(2 ** self.n, dtype=bool)
        for mm in self.masks:
            table |= (all_masks & mm) == mm
        return table

    def maximal_unqualified(self, budget: int = DEFAULT_SUBSET_BUDGET) -> tuple:
        table = self.qualified_table(budget)
        all_masks = np.arange(2 ** self.n, dtype=np.int64)
        maximal = ~table
        for i in range(self.n):
            bit = 1 << i
            grown = all_masks | bit
            maximal &= ((all_masks & bit) != 0) | table[grown]
        return _sorted_sets(_members(int(m)) for m in np.nonzero(maximal)[0])

    def to_dict(self) -> dict:
        return {"n": self.n, "minimal_qualified": [list(A) for A in self.minimal],
                "sizes": {str(k): v for k, v in self.sizes().items()}}


def _access_by_subsets(s: Scheme) -> list:
    found = []
    for r in range(1, s.n + 1):
        for A in itertools.combinations(range(1, s.n + 1), r):
            m = _mask(A)
            if any(f & m == f for f in found):
                continue
            if is_qualified(s, A):
                found.append(m)
    return found


def _minimal_masks(masks) -> list:
    kept = []
    for m in sorted(set(masks), key=lambda m: (bin(m).count("1"), m)):
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


def _access_by_codewords(s: Scheme, budget: int) -> list:
    weights = (1 << np.arange(s.n, dtype=np.int64))
    supports = set()
    for block in codeword_blocks(s.dual, budget):
        block = block[block[:, 0] != 0]
        if len(block):
            m = ((block[:, 1:] != 0).astype(np.int64) * weights).sum(axis=1)
            supports.update(np.unique(m).tolist())
    return _minimal_masks(supports)


def minimal_access_structure(s: Scheme, subset_budget: int = DEFAULT_SUBSET_BUDGET,
                             codeword_budget: int = DEFAULT_CODEWORD_BUDGET,
                             method: Optional[str] = None) -> AccessStructure:
    """min Gamma by subset scan ("subsets") or minimal dual supports ("codewords")."""
    n_subsets = 2 ** s.n
    n_words = s.field.q ** s.dual.k
    if method is None:
        if n_words <= codeword_budget and (n_words <= 32 * n_subsets or n_subsets > subset_budget):
            method = "codewords"
        elif n_subsets <= subset_budget:
            method = "subsets"
        else:
            raise BudgetExceeded("minimal access structure", min(n_words, n_subsets),
                                 max(subset_budget, codeword_budget))
    if method == "subsets":
        if n_subsets > subset_budget:
            raise BudgetExceeded("subset scan", n_subsets, subset_budget)
        masks = _access_by_subsets(s)
    elif method == "codewords":
        masks = _access_by_codewords(s, codeword_budget)
    else:
        raise ValueError(f"unknown method {method!r}")
    return AccessStructure(s.n, _sorted_sets(_members(m) for m in masks))


def threshold_check(a: AccessStructure) -> Optional[int]:
    """t if min Gamma is exactly the t-subsets of the participants, else None."""
    sizes = {len(A) for A in a.minimal}
    if len(sizes) != 1:
        return None
    t = sizes.pop()
    return t if len(a.minimal) == comb(a.n, t) else None


def is_Q2(a: AccessStructure, budget: int = DEFAULT_SUBSET_BUDGET) -> bool:
    """No two unqualified sets cover all participants."""
    table = a.qualified_table(budget)
    full = a.full_mask
    for B in a.maximal_unqualified(budget):
        if not table[full & ~_mask(B)]:
            return False
    return True


def is_Q3(a: AccessStructure, budget: int = DEFAULT_SUBSET_BUDGET) -> bool:
    """No three unqualified sets cover all participants."""
    table = a.qualified_table(budget)
    full = a.full_mask
    maximal = [_mask(B) for B in a.maximal_unqualified(budget)]
    for i, b in enumerate(maximal):
        for c in maximal[i:]:
            if not table[full & ~(b | c)]:
                return False
    return True


@dataclass(frozen=True)
class CheatReport:
    d_min: int
    max_unqualified: int
    n: int
    bounds: Optional[tuple] = None
    variant: Optional[str] = None

    @property
    def d_cheat(self) -> int:
        return self.n - self.max_unqualified

    @property
    def within_bounds(self) -> Optional[bool]:
        if self.bounds is None:
            return None
        lo, hi = self.bounds
        return lo <= self.d_min <= self.d_cheat <= hi

    def to_dict(self) -> dict:
        return {"d_min": self.d_min, "d_cheat": self.d_cheat,
                "max_unqualified_size": self.max_unqualified,
                "bounds": list(self.bounds) if self.bounds else None,
                "within_bounds": self.within_bounds,
                # the window is stated for schemes built from C_L
                "bounds_apply": self.variant == "functional"}


def cheat_parameters(s: Scheme, access: Optional[AccessStructure] = None,
                     subset_budget: int = DEFAULT_SUBSET_BUDGET,
                     codeword_budget: int = DEFAULT_CODEWORD_BUDGET) -> CheatReport:
    """d_min of the share code (punctured at the secret) and d_cheat.

    The bound pair (n - m, n - m + 2g) is attached for AG schemes and
    checked, not assumed.
    """
    access = access or minimal_access_structure(s, subset_budget, codeword_budget)
    punctured = s.code.puncture([0])
    if punctured.codeword_count() <= codeword_budget:
        d_min = min_distance(punctured, codeword_budget)
    else:
        d_min = min_distance_by_rank(punctured, subset_budget)
    max_unq = max(len(B) for B in access.maximal_unqualified(subset_budget))
    bounds = None
    if "m" in s.provenance and "genus" in s.provenance:
        m, g = s.provenance["m"], s.provenance["genus"]
        bounds = (s.n - m, s.n - m + 2 * g)
    return CheatReport(d_min, max_unq, s.n, bounds, s.provenance.get("variant"))


def _sym_square(F: Field, v) -> list:
    k = len(v)
    return [F.mul(v[a], v[b]) for a in range(k) for b in range(a, k)]


def multiplicativity(s: Scheme, participants=None) -> Optional[list]:
    """Recombination vector r with s s' = sum r_i c_i c'_i, or None.

    Restricting ``participants`` gives the check used for strong
    multiplicativity; the returned vector is indexed like ``participants``.
    """
    F = s.field
    idx = list(participants) if participants is not None else list(range(1, s.n + 1))
    cols = [_sym_square(F, s.columns[i]) for i in idx]
    return linalg.combination(F, cols, _sym_square(F, s.columns[0]))


def strong_multiplicativity(s: Scheme, access: Optional[AccessStructure] = None,
                            budget: int = DEFAULT_SUBSET_BUDGET) -> Optional[dict]:
    """For every A with P - A unqualified, a recombination vector over A.

    Only the complements of maximal unqualified sets need checking: any
    larger A can reuse the vector with zeros.
    """
    access = access or minimal_access_structure(s, budget)
    witnesses = {}
    for B in access.maximal_unqualified(budget):
        A = tuple(i for i in range(1, s.n + 1) if i not in set(B))
        r = multiplicativity(s, A)
        if r is None:
            return None
        witnesses[A] = r
    return witnesses


@dataclass(frozen=True)
class PrivacyVerdict:
    identical: bool
    qualified: bool

    @property
    def consistent(self) -> bool:
        """Perfect privacy: distributions agree exactly when A is unqualified."""
        return self.identical != self.qualified


def _restricted_distribution(s: Scheme, A, secret: int, budget: int) -> np.ndarray:
    """A's share tuples for every admissible dealer randomness (with multiplicity)."""
    F = s.field
    u1, K = s.share_basis()
    base = s.code.encode([F.mul(secret, a) for a in u1])
    base = np.array([base[i] for i in A], dtype=np.int64)
    if not K:
        return base[None, :]
    kernel = [[row[i] for i in A] for row in (s.code.encode(kv) for kv in K)]
    blocks = span_blocks(F, kernel, budget, what="dealer randomness")
    return np.concatenate([F.add_np[b, base[None, :]] for b in blocks])


def privacy_audit(s: Scheme, A, s1: int, s2: int,
                  budget: int = DEFAULT_RANDOMNESS_BUDGET) -> PrivacyVerdict:
    """Compare the exact multisets of A's shares over all dealer randomness."""
    A = tuple(sorted(set(A)))
    qualified = bool(A) and is_qualified(s, A)
    if not A:
        return PrivacyVerdict(True, False)
    d1 = _restricted_distribution(s, A, s1, budget)
    d2 = _restricted_distribution(s, A, s2, budget)
    u1, c1 = np.unique(d1, axis=0, return_counts=True)
    u2, c2 = np.unique(d2, axis=0, return_counts=True)
    identical = u1.shape == u2.shape and bool((u1 == u2).all()) and bool((c1 == c2).all())
    return PrivacyVerdict(identical, qualified)


def theorem1_check(s: Scheme, access: AccessStructure,
                   budget: int = DEFAULT_SUBSET_BUDGET) -> dict:
    """Every |A| < n - m unqualified, every |A| >= n - m + 2g qualified (all subsets)."""
    m, g = s.provenance["m"], s.provenance["genus"]
    lo, hi = s.n - m, s.n - m + 2 * g
    table = access.qualified_table(budget)
    sizes = _popcounts(s.n)
    below_ok = not bool(table[sizes < lo].any())
    above_ok = bool(table[sizes >= hi].all())
    return {"lower": lo, "upper": hi, "below_unqualified": below_ok,
            "above_qualified": above_ok, "subsets_checked": int(len(table)),
            "applies": s.provenance.get("variant") == "omega"}


def _popcounts(n: int) -> np.ndarray:
    counts = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        counts = np.concatenate([counts, counts + 1])
    return counts
