"""Gaussian elimination over a :class:`~agshare.gf.Field`.

Matrices are lists of rows of integer field encodings.  Nothing here is
clever; the matrices in this package are at most a few dozen wide.
"""

from __future__ import annotations


def rref(F, rows, ncols=None):
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    M = [list(r) for r in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    add, mul, neg, inv = F.add_table, F.mul_table, F.neg_table, F.inv_table
    pivots = []
    r = 0
    nrows = len(M)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        row = M[r]
        s = inv[row[c]]
        if s != 1:
            mrow = mul[s]
            row = [mrow[x] for x in row]
            M[r] = row
        for i in range(nrows):
            if i != r:
                f = M[i][c]
                if f:
                    nf = mul[neg[f]]
                    other = M[i]
                    M[i] = [add[a][nf[b]] for a, b in zip(other, row)]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(F, rows) -> int:
    if not rows:
        return 0
    return len(rref(F, rows)[1])


def nullspace(F, rows, ncols):
    """Basis of {v : M v = 0} as a list of vectors of length ncols."""
    if not rows:
        return [[1 if j == i else 0 for j in range(ncols)] for i in range(ncols)]
    R, pivots = rref(F, rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(R, pivots):
            v[pc] = F.neg_table[row[f]]
        basis.append(v)
    return basis


def solve(F, rows, rhs, ncols=None):
    """One solution x of M x = rhs, or None when the system is inconsistent."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    if not aug:
        return [0] * ncols
    R, pivots = rref(F, aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [0] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    return x


def combination(F, vectors, target):
    """Coefficients c with sum c_i * vectors[i] == target, or None."""
    vectors = list(vectors)
    dim = len(target)
    if not vectors:
        return [] if not any(target) else None
    rows = [[v[j] for v in vectors] for j in range(dim)]
    return solve(F, rows, list(target), len(vectors))


def matmul(F, A, B):
    Bt = list(zip(*B))
    return [[F.dot(row, col) for col in Bt] for row in A]


def transpose(A):
    return [list(r) for r in zip(*A)]


def row_space_equal(F, A, B) -> bool:
    ra, rb = rank(F, A), rank(F, B)
    return ra == rb and rank(F, list(A) + list(B)) == ra
