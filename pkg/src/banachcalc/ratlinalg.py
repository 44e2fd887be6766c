"""Exact linear algebra over the rationals.

Vectors are tuples of rationals, matrices are tuples of row tuples. Nothing
here is optimized beyond plain Gaussian elimination; the sizes in this
library are desk scale (dimension <= 8, a few hundred rows).
"""

from __future__ import annotations

from .rationals import ONE, ZERO, rat


def vec(it):
    return tuple(rat(x) for x in it)


def mat(rows):
    m = tuple(vec(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def zeros(n):
    return tuple(ZERO for _ in range(n))


def unit(n, i):
    return tuple(ONE if j == i else ZERO for j in range(n))


def identity(n):
    return tuple(unit(n, i) for i in range(n))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vneg(u):
    return tuple(-a for a in u)


def vscale(c, u):
    return tuple(c * a for a in u)


def dot(u, v):
    if len(u) != len(v):
        raise ValueError("dot: length mismatch")
    return sum((a * b for a, b in zip(u, v)), ZERO)


def mat_vec(M, v):
    return tuple(dot(row, v) for row in M)


def transpose(M):
    return tuple(zip(*M)) if M else ()


def mat_mul(A, B):
    Bt = transpose(B)
    return tuple(tuple(dot(ra, cb) for cb in Bt) for ra in A)


def mat_eq(A, B):
    return len(A) == len(B) and all(ra == rb for ra, rb in zip(A, B))


def is_zero_vec(v):
    return all(a == 0 for a in v)


def lexpos(v):
    """Sign-normalize: flip so the first nonzero coordinate is positive."""
    for a in v:
        if a != 0:
            return v if a > 0 else vneg(v)
    return v


def primitive_direction(v):
    """Canonical representative of the line through v: lexpos, first nonzero = 1."""
    for a in v:
        if a != 0:
            s = a if a > 0 else -a
            return tuple(x / s for x in (v if a > 0 else vneg(v)))
    return v


def rref(M):
    """Reduced row echelon form. Returns (rows as list of tuples, pivot column list)."""
    rows = [list(r) for r in M]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in rows], pivots


def rank(M):
    if not M:
        return 0
    return len(rref(M)[1])


def nullspace(M):
    """Canonical basis of {x : M x = 0}; one vector per free column, free var = 1."""
    if not M:
        return []
    ncols = len(M[0])
    rows, pivots = rref(M)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for ri, pc in enumerate(pivots):
            v[pc] = -rows[ri][fc]
        basis.append(tuple(v))
    return basis


def solve(M, b):
    """Solve the square system M x = b exactly; None if singular."""
    n = len(M)
    if n == 0:
        return ()
    aug = [list(row) + [bv] for row, bv in zip(M, b)]
    for c in range(n):
        pr = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pr is None:
            return None
        aug[c], aug[pr] = aug[pr], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(aug[i][n] for i in range(n))


def inverse(M):
    """Exact inverse of a square matrix; None if singular."""
    n = len(M)
    aug = [list(row) + list(unit(n, i)) for i, row in enumerate(M)]
    for c in range(n):
        pr = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pr is None:
            return None
        aug[c], aug[pr] = aug[pr], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(aug[i][n:]) for i in range(n))


def pivot_rows(columns):
    """Row indices where pivots land when eliminating the given column family.

    columns is a matrix whose ROWS are ambient coordinates (i.e. the n x k
    matrix of k column vectors). Greedy lowest-index choice, deterministic.
    """
    rows, pivots = rref(transpose(columns))
    return pivots  # pivot columns of the transpose = pivot rows of the matrix


def column_rank(columns):
    return rank(columns) if columns else 0
