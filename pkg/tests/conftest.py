"""Shared oracles for the test suite.

The hull-membership oracle here is deliberately independent of the package:
pure fractions.Fraction arithmetic and Caratheodory enumeration (a point lies
in the hull iff it is a convex combination of at most dim+1 of the points),
so polytope results can be cross-checked without trusting the kernel LP.
"""

from fractions import Fraction
from itertools import combinations


def _fr(x):
    return Fraction(x.numerator, x.denominator)


def _solve_exact(rows, rhs):
    """Gaussian elimination over Fraction; None when inconsistent."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    aug = [[Fraction(v) for v in row] + [Fraction(b)]
           for row, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [v / pv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = aug[i][n]
    return x


def conv_contains(point, points) -> bool:
    """Is point in conv(points)? Caratheodory over exact fractions."""
    pts = [tuple(_fr(a) for a in p) for p in points]
    target = tuple(_fr(a) for a in point)
    dim = len(target)
    for k in range(1, dim + 2):
        for subset in combinations(range(len(pts)), k):
            # barycentric system: sum w_i p_i = target, sum w_i = 1
            rows = [[pts[i][d] for i in subset] for d in range(dim)]
            rows.append([Fraction(1)] * k)
            rhs = list(target) + [Fraction(1)]
            w = _solve_exact(rows, rhs)
            if w is None:
                continue
            # an underdetermined system yields one particular solution; that
            # is enough, since every hull member has an affinely independent
            # witnessing subset whose system is uniquely solvable
            if all(wi >= 0 for wi in w) and sum(w) == 1 and all(
                    sum(w[j] * pts[subset[j]][d] for j in range(k))
                    == target[d] for d in range(dim)):
                return True
    return False


def l1_norm_fr(v):
    return sum(abs(_fr(a)) for a in v)


def linf_norm_fr(v):
    return max(abs(_fr(a)) for a in v)
