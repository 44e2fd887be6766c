"""Quantitative invariants: Rademacher type/cotype witnesses, projection
constants, injective/projective tensor norms, nuclear and 1-summing norms.

Everything that can be rational is rational: sign averages are exact, the
q = 2 / q = inf cotype paths compare squares or maxima exactly, projection
constants and all four operator/tensor norms are exact LP values. Only
general exponents q take a float path, with the tolerance declared at the
call site.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .budgets import DEFAULT, Budgets
from .errors import BudgetExceeded, DependentBasis, DimMismatch
from .linprog import lp_solve
from .rationals import ONE, ZERO, to_float
from .ratlinalg import dot, mat_mul, rank, vadd, vec, vscale
from .spaces import FinSpace, LinOp, dual, space_norm, subspace


def sign_patterns(n: int, budgets: Budgets = DEFAULT):
    """All 2^n sign tuples in {-1, +1}^n, each exactly once, fixed order."""
    if n > budgets.sign_patterns:
        raise BudgetExceeded(f"{n} sign positions exceed budget "
                             f"{budgets.sign_patterns}")
    return itertools.product((1, -1), repeat=n)


def rademacher_average(X: FinSpace, vectors, budgets: Budgets = DEFAULT):
    """Exact average of ||sum_i s_i x_i|| over all sign patterns s.

    Uses the +/- symmetry of the norm to enumerate half the patterns. The
    result is invariant under permuting the vectors and flipping any
    vector's sign.
    """
    vs = [vec(v) for v in vectors]
    if not vs:
        raise ValueError("need at least one vector")
    if any(len(v) != X.dim for v in vs):
        raise DimMismatch("vector length differs from space dimension")
    n = len(vs)
    if n > budgets.sign_patterns:
        raise BudgetExceeded(f"{n} vectors exceed sign budget "
                             f"{budgets.sign_patterns}")
    total = ZERO
    for signs in itertools.product((1, -1), repeat=n - 1):
        s = vs[0]
        for sig, v in zip(signs, vs[1:]):
            s = vadd(s, v) if sig == 1 else vadd(s, vscale(-1, v))
        total = total + space_norm(X, s)
    return total / (2 ** (n - 1))


@dataclass(frozen=True)
class WitnessReport:
    """Finite-sample lower bound for a type or cotype constant.

    kind is "cotype" or "type"; exponent is a rational or the string "inf".
    lhs is the vector-norm aggregate ((sum ||x||^q)^(1/q), max for inf);
    bound = lhs/avg for cotype and avg/lhs for type. exact_value is set when
    the bound itself is rational (exponent inf for cotype, 1 for type);
    exact_square is set on the exponent-2 paths. bound_float is always
    available; the float path carries a 1e-12 evaluation tolerance.
    """

    kind: str
    exponent: object
    witnesses: tuple
    lhs: object
    rademacher_avg: object
    bound_float: float
    exact_value: object = None
    exact_square: object = None


def _check_witnesses(X, vectors):
    vs = tuple(vec(v) for v in vectors)
    if not vs or any(all(a == 0 for a in v) for v in vs):
        raise ValueError("witness vectors must be nonzero")
    if any(len(v) != X.dim for v in vs):
        raise DimMismatch("vector length differs from space dimension")
    return vs


def cotype_witness(X: FinSpace, vectors, q, budgets: Budgets = DEFAULT) -> WitnessReport:
    """Lower bound for the cotype-q constant from one vector family.

    q is a rational >= 2 or the string "inf". Exact paths: q = 2 compares
    squares (exact_square = lhs^2/avg^2), q = inf compares maxima
    (exact_value = max ||x|| / avg). Other q evaluate in floats.
    """
    vs = _check_witnesses(X, vectors)
    avg = rademacher_average(X, vs, budgets)
    norms = [space_norm(X, v) for v in vs]
    if q == "inf":
        lhs = max(norms)
        val = lhs / avg
        return WitnessReport("cotype", "inf", vs, lhs, avg, to_float(val),
                             exact_value=val)
    if q < 2:
        raise ValueError("cotype exponent must be >= 2")
    if q == 2:
        sq = sum((n * n for n in norms), ZERO)
        bound_sq = sq / (avg * avg)
        return WitnessReport("cotype", q, vs, None, avg,
                             math.sqrt(to_float(bound_sq)),
                             exact_square=bound_sq)
    qf = to_float(q)
    lhs = sum(to_float(n) ** qf for n in norms) ** (1.0 / qf)
    return WitnessReport("cotype", q, vs, lhs, avg, lhs / to_float(avg))


def type_witness(X: FinSpace, vectors, p, budgets: Budgets = DEFAULT) -> WitnessReport:
    """Lower bound for the type-p constant from one vector family.

    p is a rational in [1, 2]. Exact paths: p = 1 (exact_value = avg / sum
    of norms) and p = 2 (exact_square = avg^2 / sum of squares).
    """
    vs = _check_witnesses(X, vectors)
    if p < 1 or p > 2:
        raise ValueError("type exponent must be in [1, 2]")
    avg = rademacher_average(X, vs, budgets)
    norms = [space_norm(X, v) for v in vs]
    if p == 1:
        rhs = sum(norms, ZERO)
        val = avg / rhs
        return WitnessReport("type", p, vs, rhs, avg, to_float(val),
                             exact_value=val)
    if p == 2:
        sq = sum((n * n for n in norms), ZERO)
        bound_sq = (avg * avg) / sq
        return WitnessReport("type", p, vs, None, avg,
                             math.sqrt(to_float(bound_sq)),
                             exact_square=bound_sq)
    pf = to_float(p)
    rhs = sum(to_float(n) ** pf for n in norms) ** (1.0 / pf)
    return WitnessReport("type", p, vs, rhs, avg, to_float(avg) / rhs)


# ---------------------------------------------------------------------------
# projection constants


@dataclass(frozen=True)
class ProjResult:
    """Exact minimal projection onto a subspace.

    projection is an operator X -> X that fixes the subspace pointwise and
    has range inside it; lam is its exact operator norm, minimal among all
    such projections (LP optimality).
    """

    sub_basis: tuple
    lam: object
    projection: LinOp


def projection_constant(X: FinSpace, sub_basis,
                        budgets: Budgets = DEFAULT) -> ProjResult:
    """Minimal norm of a projection of X onto the span of sub_basis.

    Solves the exact LP: a projection is S.M with M.S = I_k (S the basis
    columns), and ||S.M|| is the max of <f, M v> over subspace-ball facets f
    and X-ball vertices v, minimized as a single scalar t.
    """
    basis = [vec(b) for b in sub_basis]
    k = len(basis)
    n = X.dim
    if rank(basis) < k:
        raise DependentBasis("projection target basis is dependent")
    A = subspace(X, basis, budgets)
    scols = list(zip(*basis))  # n rows of length k (the matrix S)

    # variables: M (k x n, row-major), then t
    nvars = k * n + 1
    a_eq, b_eq = [], []
    for i in range(k):           # (M S)_{ij} = delta_ij
        for j in range(k):
            row = [ZERO] * nvars
            for c in range(n):
                row[i * n + c] = scols[c][j]
            a_eq.append(row)
            b_eq.append(ONE if i == j else ZERO)
    a_ub, b_ub = [], []
    for f in A.ball.facets:
        for v in X.ball.vertices:
            row = [ZERO] * nvars
            for i in range(k):
                for c in range(n):
                    row[i * n + c] = f[i] * v[c]
            row[-1] = -ONE
            a_ub.append(row)
            b_ub.append(ZERO)
    c = [ZERO] * (k * n) + [ONE]
    res = lp_solve(c, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=b_eq,
                   budgets=budgets)
    m_rows = tuple(tuple(res.x[i * n + c] for c in range(n)) for i in range(k))
    p_rows = mat_mul(tuple(scols), m_rows)
    proj = LinOp(X, X, p_rows)
    return ProjResult(tuple(tuple(b) for b in basis), res.value, proj)


@dataclass(frozen=True)
class TrendReport:
    """Observed (rank, lambda) table with a log-log fitted exponent.

    rows are (label, rank, exact lambda); exponent is the least-squares
    slope of log lambda against log rank (None when the fit is degenerate).
    Purely observational: nothing here is asserted.
    """

    rows: tuple
    exponent: object


def projection_trend(entries, budgets: Budgets = DEFAULT) -> TrendReport:
    """Projection constants for a list of (label, space, sub_basis) entries."""
    rows = []
    for label, X, basis in entries:
        res = projection_constant(X, basis, budgets)
        rows.append((label, len(res.sub_basis), res.lam))
    exponent = None
    ranks = [r for _, r, _ in rows]
    if len(set(ranks)) >= 2:
        import numpy as np
        xs = np.log([float(r) for _, r, _ in rows])
        ys = np.log([to_float(l) for _, _, l in rows])
        exponent = float(np.polyfit(xs, ys, 1)[0])
    return TrendReport(tuple(rows), exponent)


# ---------------------------------------------------------------------------
# tensor norms


@dataclass(frozen=True)
class TensorElem:
    """An element of X (x) Y in coordinates: coeffs[i][j] on e_i (x) e_j."""

    left: FinSpace
    right: FinSpace
    coeffs: tuple

    def __post_init__(self):
        rows = tuple(tuple(vec(r)) for r in self.coeffs)
        if len(rows) != self.left.dim or \
                any(len(r) != self.right.dim for r in rows):
            raise DimMismatch("coefficient shape must be left.dim x right.dim")
        object.__setattr__(self, "coeffs", rows)


def _cell_budget(t: TensorElem, budgets: Budgets):
    cells = t.left.dim * t.right.dim
    if cells > budgets.tensor_cells:
        raise BudgetExceeded(f"{cells} tensor cells exceed budget "
                             f"{budgets.tensor_cells}")


def injective_norm(t: TensorElem, budgets: Budgets = DEFAULT):
    """sup |<u, f (x) g>| over the dual unit balls: exact max over the
    finitely many extreme functional pairs (facets of the two balls)."""
    _cell_budget(t, budgets)
    best = ZERO
    for f in t.left.ball.facets:
        fc = tuple(sum((t.coeffs[i][j] * f[i] for i in range(t.left.dim)), ZERO)
                   for j in range(t.right.dim))
        for g in t.right.ball.facets:
            val = abs(dot(fc, g))
            if val > best:
                best = val
    return best


def projective_norm(t: TensorElem, budgets: Budgets = DEFAULT):
    """inf sum ||x_i|| ||y_i|| over decompositions: exact LP gauge of the
    coefficient matrix in the hull of vertex-pair dyads a (x) b."""
    _cell_budget(t, budgets)
    n, m = t.left.dim, t.right.dim
    target = [t.coeffs[i][j] for i in range(n) for j in range(m)]
    if all(x == 0 for x in target):
        return ZERO
    cols = []
    for a in t.left.ball.vertices:
        for b in t.right.ball.vertices:
            cols.append([a[i] * b[j] for i in range(n) for j in range(m)])
    a_eq = [[col[r] for col in cols] for r in range(n * m)]
    c = [ONE] * len(cols)
    res = lp_solve(c, a_eq=a_eq, b_eq=target, nonneg=True, budgets=budgets)
    return res.value


def nuclear_norm(u: LinOp, budgets: Budgets = DEFAULT):
    """Nuclear norm of a finite-rank operator: the projective norm of its
    tensor in dual(domain) (x) codomain."""
    coeffs = tuple(tuple(u.matrix[j][i] for j in range(u.codomain.dim))
                   for i in range(u.domain.dim))
    t = TensorElem(dual(u.domain), u.codomain, coeffs)
    return projective_norm(t, budgets)


# ---------------------------------------------------------------------------
# 1-summing norm (zonotope containment LP)


def _pair_classes(functionals):
    """One representative per +/- pair, original order, deduplicated."""
    seen = set()
    reps = []
    for f in functionals:
        key = max(f, tuple(-a for a in f))
        if key in seen:
            continue
        seen.add(key)
        reps.append(key)
    return reps


def pi1_norm(u: LinOp, budgets: Budgets = DEFAULT):
    """Exact 1-summing norm of a finite-rank operator between polytopal
    spaces, as a single zonotope-containment LP.

    Weights w_f on the +/- pairs of the domain's dual ball extreme points
    dominate the operator -- ||u x|| <= sum_f w_f |<f, x>| for every x --
    exactly when conv{+/- u^T g}, over extreme functionals g of the
    codomain, is contained in the zonotope sum_f w_f [-f, f]: both sides
    of the domination are the support functions of those two bodies.
    Containment of each point u^T g is linear in the weights and the
    zonotope coordinates jointly, so the least total weight (the 1-summing
    norm, by extremality of the optimal dominating measure) is one exact
    LP: no iteration, no separation, exact on return.
    """
    X = u.domain
    n = X.dim
    if all(all(a == 0 for a in row) for row in u.matrix):
        return ZERO
    reps = _pair_classes(X.ball.facets)
    gs = _pair_classes(u.codomain.ball.facets)
    targets = _pair_classes(
        tuple(sum((u.matrix[j][i] * g[j] for j in range(u.codomain.dim)), ZERO)
              for i in range(n))
        for g in gs)
    targets = [p for p in targets if any(a != 0 for a in p)]
    nw = len(reps)
    nvars = nw + len(targets) * nw
    a_eq, b_eq = [], []
    a_ub, b_ub = [], []
    for k, p in enumerate(targets):
        base = nw + k * nw
        for i in range(n):
            row = [ZERO] * nvars
            for j, f in enumerate(reps):
                row[base + j] = f[i]
            a_eq.append(row)
            b_eq.append(p[i])
        for j in range(nw):
            lo = [ZERO] * nvars
            lo[j] = -ONE
            lo[base + j] = ONE
            a_ub.append(lo)          # t_kj <= w_j
            b_ub.append(ZERO)
            hi = [ZERO] * nvars
            hi[j] = -ONE
            hi[base + j] = -ONE
            a_ub.append(hi)          # -w_j <= t_kj
            b_ub.append(ZERO)
    c = [ONE] * nw + [ZERO] * (nvars - nw)
    res = lp_solve(c, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=b_eq,
                   budgets=budgets)
    return res.value
