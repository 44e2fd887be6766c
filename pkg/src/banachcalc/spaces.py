"""Finite-dimensional normed spaces over the rational polytope kernel.

A FinSpace is a dimension plus a unit ball; operators are exact rational
matrices. Duality is the polar swap, subspaces are sections, quotients are
linear images under a deterministic complement-coordinate map, and the
direct sums carry both representations without any enumeration. Everything
is exact except dsum2_approx, which returns an outer polytopal approximation
tagged in the space metadata.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .budgets import DEFAULT, Budgets
from .errors import (BudgetExceeded, DependentBasis, DimMismatch, NotProper)
from .polytopes import (SymPolytope, congruent, from_vertices, gauge,
                        linear_image, polar, section, vertex_enum)
from .rationals import ONE, ZERO, Q, qstr, rat
from .ratlinalg import (identity, inverse, mat, mat_mul, mat_vec,
                        nullspace, rank, rref, unit, vec, vneg, vscale)


@dataclass(frozen=True, eq=False)
class FinSpace:
    """A finite-dimensional space: its dimension and unit ball.

    Equality compares dimension and ball bit-exactly; the label and the meta
    pairs (e.g. the approx tag of dsum2_approx) are bookkeeping only.
    """

    dim: int
    ball: SymPolytope
    label: str = ""
    meta: tuple = ()

    def __post_init__(self):
        if self.ball.dim != self.dim:
            raise DimMismatch("ball dimension differs from space dimension")

    def __eq__(self, other):
        return (isinstance(other, FinSpace) and self.dim == other.dim
                and self.ball == other.ball)

    def __hash__(self):
        return hash((self.dim, self.ball))

    def __repr__(self):
        name = self.label or "FinSpace"
        return f"{name}(dim={self.dim}, ball={self.ball!r})"


@dataclass(frozen=True)
class LinOp:
    """Linear operator between FinSpaces; matrix rows map domain coords."""

    domain: FinSpace
    codomain: FinSpace
    matrix: tuple

    def __post_init__(self):
        m = mat(self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != self.codomain.dim or any(len(r) != self.domain.dim for r in m):
            raise DimMismatch("operator matrix shape mismatch")

    def apply(self, v):
        return mat_vec(self.matrix, vec(v))

    def compose(self, other: "LinOp") -> "LinOp":
        """self after other."""
        if other.codomain != self.domain:
            raise DimMismatch("composition domain/codomain mismatch")
        return LinOp(other.domain, self.codomain, mat_mul(self.matrix, other.matrix))


@dataclass(frozen=True)
class DistortionCert:
    """Norm data for an operator: ||u||, ||u^-1|| on the image, the product.

    inv_norm and distortion are None when u is not injective (distortion
    infinite). distortion >= 1 whenever finite.
    """

    op: LinOp
    norm: object
    inv_norm: object | None
    distortion: object | None

    @property
    def distortion_float(self) -> float:
        return math.inf if self.distortion is None else float(self.distortion)

    @property
    def is_isometry(self) -> bool:
        """Norm-preserving, not merely distortion 1 (a scaling has
        distortion 1 but is not an isometry)."""
        return self.norm == 1 and self.inv_norm == 1


# ---------------------------------------------------------------------------
# constructions


def l1_space(n: int, label: str = "") -> FinSpace:
    """l_1^n: cross-polytope ball."""
    verts = []
    for i in range(n):
        verts.append(unit(n, i))
        verts.append(vneg(unit(n, i)))
    if n == 1:
        facets = [(-ONE,), (ONE,)]
    else:
        facets = _signs_cube(n)
    return FinSpace(n, SymPolytope(n, verts, facets), label or f"l1^{n}")


def linf_space(n: int, label: str = "") -> FinSpace:
    """l_inf^n: cube ball."""
    facets = []
    for i in range(n):
        facets.append(unit(n, i))
        facets.append(vneg(unit(n, i)))
    if n == 1:
        verts = [(-ONE,), (ONE,)]
    else:
        verts = _signs_cube(n)
    return FinSpace(n, SymPolytope(n, verts, facets), label or f"linf^{n}")


def _signs_cube(n):
    out = []
    for mask in range(1 << n):
        out.append(tuple(ONE if mask >> i & 1 else -ONE for i in range(n)))
    return out


def space_from_vertices(points, label: str = "",
                        budgets: Budgets = DEFAULT) -> FinSpace:
    pts = [vec(p) for p in points]
    ball = from_vertices(pts, len(pts[0]), budgets)
    return FinSpace(ball.dim, ball, label)


def space_from_facets(functionals, label: str = "",
                      budgets: Budgets = DEFAULT) -> FinSpace:
    fs = [vec(f) for f in functionals]
    ball = vertex_enum(fs, len(fs[0]), budgets)
    return FinSpace(ball.dim, ball, label)


# ---------------------------------------------------------------------------
# norms and duality


def space_norm(X: FinSpace, x):
    """Exact norm of x in X (gauge of the unit ball); 0 iff x = 0."""
    x = vec(x)
    if len(x) != X.dim:
        raise DimMismatch("vector length differs from space dimension")
    return gauge(X.ball, x)


def dual(X: FinSpace) -> FinSpace:
    """Dual space: polar ball (bit-exact list swap)."""
    return FinSpace(X.dim, polar(X.ball), f"({X.label})*" if X.label else "")


def subspace(X: FinSpace, basis_cols, budgets: Budgets = DEFAULT) -> FinSpace:
    """Subspace spanned by the given columns, with the restricted norm.

    Coordinates of the result are coefficients in the given basis; the
    inclusion operator is inclusion_map(X, basis_cols).
    """
    cols = [vec(c) for c in basis_cols]
    if not cols or rank(cols) < len(cols):
        raise DependentBasis("subspace basis empty or dependent")
    if len(cols) > X.dim or any(len(c) != X.dim for c in cols):
        raise DimMismatch("basis vectors do not fit the space")
    ball = section(X.ball, cols, budgets)
    return FinSpace(len(cols), ball)


def inclusion_map(X: FinSpace, basis_cols, budgets: Budgets = DEFAULT) -> LinOp:
    """The isometric inclusion of subspace(X, basis_cols) into X."""
    S = subspace(X, basis_cols, budgets)
    rows = tuple(zip(*[vec(c) for c in basis_cols]))
    return LinOp(S, X, rows)


def quotient(X: FinSpace, sub_basis, budgets: Budgets = DEFAULT):
    """Quotient of X by span(sub_basis): returns (space, quotient map).

    The representative coordinates are the complement coordinates J of the
    deterministic pivot rows of the sub-basis (lowest-index greedy), so the
    construction is reproducible; the quotient ball is the linear image of
    the ball under that map.
    """
    cols = [vec(c) for c in sub_basis]
    k = len(cols)
    n = X.dim
    if not cols or rank(cols) < k:
        raise DependentBasis("quotient basis empty or dependent")
    if k >= n:
        raise NotProper("quotient by the whole space (or more)")
    if any(len(c) != n for c in cols):
        raise DimMismatch("basis vectors do not fit the space")
    M = tuple(zip(*cols))  # n x k, columns span the kernel
    _, pivots = rref(tuple(cols))  # pivot coords of the row space
    R = list(pivots)
    J = [j for j in range(n) if j not in R]
    full_cols = cols + [unit(n, j) for j in J]
    full = tuple(zip(*full_cols))
    inv = inverse(full)
    qrows = inv[k:]
    ball = linear_image(X.ball, qrows, budgets)
    F = FinSpace(n - k, ball)
    return F, LinOp(X, F, qrows)


def annihilator(X: FinSpace, sub_basis, budgets: Budgets = DEFAULT):
    """Annihilator of span(sub_basis) as a subspace of the dual.

    Returns (space, annihilator basis columns). Proper nontrivial subspaces
    only: a zero-dimensional annihilator is rejected.
    """
    cols = [vec(c) for c in sub_basis]
    k = len(cols)
    if not cols or rank(cols) < k:
        raise DependentBasis("annihilator input basis empty or dependent")
    if k >= X.dim:
        raise NotProper("annihilator would be zero-dimensional")
    ann = nullspace(tuple(cols))  # functionals killing every basis column
    D = dual(X)
    return subspace(D, ann, budgets), tuple(ann)


# ---------------------------------------------------------------------------
# direct sums


def dsum1(X: FinSpace, Y: FinSpace, budgets: Budgets = DEFAULT) -> FinSpace:
    """l_1 direct sum: ball = conv(B_X x 0 union 0 x B_Y).

    Both representations are written down directly: vertices embed, facets
    are all pairs (f, g). Raises BudgetExceeded if the facet product
    overflows the vertex budget.
    """
    n, m = X.dim, Y.dim
    nf = len(X.ball.facets) * len(Y.ball.facets)
    if nf > budgets.vertex_budget:
        raise BudgetExceeded(f"dsum1 facet count {nf} over budget")
    verts = [v + tuple([ZERO] * m) for v in X.ball.vertices]
    verts += [tuple([ZERO] * n) + w for w in Y.ball.vertices]
    facets = [f + g for f in X.ball.facets for g in Y.ball.facets]
    label = f"({X.label})+1({Y.label})" if X.label and Y.label else ""
    return FinSpace(n + m, SymPolytope(n + m, verts, facets), label)


def dsum_inf(X: FinSpace, Y: FinSpace, budgets: Budgets = DEFAULT) -> FinSpace:
    """l_inf direct sum: ball = B_X x B_Y (product)."""
    n, m = X.dim, Y.dim
    nv = len(X.ball.vertices) * len(Y.ball.vertices)
    if nv > budgets.vertex_budget:
        raise BudgetExceeded(f"dsum_inf vertex count {nv} over budget")
    verts = [v + w for v in X.ball.vertices for w in Y.ball.vertices]
    facets = [f + tuple([ZERO] * m) for f in X.ball.facets]
    facets += [tuple([ZERO] * n) + g for g in Y.ball.facets]
    label = f"({X.label})+inf({Y.label})" if X.label and Y.label else ""
    return FinSpace(n + m, SymPolytope(n + m, verts, facets), label)


def _ceil_sqrt_rat(q):
    """Smallest integer N with N*N >= q (q a positive rational)."""
    c = -(-q.numerator // q.denominator)  # ceil(q)
    n0 = math.isqrt(c)
    return n0 if n0 * n0 >= c else n0 + 1


def circle_directions(eps):
    """Rational points on the unit circle quarter, max angular gap <= 2/N.

    Tangent half-angle parametrization (1-t^2, 2t)/(1+t^2) with t = k/N and
    N = ceil(sqrt((1+eps)/(2 eps))), closed under coordinate swap so the
    polygonal norm max(a s + b t) under-approximates sqrt(s^2+t^2) by at
    most the factor 1/(1+eps), symmetrically in the two arguments.
    """
    eps = rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    N = _ceil_sqrt_rat((1 + eps) / (2 * eps))
    dirs = set()
    for k in range(N + 1):
        t = Q(k, N)
        den = 1 + t * t
        a = (1 - t * t) / den
        b = 2 * t / den
        dirs.add((a, b))
        dirs.add((b, a))
    return sorted(dirs)


def dsum2_approx(X: FinSpace, Y: FinSpace, eps, budgets: Budgets = DEFAULT) -> FinSpace:
    """Outer polytopal approximation of the l_2 direct sum within 1+eps.

    The true ball {(x,y): ||x||^2+||y||^2 <= 1} is contained in the result,
    and the result's gauge is at most (1+eps) times the true norm. The space
    is tagged approx in its meta pairs. Exact arithmetic throughout; only
    the set of supporting directions is truncated.
    """
    eps = rat(eps)
    dirs = circle_directions(eps)
    n, m = X.dim, Y.dim
    facets = set()
    for a, b in dirs:
        for f in X.ball.facets:
            if b == 0:
                facets.add(tuple(vscale(a, f)) + tuple([ZERO] * m))
                continue
            for g in Y.ball.facets:
                facets.add(tuple(vscale(a, f)) + tuple(vscale(b, g)))
        if a == 0:
            for g in Y.ball.facets:
                facets.add(tuple([ZERO] * n) + tuple(vscale(b, g)))
    ball = vertex_enum(sorted(facets), n + m, budgets)
    label = f"({X.label})+2eps({Y.label})" if X.label and Y.label else ""
    meta = (("approx", "sum2"), ("eps", qstr(eps)))
    return FinSpace(n + m, ball, label, meta)


# ---------------------------------------------------------------------------
# operators


def operator_norm(u: LinOp):
    """Exact operator norm: max codomain norm over domain ball vertices."""
    return max(gauge(u.codomain.ball, u.apply(v)) for v in u.domain.ball.vertices)


def distortion(u: LinOp, budgets: Budgets = DEFAULT) -> DistortionCert:
    """||u||, ||u^-1|| (computed on the image subspace), and their product.

    For injective u the inverse norm is the maximal domain norm over the
    vertices of the section of the codomain ball by the image of u (in image
    coordinates the preimage of a section vertex is the vertex itself).
    """
    nrm = operator_norm(u)
    cols = list(zip(*u.matrix))  # images of the domain basis vectors
    if rank(cols) < u.domain.dim:
        return DistortionCert(u, nrm, None, None)
    sec = section(u.codomain.ball, cols, budgets)
    inv_nrm = max(gauge(u.domain.ball, c) for c in sec.vertices)
    return DistortionCert(u, nrm, inv_nrm, nrm * inv_nrm)


def is_isometric(X: FinSpace, Y: FinSpace, budgets: Budgets = DEFAULT):
    """Exact isometry X -> Y as a LinOp, or None. Complete for polytope balls."""
    if X.dim != Y.dim:
        return None
    T = congruent(X.ball, Y.ball, budgets)
    return None if T is None else LinOp(X, Y, T)


def _independent_vertex_seed(P: SymPolytope):
    seed = []
    for v in P.vertices:
        if rank(seed + [v]) > len(seed):
            seed.append(v)
            if len(seed) == P.dim:
                break
    return seed


def bm_upper(X: FinSpace, Y: FinSpace, seed: int = 0,
             budgets: Budgets = DEFAULT) -> DistortionCert:
    """Upper bound on the Banach-Mazur distance d(X, Y) with a witness map.

    Exact congruence is tried first (distance exactly 1). Otherwise a seeded
    search over vertex-matching candidates plus the identity, followed by
    dyadic local refinement of the best map. The result is only an upper
    bound; its certificate is exact for the returned map.
    """
    import random

    if X.dim != Y.dim:
        raise DimMismatch("Banach-Mazur distance needs equal dimensions")
    iso = is_isometric(X, Y, budgets)
    if iso is not None:
        return DistortionCert(iso, operator_norm(iso),
                              ONE / operator_norm(iso),
                              ONE)

    n = X.dim
    rng = random.Random(seed)
    seeds = _independent_vertex_seed(X.ball)
    vcols = tuple(zip(*seeds))
    vinv = inverse(vcols)
    yverts = Y.ball.vertices

    candidates = [identity(n)]
    total = len(yverts) ** n
    if total <= 4096:
        import itertools
        tuples = itertools.product(range(len(yverts)), repeat=n)
        pool = [t for t in tuples]
    else:
        pool = [tuple(rng.randrange(len(yverts)) for _ in range(n))
                for _ in range(64 * budgets.search_restarts)]
    for t in pool:
        wcols = tuple(zip(*[yverts[i] for i in t]))
        if rank(wcols) < n:
            continue
        candidates.append(mat_mul(wcols, vinv))

    best = None
    for T in candidates:
        cert = distortion(LinOp(X, Y, T), budgets)
        if cert.distortion is None:
            continue
        if best is None or cert.distortion < best.distortion:
            best = cert

    # dyadic local refinement around the best map found
    steps = [Q(1, 2), Q(1, 4), Q(1, 8), Q(1, 16)]
    T = [list(r) for r in best.op.matrix]
    for step in steps:
        improved = True
        sweeps = 0
        while improved and sweeps < 4:
            improved = False
            sweeps += 1
            for i in range(n):
                for j in range(n):
                    for sgn in (1, -1):
                        T[i][j] += sgn * step
                        cand = tuple(tuple(r) for r in T)
                        if rank(cand) == n:
                            cert = distortion(LinOp(X, Y, cand), budgets)
                            if cert.distortion is not None and \
                                    cert.distortion < best.distortion:
                                best = cert
                                improved = True
                                continue
                        T[i][j] -= sgn * step
            if improved:
                T = [list(r) for r in best.op.matrix]
    return best
