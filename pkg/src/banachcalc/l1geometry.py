"""Isometric l_1 geometry: incarnating sets, dual zonotopes, amalgamation.

A subspace Y of l_1^N with coordinate functionals restricted to Y is encoded
by its incarnating set: one generator per +/- pair of nonzero rows, so
||c||_Y = sum_g |<g, c>|. The dual ball of Y is then the zonotope of the
generators, and conversely a space embeds isometrically into some l_1^N
exactly when its dual ball is a zonotope, which is decided constructively by
edge-class reconstruction plus a bit-exact round trip.

l1_amalgamate glues two such spaces along a common subspace by combining,
rib by rib of the root's dual ball, the generators whose shadows on the root
are parallel to that rib; the construction is always verified exactly before
it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass

from .budgets import DEFAULT, Budgets
from .errors import (ConstructionFailed, DependentColumns, NotAZonotope,
                     NotIsometricInput, NotSpanning)
from .polytopes import SymPolytope, edges, facet_incidence, polar, zonotope_of
from .rationals import ONE, ZERO, qstr
from .ratlinalg import (dot, inverse, lexpos, mat_mul, primitive_direction,
                        rank, rref, unit, vec, vneg, vscale, vsub)
from .spaces import FinSpace, LinOp, distortion


@dataclass(frozen=True)
class IncarnatingSet:
    """Generators of an isometric l_1 embedding, one per +/- pair.

    Generators are nonzero, sign-normalized (first nonzero coordinate
    positive) and sorted; parallel generators may repeat, merged() gives the
    canonical fully-merged form.
    """

    sub_dim: int
    generators: tuple

    def __post_init__(self):
        gens = tuple(sorted(lexpos(vec(g)) for g in self.generators))
        if not gens or any(all(a == 0 for a in g) for g in gens):
            raise NotSpanning("incarnating set needs nonzero generators")
        if any(len(g) != self.sub_dim for g in gens):
            raise NotSpanning("generator length differs from sub_dim")
        object.__setattr__(self, "generators", gens)

    def merged(self) -> "IncarnatingSet":
        """Canonical form: parallel classes merged by summing lengths."""
        classes = {}
        for g in self.generators:
            d = primitive_direction(g)
            scale = next(a for a in g if a != 0)
            classes[d] = classes.get(d, ZERO) + scale
        gens = [vscale(c, d) for d, c in sorted(classes.items())]
        return IncarnatingSet(self.sub_dim, tuple(gens))


@dataclass(frozen=True)
class L1Embedding:
    """A space together with a verified isometric embedding into l_1^N."""

    space: FinSpace
    ambient: int          # N
    basis: tuple          # N x dim matrix, rows are the generators
    incarnation: IncarnatingSet


def incarnation_norm(K: IncarnatingSet, c):
    """sum_g |<g, c>| (exact)."""
    c = vec(c)
    return sum((abs(dot(g, c)) for g in K.generators), ZERO)


def dual_zonotope(K: IncarnatingSet, budgets: Budgets = DEFAULT) -> SymPolytope:
    """Zonotope of the generators: the dual unit ball of the embedded space."""
    return zonotope_of(K.generators, budgets)


def incarnate(basis_rows, budgets: Budgets = DEFAULT) -> L1Embedding:
    """Embed the column span of an N x m matrix sitting inside l_1^N.

    Rows are the coordinate functionals restricted to the subspace; zero
    rows are dropped and parallel rows merged by summing lengths along the
    common direction. Raises DependentColumns if the columns do not span.
    """
    rows = [vec(r) for r in basis_rows]
    if not rows:
        raise DependentColumns("empty basis")
    m = len(rows[0])
    if rank(rows) < m:
        raise DependentColumns("basis columns are dependent")
    classes = {}
    for r in rows:
        if all(a == 0 for a in r):
            continue
        d = primitive_direction(r)
        scale = next(a for a in lexpos(r) if a != 0)
        classes[d] = classes.get(d, ZERO) + scale
    gens = tuple(vscale(c, d) for d, c in sorted(classes.items()))
    K = IncarnatingSet(m, gens)
    Z = dual_zonotope(K, budgets)
    space = FinSpace(m, polar(Z))
    return L1Embedding(space, len(rows), tuple(rows), K)


def reconstruct(Z: SymPolytope, budgets: Budgets = DEFAULT) -> IncarnatingSet:
    """Recover the generators of a zonotope from its edge direction classes.

    Each edge of a zonotope is a translate of a generator segment, so one
    generator per direction class with generator = edge vector / 2. For
    dim 3 every facet must be centrally symmetric (the classical 2-face
    criterion), checked first for a sharp diagnostic; in every dimension the
    candidate is gated by a bit-exact round trip through zonotope_of.
    Raises NotAZonotope.
    """
    if Z.dim == 1:
        a = max(v[0] for v in Z.vertices)
        return IncarnatingSet(1, ((a,),))

    if Z.dim == 3:
        inc = facet_incidence(Z)
        for fi in range(len(Z.facets)):
            face = [Z.vertices[i] for i, s in enumerate(inc) if fi in s]
            k = len(face)
            centroid = tuple(sum(col, ZERO) / k for col in zip(*face))
            fset = set(face)
            for v in face:
                refl = vsub(vscale(2, centroid), v)
                if refl not in fset:
                    raise NotAZonotope(
                        "facet (" + ",".join(map(qstr, Z.facets[fi]))
                        + ") is not centrally symmetric")

    classes = {}
    for e in edges(Z, budgets):
        d = primitive_direction(e.vector)
        prev = classes.get(d)
        if prev is not None and prev != e.vector:
            raise NotAZonotope(
                "edge direction (" + ",".join(map(qstr, d))
                + ") carries two different edge lengths")
        classes[d] = e.vector
    gens = tuple(vscale(ONE / 2, v) for _, v in sorted(classes.items()))
    K = IncarnatingSet(Z.dim, gens)
    if zonotope_of(K.generators, budgets) != Z:
        raise NotAZonotope("edge-class candidate does not rebuild the polytope")
    return K


def is_l1_embeddable(X: FinSpace, budgets: Budgets = DEFAULT):
    """(True, L1Embedding) if X embeds isometrically into some l_1^N, else (False, None)."""
    try:
        K = reconstruct(polar(X.ball), budgets)
    except NotAZonotope:
        return False, None
    emb = L1Embedding(X, len(K.generators), K.generators, K)
    return True, emb


# ---------------------------------------------------------------------------
# amalgamation inside l_1


def _shadow_groups(K: IncarnatingSet, imat):
    """Group generators by the direction of their shadow under imat^T.

    imat is the embedding matrix (rows x cols = big dim x root dim); the
    shadow of a generator g is imat^T g, a functional on the root. Returns
    (groups, kernel) where groups maps a primitive root direction to a list
    of (generator, positive shadow length), generators sign-flipped so the
    shadow points along the direction.
    """
    cols = list(zip(*imat))  # root-dim columns of length big-dim
    groups = {}
    kernel = []
    for g in K.generators:
        shadow = tuple(dot(c, g) for c in cols)
        if all(a == 0 for a in shadow):
            kernel.append(g)
            continue
        d = primitive_direction(shadow)
        lam = next(a for a in lexpos(shadow) if a != 0)
        gg = g if lexpos(shadow) == shadow else vneg(g)
        groups.setdefault(d, []).append((gg, lam))
    return groups, kernel


def l1_amalgamate(formation, budgets: Budgets = DEFAULT):
    """Amalgamate two l_1-embeddable spaces over a common subspace, inside l_1.

    formation is a VFormation (amalgams module) with isometric arrows. The
    incarnating sets of B1 and B2 are grouped by the rib directions of the
    root's dual ball (equivalently: by the directions of their shadows on
    the root); for a rib of one-sided length l, each pair (y, z) of group
    members with shadow lengths (lam, mu) contributes the functional

        (y * mu/l  on the B1 coordinate block,
         z_J * lam/l  on the complement coordinate block of B2),

    and zero-shadow generators pass through on their own block. The result
    is gated by an exact verification that both pullback incarnating sets
    merge back to the inputs; any failure raises ConstructionFailed with the
    offending rib in the diagnostic. Returns an Amalgam whose witness is the
    L1Embedding of the glued space.
    """
    from .amalgams import Amalgam

    A, B1, B2 = formation.root, formation.left, formation.right
    i1, i2 = formation.arrow_left, formation.arrow_right
    for name, arrow in (("i1", i1), ("i2", i2)):
        if not distortion(arrow, budgets).is_isometry:
            raise NotIsometricInput(f"{name} is not isometric")

    ok1, emb1 = is_l1_embeddable(B1, budgets)
    ok2, emb2 = is_l1_embeddable(B2, budgets)
    if not ok1 or not ok2:
        raise ConstructionFailed(
            "input space is not l_1-embeddable",
            {"left": ok1, "right": ok2})

    K1 = emb1.incarnation.merged()
    K2 = emb2.incarnation.merged()
    groups1, kernel1 = _shadow_groups(K1, i1.matrix)
    groups2, kernel2 = _shadow_groups(K2, i2.matrix)

    if set(groups1) != set(groups2):
        raise ConstructionFailed(
            "rib directions of the two sides disagree",
            {"only_left": sorted(map(str, set(groups1) - set(groups2))),
             "only_right": sorted(map(str, set(groups2) - set(groups1)))})
    lengths = {}
    for d in groups1:
        l1 = sum((lam for _, lam in groups1[d]), ZERO)
        l2 = sum((mu for _, mu in groups2[d]), ZERO)
        if l1 != l2:
            raise ConstructionFailed(
                "rib shadow lengths disagree",
                {"rib": tuple(map(qstr, d)), "left": qstr(l1), "right": qstr(l2)})
        lengths[d] = l1

    n1, n2, a = B1.dim, B2.dim, A.dim
    # complement coordinates J of i2(A) inside B2 (deterministic pivots)
    i2cols = list(zip(*i2.matrix))
    _, pivots = rref(tuple(i2cols))
    R = list(pivots)
    J = [j for j in range(n2) if j not in R]
    nw = n1 + len(J)

    full_cols = i2cols + [unit(n2, j) for j in J]
    inv = inverse(tuple(zip(*full_cols)))
    alpha_rows = inv[:a]   # x -> root coefficients
    comp_rows = inv[a:]    # x -> complement coordinates

    # j1(b) = (b, 0); j2(x) = (i1 alpha(x), comp(x)); both nw-row matrices
    j1_mat = tuple(tuple(ONE if (r < n1 and c == r) else ZERO
                         for c in range(n1)) for r in range(nw))
    j2_mat = tuple(mat_mul(i1.matrix, alpha_rows)) + tuple(
        tuple(r) for r in comp_rows)

    gens_w = []
    for d in sorted(groups1):
        lr = lengths[d]
        for y, lam in groups1[d]:
            for z, mu in groups2[d]:
                zj = tuple(z[j] for j in J)
                gens_w.append(tuple(vscale(mu / lr, y)) + tuple(vscale(lam / lr, zj)))
    for y in kernel1:
        gens_w.append(tuple(y) + tuple([ZERO] * len(J)))
    for z in kernel2:
        gens_w.append(tuple([ZERO] * n1) + tuple(z[j] for j in J))

    KW = IncarnatingSet(nw, tuple(gens_w))

    # exact verification: pulling the glued set back along j1 and j2 must
    # merge to the input incarnating sets bit-exactly
    def pullback(rows):
        cols = list(zip(*rows))
        pulled = []
        for g in KW.generators:
            v = tuple(dot(c, g) for c in cols)
            if any(x != 0 for x in v):
                pulled.append(v)
        return IncarnatingSet(len(cols), tuple(pulled)).merged()

    pb1 = pullback(j1_mat)
    pb2 = pullback(j2_mat)
    if pb1.generators != K1.generators:
        raise ConstructionFailed(
            "glued set does not restrict to the left incarnating set",
            {"expected": [tuple(map(qstr, g)) for g in K1.generators],
             "got": [tuple(map(qstr, g)) for g in pb1.generators]})
    if pb2.generators != K2.generators:
        raise ConstructionFailed(
            "glued set does not restrict to the right incarnating set",
            {"expected": [tuple(map(qstr, g)) for g in K2.generators],
             "got": [tuple(map(qstr, g)) for g in pb2.generators]})

    Z = zonotope_of(KW.generators, budgets)
    W = FinSpace(nw, polar(Z))
    j1 = LinOp(B1, W, j1_mat)
    j2 = LinOp(B2, W, j2_mat)

    if mat_mul(j1_mat, i1.matrix) != mat_mul(j2_mat, i2.matrix):
        raise ConstructionFailed("glue square does not commute", {})

    witness = L1Embedding(W, len(KW.generators), KW.generators, KW)
    return Amalgam(space=W, j_left=j1, j_right=j2,
                   defect_left=ZERO, defect_right=ZERO, witness=witness)
