"""Centrally symmetric rational polytopes carrying both representations.

A SymPolytope stores its extreme points (vertices) and its facet functionals
normalized so each facet hyperplane is {x : <f, x> = 1}. The facet list is
exactly the vertex list of the polar body, which makes polarity a bit-exact
swap of the two lists and reduces every representation conversion to one
primitive: vertex enumeration of {x : <a_i, x> <= 1} by double description.

Double description here is the incremental halfspace insertion variant with
an exact rank-based adjacency test (valid because arithmetic is exact; the
classical combinatorial test exists to avoid rank computations in floating
point). The intersection is seeded with a box that provably contains the
target strictly, so unbounded intermediate cones never appear.

Dimension 1 and 2 take special-cased exact paths (interval arithmetic and
angular sorting) because planar bodies in this library can carry hundreds of
thousands of facets where the generic machinery would be needlessly slow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .budgets import DEFAULT, Budgets
from .errors import (BudgetExceeded, DependentBasis, DimensionOverBudget,
                     DimensionTooSmall, DimMismatch, NotFullDimensional,
                     NotSpanning, NotSurjective, NotSymmetric, Unbounded)
from .linprog import lp_feasible
from .rationals import ONE, ZERO
from .ratlinalg import (dot, inverse, lexpos, mat_mul, mat_vec, nullspace,
                        primitive_direction, rank, solve, vadd, vec, vneg,
                        vscale, vsub)

_VERIFY_CELL_CAP = 2_000_000  # skip O(V*F) construction check above this
_PLANAR_LP_CAP = 64           # hull_reduce switches to monotone chain above


def _canon_points(points):
    return tuple(sorted({vec(p) for p in points}))


def _check_symmetric(points, what):
    pset = set(points)
    for p in points:
        if vneg(p) not in pset:
            raise NotSymmetric(f"{what} set is not closed under negation: {p}")


def _spanning_rank(points, dim):
    """Incremental rank with early exit at dim."""
    basis = []
    for p in points:
        cand = basis + [p]
        if rank(cand) > len(basis):
            basis.append(p)
            if len(basis) == dim:
                return dim
    return len(basis)


class SymPolytope:
    """Centrally symmetric polytope with vertex and facet representations.

    Immutable by convention: attributes are tuples sorted canonically and must
    not be mutated. Construction verifies symmetry, spanning, and (below a
    size threshold) the mutual consistency max_f <f,v> = 1 = max_v <f,v>.
    """

    __slots__ = ("dim", "vertices", "facets", "_cache")

    def __init__(self, dim, vertices, facets, *, verify=True):
        self.dim = int(dim)
        self.vertices = _canon_points(vertices)
        self.facets = _canon_points(facets)
        self._cache = {}
        if not self.vertices or not self.facets:
            raise NotFullDimensional("empty vertex or facet list")
        if any(len(v) != self.dim for v in self.vertices + self.facets):
            raise DimMismatch("vertex/facet length differs from dim")
        if verify:
            self._verify()

    def _verify(self):
        _check_symmetric(self.vertices, "vertex")
        _check_symmetric(self.facets, "facet")
        if _spanning_rank(self.vertices, self.dim) < self.dim:
            raise NotFullDimensional("vertices do not span")
        if _spanning_rank(self.facets, self.dim) < self.dim:
            raise NotFullDimensional("facets do not span")
        if len(self.vertices) * len(self.facets) > _VERIFY_CELL_CAP:
            return
        fmax = [None] * len(self.facets)
        for v in self.vertices:
            vmax = None
            for i, f in enumerate(self.facets):
                val = dot(f, v)
                if vmax is None or val > vmax:
                    vmax = val
                if fmax[i] is None or val > fmax[i]:
                    fmax[i] = val
            if vmax != 1:
                raise NotFullDimensional(f"vertex {v} has gauge {vmax} != 1")
        bad = next((i for i, m in enumerate(fmax) if m != 1), None)
        if bad is not None:
            raise NotFullDimensional(
                f"facet {self.facets[bad]} has support {fmax[bad]} != 1")

    def __eq__(self, other):
        return (isinstance(other, SymPolytope) and self.dim == other.dim
                and self.vertices == other.vertices and self.facets == other.facets)

    def __hash__(self):
        return hash((self.dim, self.vertices, self.facets))

    def __repr__(self):
        return (f"SymPolytope(dim={self.dim}, nverts={len(self.vertices)}, "
                f"nfacets={len(self.facets)})")


# ---------------------------------------------------------------------------
# hull reduction


def _extreme_by_lp(point, others, budgets):
    """Is point outside conv(others)? LP feasibility of a convex combination."""
    if not others:
        return True
    dim = len(point)
    a_eq = [[o[k] for o in others] for k in range(dim)]
    a_eq.append([ONE] * len(others))
    b_eq = list(point) + [ONE]
    return not lp_feasible(a_eq=a_eq, b_eq=b_eq, nonneg=True, budgets=budgets)


def _monotone_chain(points):
    """Convex hull of planar points in CCW order, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2:
                o, a = out[-2], out[-1]
                cross = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0])
                if cross <= 0:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = half(pts)
    upper = half(list(reversed(pts)))
    return lower[:-1] + upper[:-1]


def hull_reduce(points, dim=None, budgets: Budgets = DEFAULT):
    """Extreme points of a finite symmetric spanning set, canonically sorted.

    Extremeness is certified per point by LP feasibility of the convex
    combination system, testing one representative per +/- pair. Planar sets
    above a size threshold go through an exact monotone chain instead.
    """
    pts = _canon_points(points)
    if not pts:
        raise NotFullDimensional("empty point set")
    if dim is None:
        dim = len(pts[0])
    _check_symmetric(pts, "point")
    if _spanning_rank(pts, dim) < dim:
        raise NotFullDimensional("points do not span")
    if dim == 1:
        top = max(p[0] for p in pts)
        return ((-top,), (top,))
    if dim == 2 and len(pts) > _PLANAR_LP_CAP:
        return tuple(sorted(_monotone_chain(pts)))
    keep = set()
    seen = set()
    for p in pts:
        if p in seen:
            continue
        seen.add(p)
        seen.add(vneg(p))
        others = [o for o in pts if o != p]
        if _extreme_by_lp(p, others, budgets):
            keep.add(p)
            keep.add(vneg(p))
    return tuple(sorted(keep))


# ---------------------------------------------------------------------------
# double description


def _dd_vertices(ineqs, dim, budgets: Budgets):
    """Vertices of {x : <a, x> <= 1 for a in ineqs}, exact double description.

    Requires the functionals to span (guaranteeing boundedness for symmetric
    inputs). The seed box strictly contains the target region, so box facets
    never survive to the final vertex set.
    """
    ineqs = list(ineqs)
    # seed box from dim independent functionals
    basis = []
    for a in ineqs:
        if rank(basis + [a]) > len(basis):
            basis.append(a)
            if len(basis) == dim:
                break
    if len(basis) < dim:
        raise Unbounded("functionals do not span; region is unbounded")
    minv = inverse(tuple(basis))
    radii = [sum((abs(minv[j][k]) for k in range(dim)), ZERO) + 1 for j in range(dim)]

    constraints = []
    for j in range(dim):
        e = [ZERO] * dim
        e[j] = ONE / radii[j]
        constraints.append(tuple(e))
        e2 = [ZERO] * dim
        e2[j] = -ONE / radii[j]
        constraints.append(tuple(e2))

    verts = []
    acts = []
    for corner in range(1 << dim):
        v = tuple(radii[j] if corner >> j & 1 else -radii[j] for j in range(dim))
        verts.append(v)
        acts.append(frozenset(2 * j + (0 if corner >> j & 1 else 1) for j in range(dim)))

    def tight_set(point, upto):
        return frozenset(i for i in range(upto) if dot(constraints[i], point) == 1)

    for a in ineqs:
        idx = len(constraints)
        constraints.append(a)
        slack = [ONE - dot(a, v) for v in verts]
        pos = [i for i, s in enumerate(slack) if s > 0]
        neg = [i for i, s in enumerate(slack) if s < 0]
        if not neg:
            for i, s in enumerate(slack):
                if s == 0:
                    acts[i] = acts[i] | {idx}
            continue
        new_pts = {}
        for iu in pos:
            au = acts[iu]
            for iw in neg:
                common = au & acts[iw]
                if len(common) < dim - 1:
                    continue
                if rank([constraints[t] for t in common]) != dim - 1:
                    continue
                su, sw = slack[iu], slack[iw]
                t = su / (su - sw)
                p = vadd(verts[iu], vscale(t, vsub(verts[iw], verts[iu])))
                new_pts[p] = None
        keep_verts = []
        keep_acts = []
        kept_coords = set()
        for i, s in enumerate(slack):
            if s > 0:
                keep_verts.append(verts[i])
                keep_acts.append(acts[i])
                kept_coords.add(verts[i])
            elif s == 0:
                keep_verts.append(verts[i])
                keep_acts.append(acts[i] | {idx})
                kept_coords.add(verts[i])
        for p in new_pts:
            if p in kept_coords:
                continue
            keep_verts.append(p)
            keep_acts.append(tight_set(p, len(constraints)))
        verts, acts = keep_verts, keep_acts
        if len(verts) > budgets.vertex_budget:
            raise BudgetExceeded(
                f"double description exceeded {budgets.vertex_budget} vertices")

    nbox = 2 * dim
    out = [v for v, a in zip(verts, acts) if not any(t < nbox for t in a)]
    return _canon_points(out)


def _polygon_facets_from_hull(hull_ccw):
    """Facet functionals of a planar hull given in CCW adjacency order."""
    facets = []
    n = len(hull_ccw)
    for i in range(n):
        v, w = hull_ccw[i], hull_ccw[(i + 1) % n]
        f = solve((v, w), (ONE, ONE))
        if f is None:
            raise NotFullDimensional("polygon edge through the origin")
        facets.append(f)
    return facets


def _facet_enum(points, dim, budgets: Budgets):
    """Facet functionals of conv(points) for symmetric spanning extreme points."""
    if dim == 1:
        a = max(p[0] for p in points)
        return (vec([-ONE / a]), vec([ONE / a]))
    if dim == 2:
        hull = _monotone_chain(points)
        return _canon_points(_polygon_facets_from_hull(hull))
    if dim > budgets.dim_cap:
        raise DimensionOverBudget(f"dim {dim} over enumeration cap {budgets.dim_cap}")
    return _dd_vertices(points, dim, budgets)


def from_vertices(points, dim=None, budgets: Budgets = DEFAULT) -> SymPolytope:
    """Build a polytope from a symmetric spanning point set."""
    verts = hull_reduce(points, dim, budgets)
    dim = len(verts[0])
    facets = _facet_enum(verts, dim, budgets)
    big = len(verts) * len(facets) > _VERIFY_CELL_CAP
    return SymPolytope(dim, verts, facets, verify=not big)


def _minimal_facets(verts, candidates, dim):
    """Filter candidate inequalities down to true facets by tight-set rank."""
    out = []
    for f in candidates:
        tight = [v for v in verts if dot(f, v) == 1]
        if not tight:
            continue
        if dim == 1:
            out.append(f)
            continue
        t0 = tight[0]
        if rank([vsub(t, t0) for t in tight[1:]]) == dim - 1:
            out.append(f)
    return out


def vertex_enum(facets, dim=None, budgets: Budgets = DEFAULT) -> SymPolytope:
    """Polytope from facet functionals {x : <f, x> <= 1}.

    Redundant inequalities are tolerated and dropped from the final facet
    list. Raises Unbounded if the functionals do not span, and
    DimensionOverBudget above the enumeration cap.
    """
    fs = _canon_points(facets)
    if not fs:
        raise NotFullDimensional("empty facet list")
    if dim is None:
        dim = len(fs[0])
    _check_symmetric(fs, "facet")
    if _spanning_rank(fs, dim) < dim:
        raise Unbounded("facet functionals do not span")
    if dim == 1:
        a = max(f[0] for f in fs)
        return SymPolytope(1, [(-ONE / a,), (ONE / a,)], [(-a,), (a,)])
    if dim == 2:
        hull = _monotone_chain(fs)  # extreme functionals = polar vertices
        verts = _polygon_facets_from_hull(hull)
        big = len(verts) * len(hull) > _VERIFY_CELL_CAP
        return SymPolytope(2, verts, hull, verify=not big)
    if dim > budgets.dim_cap:
        raise DimensionOverBudget(f"dim {dim} over enumeration cap {budgets.dim_cap}")
    verts = _dd_vertices(fs, dim, budgets)
    kept = _minimal_facets(verts, fs, dim)
    return SymPolytope(dim, verts, kept, verify=True)


def polar(P: SymPolytope) -> SymPolytope:
    """Polar body: bit-exact swap of vertex and facet lists."""
    return SymPolytope(P.dim, P.facets, P.vertices, verify=False)


def support(P: SymPolytope, x) -> object:
    """Support function max_{v in P} <v, x> (exact, >= 0 by symmetry)."""
    x = vec(x)
    return max(dot(v, x) for v in P.vertices)


def gauge(P: SymPolytope, x) -> object:
    """Minkowski gauge of x with respect to P (exact; 0 iff x = 0)."""
    x = vec(x)
    return max(dot(f, x) for f in P.facets)


def linear_image(P: SymPolytope, T, budgets: Budgets = DEFAULT) -> SymPolytope:
    """Image polytope under a surjective linear map given as rows."""
    rows = tuple(vec(r) for r in T)
    k = len(rows)
    if any(len(r) != P.dim for r in rows):
        raise DimMismatch("map width differs from polytope dim")
    if rank(rows) < k:
        raise NotSurjective("map rows are dependent; image is not full-dimensional")
    images = {mat_vec(rows, v) for v in P.vertices}
    return from_vertices(images, k, budgets)


def section(P: SymPolytope, basis_cols, budgets: Budgets = DEFAULT) -> SymPolytope:
    """Section of P by the span of the given column vectors, in basis coords.

    Defined as polar(linear_image(polar(P), B^T)), which is exact and reuses
    the single enumeration primitive.
    """
    cols = tuple(vec(c) for c in basis_cols)
    if not cols or rank(cols) < len(cols):
        raise DependentBasis("section basis is empty or dependent")
    if any(len(c) != P.dim for c in cols):
        raise DimMismatch("basis vectors have wrong length")
    bt = cols  # rows of B^T are exactly the basis columns
    return polar(linear_image(polar(P), bt, budgets))


# ---------------------------------------------------------------------------
# zonotopes


def _merge_generators(generators):
    """Drop zeros and merge parallel generators by direction class."""
    classes = {}
    for g in generators:
        g = vec(g)
        if all(a == 0 for a in g):
            continue
        d = primitive_direction(g)
        gp = lexpos(g)
        scale = next(a for a in gp if a != 0)
        classes[d] = classes.get(d, ZERO) + scale
    return [vscale(c, d) for d, c in sorted(classes.items())]


def zonotope_of(generators, budgets: Budgets = DEFAULT) -> SymPolytope:
    """Minkowski sum of segments [-g, g] over the generators.

    Vertices are the signed sums whose sign pattern is supported by an open
    linear functional cell (an exact LP test per pattern); facet normals come
    from hyperplanes spanned by (dim-1)-subsets of the merged generators.
    Zero generators are dropped, parallel ones merged.
    """
    gens = _merge_generators(generators)
    if not gens:
        raise NotSpanning("no nonzero generators")
    m = len(gens[0])
    if len(gens) > budgets.zonotope_generators:
        raise BudgetExceeded(
            f"{len(gens)} generators over cap {budgets.zonotope_generators}")
    if rank(gens) < m:
        raise NotSpanning("generators do not span")

    if m == 1:
        total = sum((abs(g[0]) for g in gens), ZERO)
        return SymPolytope(1, [(-total,), (total,)],
                           [(-ONE / total,), (ONE / total,)])

    verts = set()

    def feasible(signs):
        k = len(signs)
        a_ub = [vscale(-s, gens[i]) for i, s in enumerate(signs)]
        b_ub = [-ONE] * k
        return lp_feasible(a_ub=a_ub, b_ub=b_ub, budgets=budgets)

    def rec(signs):
        depth = len(signs)
        if depth >= 3 and not feasible(signs):
            return
        if depth == len(gens):
            if depth < 3 and not feasible(signs):
                return
            v = vec([ZERO] * m)
            for s, g in zip(signs, gens):
                v = vadd(v, vscale(s, g))
            verts.add(v)
            verts.add(vneg(v))
            return
        rec(signs + [ONE])
        rec(signs + [-ONE])

    rec([ONE])  # fix the first sign; negation supplies the mirror patterns

    normals = {}
    for subset in combinations(range(len(gens)), m - 1):
        sub = [gens[i] for i in subset]
        if rank(sub) < m - 1:
            continue
        ns = nullspace(sub)
        if len(ns) != 1:
            continue
        normals[primitive_direction(ns[0])] = None
    facets = set()
    for n in normals:
        h = sum((abs(dot(g, n)) for g in gens), ZERO)
        facets.add(vscale(ONE / h, n))
        facets.add(vscale(-ONE / h, n))

    return SymPolytope(m, verts, facets)


# ---------------------------------------------------------------------------
# faces


@dataclass(frozen=True)
class Edge:
    u: tuple
    v: tuple
    vector: tuple      # lexpos(v - u), the full difference vector
    length_sq: object  # rational squared Euclidean length

    @property
    def length(self) -> float:
        return math.sqrt(float(self.length_sq))


def facet_incidence(P: SymPolytope):
    """For each vertex (by index), the frozenset of tight facet indices."""
    if "incidence" not in P._cache:
        inc = []
        for v in P.vertices:
            inc.append(frozenset(i for i, f in enumerate(P.facets) if dot(f, v) == 1))
        P._cache["incidence"] = tuple(inc)
    return P._cache["incidence"]


def edges(P: SymPolytope, budgets: Budgets = DEFAULT):
    """All 1-faces of P; requires dim >= 2.

    A vertex pair spans an edge iff their common tight facet normals have
    rank dim-1 (exact arithmetic makes this test complete).
    """
    if P.dim < 2:
        raise DimensionTooSmall("edges need dim >= 2")
    if "edges" in P._cache:
        return P._cache["edges"]
    out = []
    if P.dim == 2:
        hull = _monotone_chain(P.vertices)
        n = len(hull)
        pairs = [(hull[i], hull[(i + 1) % n]) for i in range(n)]
        pairs = [(min(u, v), max(u, v)) for u, v in pairs]
        for u, v in sorted(set(pairs)):
            d = lexpos(vsub(v, u))
            out.append(Edge(u, v, d, dot(d, d)))
    else:
        inc = facet_incidence(P)
        nv = len(P.vertices)
        for i in range(nv):
            for j in range(i + 1, nv):
                common = inc[i] & inc[j]
                if len(common) < P.dim - 1:
                    continue
                if rank([P.facets[t] for t in common]) == P.dim - 1:
                    u, v = P.vertices[i], P.vertices[j]
                    d = lexpos(vsub(v, u))
                    out.append(Edge(u, v, d, dot(d, d)))
        out.sort(key=lambda e: (e.u, e.v))
    P._cache["edges"] = tuple(out)
    return P._cache["edges"]


# ---------------------------------------------------------------------------
# congruence


def _vertex_profiles(P: SymPolytope, budgets: Budgets):
    inc = facet_incidence(P)
    nv = len(P.vertices)
    if P.dim >= 2 and nv * nv <= 4 * budgets.congruence_nodes:
        adj = [set() for _ in range(nv)]
        if P.dim == 2:
            index = {v: i for i, v in enumerate(P.vertices)}
            for e in edges(P, budgets):
                iu, iv = index[e.u], index[e.v]
                adj[iu].add(iv)
                adj[iv].add(iu)
        else:
            for i in range(nv):
                for j in range(i + 1, nv):
                    common = inc[i] & inc[j]
                    if len(common) >= P.dim - 1 and \
                            rank([P.facets[t] for t in common]) == P.dim - 1:
                        adj[i].add(j)
                        adj[j].add(i)
    else:
        adj = [set() for _ in range(nv)]
    deg = [len(a) for a in adj]
    prof = []
    for i in range(nv):
        nbr = tuple(sorted(deg[j] for j in adj[i]))
        prof.append((len(inc[i]), deg[i], nbr))
    return prof, adj


def congruent(P: SymPolytope, Qp: SymPolytope, budgets: Budgets = DEFAULT):
    """Linear map T with T(vertices of P) = vertices of Q, or None.

    Complete for polytopes: searches assignments of a fixed independent seed
    basis of P-vertices to Q-vertices, pruned by combinatorial invariants
    (facet degree, adjacency degree, neighbor degree profile, pairwise
    adjacency consistency), then verifies the full vertex bijection exactly.
    Deterministic given the canonical vertex order.
    """
    if P.dim != Qp.dim:
        return None
    if len(P.vertices) != len(Qp.vertices) or len(P.facets) != len(Qp.facets):
        return None
    profP, adjP = _vertex_profiles(P, budgets)
    profQ, adjQ = _vertex_profiles(Qp, budgets)
    if sorted(profP) != sorted(profQ):
        return None

    dim = P.dim
    seed = []
    seed_vecs = []
    for i, v in enumerate(P.vertices):
        if rank(seed_vecs + [v]) > len(seed_vecs):
            seed.append(i)
            seed_vecs.append(v)
            if len(seed) == dim:
                break
    if len(seed) < dim:
        return None  # cannot happen for valid polytopes

    qverts = Qp.vertices
    vset = set(qverts)
    vcols = tuple(zip(*seed_vecs))  # matrix whose columns are seed vertices
    vinv = inverse(vcols)
    nodes = 0

    def extend(k, chosen):
        nonlocal nodes
        if k == dim:
            wcols = tuple(zip(*[qverts[c] for c in chosen]))
            T = mat_mul(wcols, vinv)  # T v_i = w_i by construction
            img = {mat_vec(T, v) for v in P.vertices}
            if img == vset:
                return T
            return None
        pi = seed[k]
        for ci, w in enumerate(qverts):
            nodes += 1
            if nodes > budgets.congruence_nodes:
                raise BudgetExceeded("congruence search node budget exhausted")
            if ci in chosen:
                continue
            if profQ[ci] != profP[pi]:
                continue
            ok = True
            for kk, cj in enumerate(chosen):
                pj = seed[kk]
                if (pj in adjP[pi]) != (cj in adjQ[ci]):
                    ok = False
                    break
            if not ok:
                continue
            res = extend(k + 1, chosen + [ci])
            if res is not None:
                return res
        return None

    return extend(0, [])
