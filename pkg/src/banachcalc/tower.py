"""Finite towers of exactly isometric gluings with measurable homogeneity.

A tower starts from a seed space and repeatedly glues in a triple
(A, B, i: A -> B isometric) along an isometric anchor A -> X_k via the l_1
pushout, which keeps every chain map exactly isometric. The full build is
logged (triple, anchor, both pushout maps) so any stage replays bit-exactly
without randomness. Homogeneity is probed, never asserted: for a probe
(triple, placement of A in X_k) the reported defect is an upper bound on the
best extension distortion, found by an exact best-norm-extension LP plus
seeded perturbation restarts.
"""

from __future__ import annotations

import random
import statistics
from dataclasses import dataclass, replace

from .budgets import DEFAULT, Budgets
from .errors import (ConstructionFailed, DimensionOverBudget, DimMismatch,
                     NotIsometricInput)
from .linprog import lp_solve
from .rationals import ONE, ZERO, to_float
from .ratlinalg import identity, inverse, mat_mul, rank, rref, unit
from .sampling import rand_entry, random_matrix
from .spaces import FinSpace, LinOp, distortion, is_isometric, operator_norm


@dataclass(frozen=True)
class EmbeddingTriple:
    """A small space, a larger one, and an exact isometry between them."""

    A: FinSpace
    B: FinSpace
    i: LinOp

    def __post_init__(self):
        if self.i.domain != self.A or self.i.codomain != self.B:
            raise DimMismatch("triple map must go A -> B")
        if not distortion(self.i).is_isometry:
            raise NotIsometricInput("triple map is not isometric")


@dataclass(frozen=True)
class LogEntry:
    """One glue step: everything needed to replay it bit-exactly."""

    step: int
    triple: EmbeddingTriple
    anchor: tuple       # matrix rows of the anchor A -> X_step
    j_left: tuple       # matrix rows of X_step -> X_{step+1}
    j_right: tuple      # matrix rows of B -> X_{step+1}


@dataclass(frozen=True)
class TowerStage:
    """Stage k of a tower: the space, the full isometric chain, the log."""

    index: int
    space: FinSpace
    chain: tuple = ()    # chain[j]: X_j -> X_{j+1}, all isometric
    log: tuple = ()
    truncated: bool = False

    def chain_map(self, start: int = 0) -> LinOp:
        """Composed isometry X_start -> X_index."""
        maps = self.chain[start:]
        if not maps:
            sp = self.space
            return LinOp(sp, sp, identity(sp.dim))
        m = maps[0]
        for nxt in maps[1:]:
            m = nxt.compose(m)
        return m


@dataclass(frozen=True)
class TripleNet:
    """A finite list of triples, pairwise separated (or proven-duplicate-free)
    under the upper-bound formation distance estimator."""

    n: int
    m: int
    eps: object          # rational resolution, or None for infinity
    triples: tuple


def _scale_matrix(rows, s):
    return tuple(tuple(a * s for a in r) for r in rows)


def find_isometric_embeddings(A: FinSpace, B: FinSpace, seed: int,
                              tries: int = 16,
                              budgets: Budgets = DEFAULT) -> list:
    """Exact isometries A -> B: deterministic candidates plus seeded search.

    Candidates: a congruence witness when dims agree, the coordinate
    inclusion, and random injective matrices rescaled to norm one; each is
    kept only if its distortion is exactly 1. Deduplicated, deterministic
    under seed; may legitimately return []."""
    found = []
    seen = set()

    def consider(rows):
        rows = tuple(tuple(r) for r in rows)
        if rows in seen:
            return
        seen.add(rows)
        if rank(list(zip(*rows))) < A.dim:
            return
        op = LinOp(A, B, rows)
        if distortion(op, budgets).is_isometry:
            found.append(op)

    if A.dim == B.dim:
        w = is_isometric(A, B, budgets)
        if w is not None:
            consider(w.matrix)
    consider(tuple(tuple(ONE if (r == c) else ZERO for c in range(A.dim))
                   for r in range(B.dim)))
    rng = random.Random(seed)
    for _ in range(tries):
        rows = random_matrix(rng, B.dim, A.dim, injective=True)
        nrm = operator_norm(LinOp(A, B, rows))
        if nrm == 0:
            continue
        consider(_scale_matrix(rows, ONE / nrm))
    return found


def _signed_permutations(n: int):
    import itertools
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            yield tuple(tuple((signs[r] * ONE) if perm[r] == c else ZERO
                              for c in range(n)) for r in range(n))


def _induced_root_map(t1: EmbeddingTriple, t2: EmbeddingTriple, u_rows):
    """Solve i2 . v = u . i1 for v; None unless it holds exactly."""
    rhs = mat_mul(u_rows, t1.i.matrix)          # B2dim x n
    i2 = t2.i.matrix                            # B2dim x n
    # v = (i2^T i2)^{-1} i2^T rhs, then verified
    gram = mat_mul(tuple(zip(*i2)), i2)
    ginv = inverse(gram)
    if ginv is None:
        return None
    v = mat_mul(mat_mul(ginv, tuple(zip(*i2))), rhs)
    if mat_mul(i2, v) != rhs:
        return None
    return v


def triple_distance_upper(t1: EmbeddingTriple, t2: EmbeddingTriple,
                          budgets: Budgets = DEFAULT):
    """Upper bound on the formation distance between two triples.

    Searches a small pool of isometries u: B1 -> B2 (congruence witness,
    signed permutations for dims <= 3) for one with an exactly commuting,
    exactly isometric induced root map; success certifies distance 1
    (returned as the bound). Returns None when no bound was certified --
    never a guess."""
    if t1.A.dim != t2.A.dim or t1.B.dim != t2.B.dim:
        return None
    pool = []
    if t1.B.dim <= 3:
        pool.extend(_signed_permutations(t1.B.dim))
    w = is_isometric(t1.B, t2.B, budgets)
    if w is not None:
        pool.append(w.matrix)
    for u_rows in pool:
        op = LinOp(t1.B, t2.B, u_rows)
        if not distortion(op, budgets).is_isometry:
            continue
        v = _induced_root_map(t1, t2, u_rows)
        if v is None:
            continue
        vop = LinOp(t1.A, t2.A, v)
        if rank(list(zip(*v))) == t1.A.dim and \
                distortion(vop, budgets).is_isometry:
            return ONE
    return None


def triple_net(spaces, n: int, m: int, eps, seed: int,
               budgets: Budgets = DEFAULT) -> TripleNet:
    """Greedy net of embedding triples drawn from a list of spaces.

    spaces is an iterable of FinSpace (a catalog's spaces work); candidate
    triples pair every dim-n space with every dim-m space through
    find_isometric_embeddings. A candidate is dropped only when some kept
    triple is *proven* within eps by the distance estimator (upper bound
    1 <= 1 + eps); eps = None means a single representative survives.
    """
    if n >= m:
        raise ValueError("net needs n < m")
    spaces = list(spaces)
    roots = [S for S in spaces if S.dim == n]
    tops = [S for S in spaces if S.dim == m]
    kept = []
    k = 0
    for A in roots:
        for B in tops:
            for emb in find_isometric_embeddings(A, B, seed + k, budgets=budgets):
                k += 1
                t = EmbeddingTriple(A, B, emb)
                if eps is None and kept:
                    continue
                dup = False
                if eps is not None:
                    for s in kept:
                        ub = triple_distance_upper(s, t, budgets)
                        if ub is not None and ub - 1 < eps:
                            dup = True
                            break
                if not dup:
                    kept.append(t)
    return TripleNet(n, m, eps, tuple(kept))


# ---------------------------------------------------------------------------
# building


def tower_step(stage: TowerStage, t: EmbeddingTriple, anchor: LinOp,
               budgets: Budgets = DEFAULT) -> TowerStage:
    """Glue one triple onto the current stage along an isometric anchor.

    The next space is the l_1 pushout of (anchor: A -> X_k, i: A -> B); its
    left map extends the chain and is exactly isometric (asserted inside the
    pushout). Raises DimensionOverBudget before doing any work if the glued
    dimension would exceed the tower cap."""
    from .amalgams import VFormation, pushout

    if anchor.domain != t.A or anchor.codomain != stage.space:
        raise DimMismatch("anchor must map the triple root into the stage")
    if not distortion(anchor, budgets).is_isometry:
        raise NotIsometricInput("anchor is not isometric")
    newdim = stage.space.dim + t.B.dim - t.A.dim
    if newdim > budgets.tower_dim_cap:
        raise DimensionOverBudget(
            f"glued dimension {newdim} exceeds tower cap "
            f"{budgets.tower_dim_cap}")
    v = VFormation(root=t.A, left=stage.space, right=t.B,
                   arrow_left=anchor, arrow_right=t.i)
    am = pushout(v, "sum1", budgets=budgets)
    entry = LogEntry(stage.index, t, anchor.matrix,
                     am.j_left.matrix, am.j_right.matrix)
    return TowerStage(stage.index + 1, am.space,
                      stage.chain + (am.j_left,), stage.log + (entry,))


def anchor_candidates(A: FinSpace, stage: TowerStage, seed: int,
                      budgets: Budgets = DEFAULT) -> list:
    """Isometric placements of A in the stage space: provenance first.

    Every logged gluing whose root or glued space equals A yields a
    placement by composing the recorded maps forward through the chain;
    fresh placements come from the seeded embedding search."""
    out = []
    seen = set()

    def keep(op):
        if op.matrix not in seen:
            seen.add(op.matrix)
            out.append(op)

    for j, step_map in enumerate(stage.chain):
        if step_map.domain == A:
            keep(stage.chain_map(j))
    if A == stage.space:
        keep(LinOp(A, A, identity(A.dim)))
    for e in stage.log:
        fwd = stage.chain_map(e.step + 1)
        if e.triple.A == A:
            anchor_then = LinOp(A, stage.chain[e.step].domain, e.anchor)
            keep(fwd.compose(stage.chain[e.step].compose(anchor_then)))
        if e.triple.B == A:
            jr = LinOp(A, stage.chain[e.step].codomain, e.j_right)
            keep(fwd.compose(jr))
    for op in find_isometric_embeddings(A, stage.space, seed,
                                        tries=budgets.search_restarts,
                                        budgets=budgets):
        keep(op)
    return out


def build_tower(seed_space: FinSpace, net: TripleNet, steps: int, seed: int,
                budgets: Budgets = DEFAULT) -> TowerStage:
    """Round-robin over the net, gluing one triple per step.

    Anchors are chosen by seeded draw from the deterministic candidate list,
    so the build is reproducible from (seed_space, net, steps, seed) and
    bit-exactly replayable from its log alone. Hitting the dimension budget
    (or failing to place a root) truncates: the last completed stage is
    returned with the truncation marker set."""
    if not net.triples:
        raise ValueError("empty net")
    stage = TowerStage(0, seed_space)
    rng = random.Random(seed)
    for s in range(steps):
        t = net.triples[s % len(net.triples)]
        cands = anchor_candidates(t.A, stage, seed * 1000 + s, budgets)
        if not cands:
            return replace(stage, truncated=True)
        anchor = rng.choice(cands)
        try:
            stage = tower_step(stage, t, anchor, budgets)
        except DimensionOverBudget:
            return replace(stage, truncated=True)
    return stage


def replay_tower(seed_space: FinSpace, log, budgets: Budgets = DEFAULT) -> TowerStage:
    """Rebuild a stage from its log and verify it matches bit-exactly.

    Raises ConstructionFailed on the first step whose recomputed pushout
    maps differ from the recorded ones."""
    stage = TowerStage(0, seed_space)
    for e in log:
        anchor = LinOp(e.triple.A, stage.space, e.anchor)
        stage = tower_step(stage, e.triple, anchor, budgets)
        new = stage.log[-1]
        if new.j_left != e.j_left or new.j_right != e.j_right:
            raise ConstructionFailed(
                f"replay diverged at step {e.step}",
                {"expected_j_left": e.j_left, "got_j_left": new.j_left})
    return stage


# ---------------------------------------------------------------------------
# homogeneity probes


@dataclass(frozen=True)
class ProbeResult:
    """Upper bound on the best extension distortion for one probe."""

    defect: object       # exact rational >= 1, or None if no bound found
    method: str          # "square" | "provenance" | "search"

    @property
    def defect_float(self):
        return None if self.defect is None else to_float(self.defect)


@dataclass(frozen=True)
class DefectStats:
    probes: tuple
    exact_ones: int
    median: object       # float median of the bounded probes, or None


def _best_norm_extension(t: EmbeddingTriple, i: LinOp, stage_space: FinSpace,
                         budgets: Budgets):
    """Exact minimum of ||ext|| over all linear ext: B -> X with ext.i = i.

    Extensions are parametrized by a free block L on complement coordinates
    of i(A) in B: ext(x) = i(alpha(x)) + L comp(x). Returns (ext, norm)."""
    nB, nX, a = t.B.dim, stage_space.dim, t.A.dim
    icols = list(zip(*t.i.matrix))
    _, pivots = rref(tuple(icols))
    J = [j for j in range(nB) if j not in pivots]
    full = tuple(zip(*(icols + [unit(nB, j) for j in J])))
    inv = inverse(full)
    alpha_rows, comp_rows = inv[:a], inv[a:]
    base = mat_mul(i.matrix, alpha_rows)        # nX x nB

    nfree = nX * len(J)
    nvars = nfree + 1
    a_ub, b_ub = [], []
    for v in t.B.ball.vertices:
        cy = [sum((comp_rows[j][c] * v[c] for c in range(nB)), ZERO)
              for j in range(len(J))]
        bx = [sum((base[r][c] * v[c] for c in range(nB)), ZERO)
              for r in range(nX)]
        for f in stage_space.ball.facets:
            row = [ZERO] * nvars
            for r in range(nX):
                for j in range(len(J)):
                    row[r * len(J) + j] = f[r] * cy[j]
            row[-1] = -ONE
            a_ub.append(row)
            b_ub.append(-sum((f[r] * bx[r] for r in range(nX)), ZERO))
    c = [ZERO] * nfree + [ONE]
    res = lp_solve(c, a_ub=a_ub, b_ub=b_ub, budgets=budgets)
    L = tuple(tuple(res.x[r * len(J) + j] for j in range(len(J)))
              for r in range(nX))
    ext_rows = tuple(tuple(base[r][c] + sum((L[r][j] * comp_rows[j][c]
                                             for j in range(len(J))), ZERO)
                           for c in range(nB)) for r in range(nX))
    return LinOp(t.B, stage_space, ext_rows), res.value, (alpha_rows,
                                                          comp_rows, base, J)


def homogeneity_defect(stage: TowerStage, probes, seed: int,
                       budgets: Budgets = DEFAULT) -> DefectStats:
    """Upper-bound extension defects for (triple, placement) probes.

    Square triples extend exactly (defect 1); placements recorded in the
    build log extend through the glued copy (defect 1, found by provenance
    lookup); everything else gets the best-norm-extension LP plus seeded
    random perturbations of the free block, reporting the smallest exact
    distortion seen. Bounds are upper bounds only and never claimed optimal.
    """
    rng = random.Random(seed)
    results = []
    for t, i in probes:
        if i.domain != t.A or i.codomain != stage.space:
            raise DimMismatch("probe placement must map the root into the stage")
        if not distortion(i, budgets).is_isometry:
            raise NotIsometricInput("probe placement is not isometric")

        if t.A.dim == t.B.dim:
            results.append(ProbeResult(ONE, "square"))
            continue

        hit = None
        for e in stage.log:
            if e.triple != t:
                continue
            fwd = stage.chain_map(e.step + 1)
            ext = fwd.compose(LinOp(t.B, stage.chain[e.step].codomain,
                                    e.j_right))
            if mat_mul(ext.matrix, t.i.matrix) == i.matrix:
                hit = ext
                break
        if hit is not None:
            results.append(ProbeResult(ONE, "provenance"))
            continue

        ext, nrm, (alpha_rows, comp_rows, base, J) = _best_norm_extension(
            t, i, stage.space, budgets)
        best = None
        cand = [ext]
        for _ in range(budgets.search_restarts):
            L = [[rand_entry(rng) for _ in J] for _ in range(stage.space.dim)]
            pert = tuple(tuple(base[r][c] + sum(
                (L[r][j] * comp_rows[j][c] for j in range(len(J))), ZERO)
                for c in range(t.B.dim)) for r in range(stage.space.dim))
            cand.append(LinOp(t.B, stage.space, pert))
        for op in cand:
            cert = distortion(op, budgets)
            if cert.distortion is not None:
                if best is None or cert.distortion < best:
                    best = cert.distortion
        results.append(ProbeResult(best, "search"))

    bounded = [to_float(r.defect) for r in results if r.defect is not None]
    return DefectStats(tuple(results),
                       sum(1 for r in results if r.defect == 1),
                       statistics.median(bounded) if bounded else None)
