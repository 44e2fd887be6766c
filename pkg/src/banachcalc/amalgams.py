"""Pushout amalgamation of normed spaces and catalog-level closure steps.

The pushout of a V-formation (two arrows out of a common root) is the
quotient of the direct sum by the antidiagonal copy of the root. With the
l_1 sum and isometric arrows both canonical maps into the pushout are
isometric, and this module asserts that exactly; with the (approximate) l_2
sum the isometry defects are reported, never asserted, since the 1-dim
identity formation already shows a defect of 1 - 1/sqrt(2).

Isometry defect of a map j here is 1 - 1/||j^-1||: the maps in question are
contractions (isometric inclusion followed by a quotient map), so this is 0
exactly when j is isometric and measures the worst norm loss on the sphere.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass

from .budgets import DEFAULT, Budgets
from .errors import (ConstructionFailed, DependentColumns, DimMismatch,
                     NotIsometricInput)
from .polytopes import facet_incidence
from .rationals import ONE, qstr
from .ratlinalg import mat_mul, rank, unit, vneg
from .sampling import random_matrix, random_subspace_basis
from .spaces import (DistortionCert, FinSpace, LinOp, annihilator, distortion,
                     dsum1, dsum2_approx, dual, inclusion_map, is_isometric,
                     quotient, subspace)


@dataclass(frozen=True)
class VFormation:
    """Two arrows out of a common root: B1 <- A -> B2.

    mode is "isometric" (both arrows exact isometries, verified at
    construction) or "isomorphic" (arrows only need to be injective).
    """

    root: FinSpace
    left: FinSpace
    right: FinSpace
    arrow_left: LinOp
    arrow_right: LinOp
    mode: str = "isometric"

    def __post_init__(self):
        if self.arrow_left.domain != self.root or self.arrow_right.domain != self.root:
            raise DimMismatch("formation arrows must start at the root")
        if self.arrow_left.codomain != self.left or \
                self.arrow_right.codomain != self.right:
            raise DimMismatch("formation arrows must land in the stated spaces")
        for name, arrow in (("left", self.arrow_left), ("right", self.arrow_right)):
            cols = list(zip(*arrow.matrix))
            if rank(cols) < self.root.dim:
                raise DependentColumns(f"{name} arrow is not injective")
        if self.mode == "isometric":
            for name, arrow in (("left", self.arrow_left),
                                ("right", self.arrow_right)):
                cert = distortion(arrow)
                # norm-preserving, not merely distortion 1 (scalings have
                # distortion 1 without being isometries)
                if cert.norm != 1 or cert.inv_norm != 1:
                    raise NotIsometricInput(f"{name} arrow is not isometric")
        elif self.mode != "isomorphic":
            raise ValueError(f"unknown formation mode {self.mode!r}")


@dataclass(frozen=True)
class Amalgam:
    """Pushout data: the glued space, both canonical maps, isometry defects.

    Defects are exact rationals in [0, 1); None means the map was not even
    injective. witness carries an l_1 embedding when the amalgam was built
    inside l_1.
    """

    space: FinSpace
    j_left: LinOp
    j_right: LinOp
    defect_left: object
    defect_right: object
    witness: object = None


def _defect(cert: DistortionCert):
    if cert.inv_norm is None:
        return None
    return 1 - ONE / cert.inv_norm


def pushout(v: VFormation, kind: str = "sum1", eps=None,
            budgets: Budgets = DEFAULT) -> Amalgam:
    """Pushout of a V-formation through the l_1 or approximate l_2 sum.

    kind is "sum1" or "sum2"; the latter needs eps and produces an
    approximate glued space (tagged in its metadata). With sum1 and an
    isometric formation the zero defects are asserted (ConstructionFailed
    would signal a kernel bug); otherwise defects are reported as computed.
    """
    B1, B2, A = v.left, v.right, v.root
    if kind == "sum1":
        C = dsum1(B1, B2, budgets)
    elif kind == "sum2":
        if eps is None:
            raise ValueError("sum2 pushout needs eps")
        C = dsum2_approx(B1, B2, eps, budgets)
    else:
        raise ValueError(f"unknown sum kind {kind!r}")

    n1 = B1.dim
    hcols = []
    for t in range(A.dim):
        e = unit(A.dim, t)
        top = v.arrow_left.apply(e)
        bot = vneg(v.arrow_right.apply(e))
        hcols.append(tuple(top) + tuple(bot))
    F, qmap = quotient(C, hcols, budgets)

    j1 = LinOp(B1, F, tuple(row[:n1] for row in qmap.matrix))
    j2 = LinOp(B2, F, tuple(row[n1:] for row in qmap.matrix))
    d1 = _defect(distortion(j1, budgets))
    d2 = _defect(distortion(j2, budgets))
    if kind == "sum1" and v.mode == "isometric" and (d1 != 0 or d2 != 0):
        raise ConstructionFailed(
            "sum1 pushout of an isometric formation produced nonzero defects",
            {"defect_left": qstr(d1) if d1 is not None else "inf",
             "defect_right": qstr(d2) if d2 is not None else "inf"})
    return Amalgam(space=F, j_left=j1, j_right=j2,
                   defect_left=d1, defect_right=d2)


@dataclass(frozen=True)
class AmalgamReport:
    commutes: bool
    defect_left: object
    defect_right: object
    norm_left: object
    norm_right: object
    l1_embeddable: object = None  # None = not checked

    @property
    def passed(self) -> bool:
        return self.commutes and self.defect_left == 0 and self.defect_right == 0


def verify_amalgam(v: VFormation, a: Amalgam, check_l1: bool = False,
                   budgets: Budgets = DEFAULT) -> AmalgamReport:
    """Recompute the commuting square and both defects; never raises."""
    commutes = (mat_mul(a.j_left.matrix, v.arrow_left.matrix)
                == mat_mul(a.j_right.matrix, v.arrow_right.matrix))
    c1 = distortion(a.j_left, budgets)
    c2 = distortion(a.j_right, budgets)
    l1flag = None
    if check_l1:
        from .l1geometry import is_l1_embeddable
        l1flag = is_l1_embeddable(a.space, budgets)[0]
    return AmalgamReport(commutes=commutes,
                         defect_left=_defect(c1), defect_right=_defect(c2),
                         norm_left=c1.norm, norm_right=c2.norm,
                         l1_embeddable=l1flag)


# ---------------------------------------------------------------------------
# catalogs


@dataclass(frozen=True)
class CatalogEntry:
    space: FinSpace
    provenance: str


class SpaceCatalog:
    """Named spaces with provenance, deduplicated up to isometry.

    add() returns the name under which the space is stored: the new name, or
    the name of an isometric space already present (cheap combinatorial
    signature first, exact congruence second). Iteration order is sorted by
    name, so catalog-level operations are deterministic.
    """

    def __init__(self):
        self.entries: dict[str, CatalogEntry] = {}
        self._signatures: dict[tuple, list[str]] = {}

    @staticmethod
    def _signature(space: FinSpace):
        inc = facet_incidence(space.ball)
        return (space.dim, len(space.ball.vertices), len(space.ball.facets),
                tuple(sorted(len(s) for s in inc)))

    def add(self, name: str, space: FinSpace, provenance: str,
            dedupe: bool = True, budgets: Budgets = DEFAULT) -> str:
        if name in self.entries:
            raise ValueError(f"duplicate catalog name {name!r}")
        sig = self._signature(space)
        if dedupe:
            for other in self._signatures.get(sig, ()):
                if is_isometric(space, self.entries[other].space, budgets) is not None:
                    return other
        self._signatures.setdefault(sig, []).append(name)
        self.entries[name] = CatalogEntry(space, provenance)
        return name

    def names(self):
        return sorted(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, name: str) -> CatalogEntry:
        return self.entries[name]

    def __contains__(self, name):
        return name in self.entries


@dataclass(frozen=True)
class ClosurePolicy:
    """What subspaces/quotients a catalog closure step should take."""

    coordinate: bool = True       # all proper nonempty coordinate subsets
    random_per_space: int = 0     # seeded random proper subspaces
    seed: int = 0
    max_new: int = 64             # stop after this many additions


def _coordinate_subsets(n):
    for mask in range(1, (1 << n) - 1):
        yield tuple(i for i in range(n) if mask >> i & 1)


def _policy_bases(space: FinSpace, policy: ClosurePolicy, rng: random.Random):
    n = space.dim
    if policy.coordinate:
        for subset in _coordinate_subsets(n):
            yield ("coords=" + ",".join(map(str, subset)),
                   [unit(n, i) for i in subset])
    for r in range(policy.random_per_space):
        k = rng.randrange(1, n)
        yield (f"rnd{r}", random_subspace_basis(rng, n, k))


def catalog_H(cat: SpaceCatalog, policy: ClosurePolicy = ClosurePolicy(),
              budgets: Budgets = DEFAULT) -> list[str]:
    """Add subspaces of every catalog space per policy; returns new names."""
    rng = random.Random(policy.seed)
    added = []
    for name in cat.names():
        space = cat[name].space
        if space.dim < 2:
            continue
        for tag, basis in _policy_bases(space, policy, rng):
            if len(added) >= policy.max_new:
                return added
            if f"{name}|H[{tag}]" in cat:
                continue
            S = subspace(space, basis, budgets)
            stored = cat.add(f"{name}|H[{tag}]", S,
                             f"subspace({name}; {tag})", budgets=budgets)
            if stored == f"{name}|H[{tag}]":
                added.append(stored)
    return added


def catalog_Q(cat: SpaceCatalog, policy: ClosurePolicy = ClosurePolicy(),
              budgets: Budgets = DEFAULT) -> list[str]:
    """Add quotients of every catalog space per policy; returns new names."""
    rng = random.Random(policy.seed)
    added = []
    for name in cat.names():
        space = cat[name].space
        if space.dim < 2:
            continue
        for tag, basis in _policy_bases(space, policy, rng):
            if len(added) >= policy.max_new:
                return added
            if len(basis) >= space.dim:
                continue
            if f"{name}|Q[{tag}]" in cat:
                continue
            F, _ = quotient(space, basis, budgets)
            stored = cat.add(f"{name}|Q[{tag}]", F,
                             f"quotient({name}; {tag})", budgets=budgets)
            if stored == f"{name}|Q[{tag}]":
                added.append(stored)
    return added


def catalog_dual(cat: SpaceCatalog, budgets: Budgets = DEFAULT) -> list[str]:
    """Add the dual of every catalog space; returns new names."""
    added = []
    for name in cat.names():
        if f"{name}|*" in cat:
            continue
        stored = cat.add(f"{name}|*", dual(cat[name].space),
                         f"dual({name})", budgets=budgets)
        if stored == f"{name}|*":
            added.append(stored)
    return added


# ---------------------------------------------------------------------------
# duality identities


@dataclass(frozen=True)
class DualityReport:
    """dual(subspace) ~ quotient(dual) and dual(quotient) ~ annihilator."""

    sub_ok: bool
    quot_ok: bool
    witness_sub: object
    witness_quot: object

    @property
    def passed(self) -> bool:
        return self.sub_ok and self.quot_ok


def duality_identity_check(X: FinSpace, sub_basis,
                           budgets: Budgets = DEFAULT) -> DualityReport:
    """Check both finite-dimensional duality identities for one subspace.

    dual(subspace(X, B)) must be isometric to quotient(dual(X), ann(B)),
    and dual(quotient(X, B)) isometric to the annihilator subspace of the
    dual. Witness maps are returned when found.
    """
    S = subspace(X, sub_basis, budgets)
    Qspace, _ = quotient(X, sub_basis, budgets)
    ann_space, ann_basis = annihilator(X, sub_basis, budgets)
    D = dual(X)

    left1 = dual(S)
    right1, _ = quotient(D, ann_basis, budgets)
    w1 = is_isometric(left1, right1, budgets)

    left2 = dual(Qspace)
    w2 = is_isometric(left2, ann_space, budgets)
    return DualityReport(sub_ok=w1 is not None, quot_ok=w2 is not None,
                         witness_sub=w1, witness_quot=w2)


# ---------------------------------------------------------------------------
# catalog growth toward sub-B-convex shadows


@dataclass(frozen=True)
class StepReport:
    added: tuple
    warnings: tuple


def sub_bconvex_step(cat: SpaceCatalog, seed: int, steps: int = 1,
                     close_h: bool = True, budgets: Budgets = DEFAULT) -> StepReport:
    """One growth step: glue an l_1-embeddable space to a catalog space.

    Samples an l_1-embeddable B from the catalog, a space C, a proper
    subspace A of B with its isometric inclusion, and an injective map
    u: A -> C; adds the sum1 pushout of the isomorphic formation (defects
    reported in provenance, not asserted), then optionally closes under
    coordinate subspaces. Missing ingredients produce a warning and a no-op.
    """
    from .l1geometry import is_l1_embeddable

    rng = random.Random(seed)
    added = []
    warns = []

    names = cat.names()
    l1_pool = [n for n in names
               if cat[n].space.dim >= 2 and is_l1_embeddable(cat[n].space, budgets)[0]]
    c_pool = [n for n in names if cat[n].space.dim >= 1]
    if not l1_pool or not c_pool:
        msg = "sub_bconvex_step: no l_1-embeddable space of dim >= 2 in catalog"
        warnings.warn(msg)
        return StepReport(added=(), warnings=(msg,))

    for s in range(steps):
        bname = rng.choice(l1_pool)
        cname = rng.choice(c_pool)
        B = cat[bname].space
        C = cat[cname].space
        k = rng.randrange(1, B.dim)
        basis = random_subspace_basis(rng, B.dim, k)
        A = subspace(B, basis, budgets)
        iB = inclusion_map(B, basis, budgets)
        if k > C.dim:
            warns.append(f"step {s}: sampled root dim {k} exceeds dim of {cname}")
            continue
        u = LinOp(A, C, random_matrix(rng, C.dim, k, injective=True))
        v = VFormation(root=A, left=B, right=C, arrow_left=iB,
                       arrow_right=u, mode="isomorphic")
        am = pushout(v, "sum1", budgets=budgets)
        dl = qstr(am.defect_left) if am.defect_left is not None else "inf"
        dr = qstr(am.defect_right) if am.defect_right is not None else "inf"
        prov = (f"pushout1(B={bname}, C={cname}, rootdim={k}, seed={seed}, "
                f"step={s}, defects=({dl},{dr}))")
        if f"F[{seed}.{s}]" in cat:
            warns.append(f"step {s}: name F[{seed}.{s}] already taken; skipped")
            continue
        stored = cat.add(f"F[{seed}.{s}]", am.space, prov, budgets=budgets)
        if stored == f"F[{seed}.{s}]":
            added.append(stored)
            if close_h and am.space.dim >= 2:
                count = 0
                for tag, basis in _policy_bases(am.space, ClosurePolicy(), rng):
                    if count >= 8:
                        break
                    if f"{stored}|H[{tag}]" in cat:
                        continue
                    S = subspace(am.space, basis, budgets)
                    hname = cat.add(f"{stored}|H[{tag}]", S,
                                    f"subspace({stored}; {tag})", budgets=budgets)
                    if hname == f"{stored}|H[{tag}]":
                        added.append(hname)
                        count += 1
    return StepReport(added=tuple(added), warnings=tuple(warns))
