"""Command-line surface: catalog management, space calculus, amalgams,
invariants, towers, and CSV reports.

Conventions: vectors are comma-separated exact rationals ("1,-1/2,3"),
matrices and bases are semicolon-separated rows ("1,0;0,1"). Catalogs are
JSON files (--in / --out). Exit codes: 0 success, 1 a verified invariant
failed, 2 usage error. Identical argv (and seeds) produce byte-identical
output; randomized commands require --seed.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import amalgams, catalogio, invariants, l1geometry, reports, tower
from .budgets import from_env
from .errors import (CalcError, ConstructionFailed, IoError,
                     MalformedRational, NotAZonotope, SchemaMismatch)
from .polytopes import polar, zonotope_of
from .rationals import ONE, parse_rat, qstr, to_float
from .ratlinalg import unit
from .sampling import random_space, random_subspace_basis
from .spaces import (FinSpace, LinOp, distortion, dsum1, dsum2_approx,
                     dsum_inf, dual, l1_space, linf_space, operator_norm,
                     quotient, space_from_vertices, space_norm, subspace)


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    pass


def _parse_vec(text: str):
    try:
        return tuple(parse_rat(p.strip()) for p in text.split(","))
    except MalformedRational as e:
        raise UsageError(str(e)) from None


def _parse_mat(text: str):
    return tuple(_parse_vec(row) for row in text.split(";") if row.strip())


def _load(args) -> catalogio.CatalogFile:
    if getattr(args, "infile", None):
        return catalogio.load_catalog(args.infile)
    return catalogio.CatalogFile()


def _save(args, cf) -> None:
    if getattr(args, "out", None):
        catalogio.save_catalog(args.out, cf)


def _get_space(cf, name) -> FinSpace:
    if name not in cf.catalog:
        raise UsageError(f"no space named {name!r} in catalog")
    return cf.catalog[name].space


def _get_op(cf, name) -> LinOp:
    if name not in cf.operators:
        raise UsageError(f"no operator named {name!r} in catalog")
    return cf.operators[name].op


def _print_space(name, s: FinSpace, verbose=False):
    print(f"{name}: dim={s.dim} vertices={len(s.ball.vertices)} "
          f"facets={len(s.ball.facets)}"
          + (f" label={s.label}" if s.label else "")
          + (f" meta={s.meta}" if s.meta else ""))
    if verbose or len(s.ball.vertices) <= 16:
        for v in s.ball.vertices:
            print("  v", ",".join(qstr(a) for a in v))


def _rat_arg(text):
    try:
        return parse_rat(text)
    except MalformedRational as e:
        raise UsageError(str(e)) from None


def _emit(args, table: reports.ReportTable):
    if getattr(args, "csv", None):
        reports.emit_csv(args.csv, table)
    if getattr(args, "json", None):
        reports.save_table(args.json, table)


# ---------------------------------------------------------------------------
# space


def cmd_space_make(args, budgets):
    cf = _load(args)
    if args.kind == "l1":
        s = l1_space(args.dim)
    elif args.kind == "linf":
        s = linf_space(args.dim)
    else:
        if not args.vertices:
            raise UsageError("--kind verts needs --vertices")
        s = space_from_vertices(_parse_mat(args.vertices), budgets=budgets)
    cf.catalog.add(args.name, s, f"make {args.kind}", dedupe=False,
                   budgets=budgets)
    _print_space(args.name, s)
    _save(args, cf)
    return 0


def cmd_space_show(args, budgets):
    cf = _load(args)
    _print_space(args.name, _get_space(cf, args.name), verbose=args.verbose)
    return 0


def cmd_space_dual(args, budgets):
    cf = _load(args)
    d = dual(_get_space(cf, args.name))
    newname = args.store_as or f"{args.name}|*"
    _print_space(newname, d)
    if args.out:
        cf.catalog.add(newname, d, f"dual({args.name})", dedupe=False,
                       budgets=budgets)
        _save(args, cf)
    return 0


def cmd_space_sum(args, budgets):
    cf = _load(args)
    X = _get_space(cf, args.left)
    Y = _get_space(cf, args.right)
    if args.op == "sum1":
        s = dsum1(X, Y, budgets)
    elif args.op == "suminf":
        s = dsum_inf(X, Y, budgets)
    else:
        s = dsum2_approx(X, Y, _rat_arg(args.eps), budgets)
    newname = args.store_as or f"{args.left}+{args.right}|{args.op}"
    _print_space(newname, s)
    if args.out:
        cf.catalog.add(newname, s, f"{args.op}({args.left},{args.right})",
                       dedupe=False, budgets=budgets)
        _save(args, cf)
    return 0


def cmd_space_sub_or_quot(args, budgets):
    cf = _load(args)
    X = _get_space(cf, args.name)
    basis = _parse_mat(args.basis)
    if args.op == "subspace":
        s = subspace(X, basis, budgets)
        prov = f"subspace({args.name}; {args.basis})"
    else:
        s, _ = quotient(X, basis, budgets)
        prov = f"quotient({args.name}; {args.basis})"
    newname = args.store_as or f"{args.name}|{args.op}"
    _print_space(newname, s)
    if args.out:
        cf.catalog.add(newname, s, prov, dedupe=False, budgets=budgets)
        _save(args, cf)
    return 0


def cmd_space_norm(args, budgets):
    cf = _load(args)
    X = _get_space(cf, args.name)
    n = space_norm(X, _parse_vec(args.vector))
    print(f"norm = {qstr(n)} ({to_float(n):.12g})")
    return 0


# ---------------------------------------------------------------------------
# incarnate / zonotope


def cmd_incarnate(args, budgets):
    cf = _load(args)
    emb = l1geometry.incarnate(_parse_mat(args.rows), budgets)
    print(f"ambient=l1^{emb.ambient} sub_dim={emb.incarnation.sub_dim}")
    for g in emb.incarnation.generators:
        print("  g", ",".join(qstr(a) for a in g))
    _print_space("embedded-space", emb.space)
    if args.out:
        name = args.store_as or "incarnated"
        cf.catalog.add(name, emb.space, f"incarnate({args.rows})",
                       dedupe=False, budgets=budgets)
        cf.incarnations[name] = emb.incarnation
        _save(args, cf)
    return 0


def cmd_zonotope(args, budgets):
    cf = _load(args)
    if args.action == "build":
        if not args.generators:
            raise UsageError("zonotope build needs --generators")
        gens = _parse_mat(args.generators)
        Z = zonotope_of(gens, budgets)
        name = args.store_as or "zonotope"
        s = FinSpace(Z.dim, Z, label="zonotope")
        _print_space(name, s)
        if args.out:
            cf.catalog.add(name, s, f"zonotope({args.generators})",
                           dedupe=False, budgets=budgets)
            cf.incarnations[name] = l1geometry.IncarnatingSet(Z.dim, gens)
            _save(args, cf)
        return 0
    if args.action == "reconstruct":
        s = _get_space(cf, args.name)
        try:
            K = l1geometry.reconstruct(s.ball, budgets)
        except NotAZonotope as e:
            print(f"not a zonotope: {e}", file=sys.stderr)
            return 1
        for g in K.generators:
            print("  g", ",".join(qstr(a) for a in g))
        return 0
    # check: is the named space's dual ball a zonotope, i.e. is it l1-embeddable
    s = _get_space(cf, args.name)
    ok, emb = l1geometry.is_l1_embeddable(s, budgets)
    if ok:
        print(f"l1-embeddable: yes (ambient l1^{emb.ambient})")
    else:
        print("l1-embeddable: no")
    return 0


# ---------------------------------------------------------------------------
# amalgam


def _formation_from_args(cf, args):
    root = _get_space(cf, args.root)
    left = _get_space(cf, args.left)
    right = _get_space(cf, args.right)
    al = _get_op(cf, args.arrow_left)
    ar = _get_op(cf, args.arrow_right)
    return amalgams.VFormation(root=root, left=left, right=right,
                               arrow_left=al, arrow_right=ar, mode=args.mode)


def _print_amalgam(am):
    dl = "inf" if am.defect_left is None else qstr(am.defect_left)
    dr = "inf" if am.defect_right is None else qstr(am.defect_right)
    _print_space("amalgam", am.space)
    print(f"defect_left = {dl}"
          + (f" ({to_float(am.defect_left):.12g})"
             if am.defect_left is not None else ""))
    print(f"defect_right = {dr}"
          + (f" ({to_float(am.defect_right):.12g})"
             if am.defect_right is not None else ""))


def cmd_amalgam_pushout(args, budgets):
    cf = _load(args)
    v = _formation_from_args(cf, args)
    eps = _rat_arg(args.eps) if args.eps else None
    am = amalgams.pushout(v, args.kind, eps=eps, budgets=budgets)
    _print_amalgam(am)
    if args.out and args.store_as:
        cf.catalog.add(args.store_as, am.space,
                       f"pushout({args.kind})", dedupe=False, budgets=budgets)
        _save(args, cf)
    return 0


def cmd_amalgam_l1(args, budgets):
    cf = _load(args)
    v = _formation_from_args(cf, args)
    try:
        am = l1geometry.l1_amalgamate(v, budgets)
    except ConstructionFailed as e:
        print(f"construction failed: {e}", file=sys.stderr)
        if e.diagnostic:
            print(f"diagnostic: {e.diagnostic}", file=sys.stderr)
        return 1
    _print_amalgam(am)
    print(f"witness: l1^{am.witness.ambient} embedding with "
          f"{len(am.witness.incarnation.generators)} generators")
    if args.out and args.store_as:
        cf.catalog.add(args.store_as, am.space, "l1-amalgam", dedupe=False,
                       budgets=budgets)
        _save(args, cf)
    return 0


def cmd_amalgam_verify(args, budgets):
    cf = _load(args)
    v = _formation_from_args(cf, args)
    eps = _rat_arg(args.eps) if args.eps else None
    am = amalgams.pushout(v, args.kind, eps=eps, budgets=budgets)
    rep = amalgams.verify_amalgam(v, am, check_l1=args.check_l1,
                                  budgets=budgets)
    print(f"commutes = {rep.commutes}")
    _print_amalgam(am)
    if rep.l1_embeddable is not None:
        print(f"l1-embeddable = {rep.l1_embeddable}")
    must_be_exact = args.kind == "sum1" and args.mode == "isometric"
    if not rep.commutes or (must_be_exact and not rep.passed):
        print("verification FAILED", file=sys.stderr)
        return 1
    print("verification passed")
    return 0


def cmd_amalgam_search(args, budgets):
    # look for formations whose sum2 pushout has a nonzero isometry defect;
    # the 1-dim identity formation is checked first and already suffices
    eps = _rat_arg(args.eps)
    rng = random.Random(args.seed)
    A = l1_space(1)
    idop = LinOp(A, A, ((ONE,),))
    cands = [("identity formation on the line",
              amalgams.VFormation(A, A, A, idop, idop))]
    for k in range(args.tries):
        X = random_space(rng, 1, budgets=budgets)
        iop = LinOp(A, X, ((ONE / space_norm(X, (ONE,)),),))
        cands.append((f"seeded 1-dim formation #{k}",
                      amalgams.VFormation(A, X, X, iop, iop)))
    for label, v in cands:
        am = amalgams.pushout(v, "sum2", eps=eps, budgets=budgets)
        worst = max(am.defect_left, am.defect_right)
        if worst > 0:
            print(f"counterexample: {label}")
            print(f"sum2 defect = {qstr(worst)} ({to_float(worst):.12g})")
            print("finding: the sum2 pushout of an isometric formation "
                  "need not be isometric")
            return 0
    print("no counterexample found (unexpected)", file=sys.stderr)
    return 1


# ---------------------------------------------------------------------------
# catalog


def cmd_catalog_gen(args, budgets):
    cf = _load(args)
    if args.include_standard:
        for n in range(1, args.dim_max + 1):
            cf.catalog.add(f"l1_{n}", l1_space(n), "standard", dedupe=False,
                           budgets=budgets)
            if n >= 2:
                cf.catalog.add(f"linf_{n}", linf_space(n), "standard",
                               dedupe=False, budgets=budgets)
    rng = random.Random(args.seed)
    for k in range(args.count):
        dim = rng.randint(1, args.dim_max)
        s = random_space(rng, dim, budgets=budgets)
        cf.catalog.add(f"rnd{args.seed}_{k}", s,
                       f"random(seed={args.seed}, k={k}, dim={dim})",
                       dedupe=False, budgets=budgets)
    cf.seeds[f"catalog-gen-{args.seed}"] = args.seed
    print(f"catalog has {len(cf.catalog)} spaces")
    _save(args, cf)
    return 0


def cmd_catalog_step(args, budgets):
    cf = _load(args)
    if args.step in ("h-step", "q-step"):
        if args.random and args.seed is None:
            raise UsageError("--random requires --seed")
        policy = amalgams.ClosurePolicy(coordinate=not args.no_coordinate,
                                        random_per_space=args.random,
                                        seed=args.seed or 0,
                                        max_new=args.max_new)
        step = amalgams.catalog_H if args.step == "h-step" \
            else amalgams.catalog_Q
        added = step(cf.catalog, policy, budgets)
    elif args.step == "dual-step":
        added = amalgams.catalog_dual(cf.catalog, budgets)
    else:
        rep = amalgams.sub_bconvex_step(cf.catalog, args.seed,
                                        steps=args.steps, budgets=budgets)
        added = list(rep.added)
        for w in rep.warnings:
            print(f"warning: {w}", file=sys.stderr)
    for name in added:
        print(f"added {name}")
    print(f"catalog has {len(cf.catalog)} spaces")
    _save(args, cf)
    return 0


# ---------------------------------------------------------------------------
# check


def cmd_check_duality(args, budgets):
    rng = random.Random(args.seed)
    pool = []
    if args.infile:
        cf = _load(args)
        pool = [cf.catalog[n].space for n in cf.catalog.names()
                if 2 <= cf.catalog[n].space.dim <= args.dim_max]
        if not pool:
            raise UsageError("catalog has no spaces of dim in [2, dim-max]")
    failures = 0
    for k in range(args.samples):
        if pool:
            X = pool[k % len(pool)]
            dim = X.dim
        else:
            dim = rng.randint(2, args.dim_max)
            X = random_space(rng, dim, budgets=budgets)
        ksub = rng.randint(1, dim - 1)
        basis = random_subspace_basis(rng, dim, ksub)
        rep = amalgams.duality_identity_check(X, basis, budgets)
        if not rep.passed:
            failures += 1
            print(f"FAIL sample {k}: dim={dim} k={ksub} "
                  f"sub_ok={rep.sub_ok} quot_ok={rep.quot_ok}",
                  file=sys.stderr)
    print(f"duality identities: {args.samples - failures}/{args.samples} passed")
    return 1 if failures else 0


def cmd_check_identities(args, budgets):
    rng = random.Random(args.seed)
    pool = []
    if args.infile:
        cf = _load(args)
        pool = [cf.catalog[n].space for n in cf.catalog.names()
                if cf.catalog[n].space.dim <= args.dim_max]
        if not pool:
            raise UsageError("catalog has no spaces of dim <= dim-max")
    failures = 0
    for k in range(args.samples):
        if pool:
            X = pool[k % len(pool)]
        else:
            dim = rng.randint(1, args.dim_max)
            X = random_space(rng, dim, budgets=budgets)
        P = X.ball
        if polar(polar(P)) != P:
            failures += 1
            print(f"FAIL sample {k}: polar is not an involution",
                  file=sys.stderr)
        v = P.vertices[rng.randrange(len(P.vertices))]
        if space_norm(X, v) != 1:
            failures += 1
            print(f"FAIL sample {k}: vertex off the unit sphere",
                  file=sys.stderr)
        D = dual(X)
        if dsum1(X, D, budgets).ball != polar(dsum_inf(dual(X), dual(D),
                                                       budgets).ball):
            failures += 1
            print(f"FAIL sample {k}: sum1/suminf duality", file=sys.stderr)
    print(f"kernel identities: {args.samples - failures}/{args.samples} passed")
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# invariants


def cmd_invariant(args, budgets):
    cf = _load(args)
    X = _get_space(cf, args.name)
    vecs = _parse_mat(args.vectors)
    if args.what == "radavg":
        val = invariants.rademacher_average(X, vecs, budgets)
        print(f"rademacher_average = {qstr(val)} ({to_float(val):.12g})")
        return 0
    if args.what == "cotype":
        q = "inf" if args.q == "inf" else _rat_arg(args.q)
        rep = invariants.cotype_witness(X, vecs, q, budgets)
    else:
        rep = invariants.type_witness(X, vecs, _rat_arg(args.p), budgets)
    print(f"kind = {rep.kind}  exponent = {rep.exponent}")
    print(f"rademacher_avg = {qstr(rep.rademacher_avg)}")
    if rep.exact_value is not None:
        print(f"bound = {qstr(rep.exact_value)} ({rep.bound_float:.12g})")
    elif rep.exact_square is not None:
        print(f"bound^2 = {qstr(rep.exact_square)} "
              f"(bound {rep.bound_float:.12g})")
    else:
        print(f"bound = {rep.bound_float:.12g} (float path)")
    return 0


def cmd_projconst_solve(args, budgets):
    cf = _load(args)
    X = _get_space(cf, args.name)
    res = invariants.projection_constant(X, _parse_mat(args.basis), budgets)
    print(f"lambda = {qstr(res.lam)} ({to_float(res.lam):.12g})")
    for row in res.projection.matrix:
        print("  P", ",".join(qstr(a) for a in row))
    return 0


def near_euclidean_entries(max_rank: int):
    """Deterministic near-round subspaces of l1^m for ranks 1..max_rank."""
    entries = []
    if max_rank >= 1:
        X = l1_space(3)
        entries.append(("rank1", X, (unit(3, 0),)))
    if max_rank >= 2:
        dirs = [("1", "0"), ("4/5", "3/5"), ("3/5", "4/5"),
                ("0", "1"), ("-3/5", "4/5"), ("-4/5", "3/5")]
        rows = [tuple(parse_rat(a) for a in d) for d in dirs]
        X = l1_space(len(rows))
        basis = tuple(tuple(r[j] for r in rows) for j in range(2))
        entries.append(("rank2", X, basis))
    if max_rank >= 3:
        raw = [("1", "0", "0"), ("0", "1", "0"), ("0", "0", "1"),
               ("2/3", "2/3", "1/3"), ("2/3", "-1/3", "2/3"),
               ("1/3", "2/3", "-2/3")]
        rows = [tuple(parse_rat(a) for a in d) for d in raw]
        X = l1_space(len(rows))
        basis = tuple(tuple(r[j] for r in rows) for j in range(3))
        entries.append(("rank3", X, basis))
    return entries


def cmd_projconst_trend(args, budgets):
    entries = near_euclidean_entries(args.max_rank)
    rep = invariants.projection_trend(entries, budgets)
    table = reports.ReportTable(
        "projection_trend", ("label", "rank", "lambda_exact", "lambda_float"),
        tuple((label, rank, lam, to_float(lam))
              for label, rank, lam in rep.rows))
    for label, rank, lam in rep.rows:
        print(f"{label}: rank={rank} lambda={qstr(lam)} "
              f"({to_float(lam):.12g})")
    if rep.exponent is not None:
        print(f"fitted exponent = {rep.exponent:.6f} (observational)")
    _emit(args, table)
    return 0


def cmd_tensor_norms(args, budgets):
    cf = _load(args)
    t = invariants.TensorElem(_get_space(cf, args.left),
                              _get_space(cf, args.right),
                              _parse_mat(args.coeffs))
    vee = invariants.injective_norm(t, budgets)
    wedge = invariants.projective_norm(t, budgets)
    print(f"injective  (vee)   = {qstr(vee)} ({to_float(vee):.12g})")
    print(f"projective (wedge) = {qstr(wedge)} ({to_float(wedge):.12g})")
    return 0


def cmd_op(args, budgets):
    cf = _load(args)
    if args.what == "make":
        for a in ("domain", "codomain", "matrix"):
            if getattr(args, a) is None:
                raise UsageError(f"op make needs --{a}")
        dom = _get_space(cf, args.domain)
        cod = _get_space(cf, args.codomain)
        u = LinOp(dom, cod, _parse_mat(args.matrix))
        cf.operators[args.op_name] = catalogio.OperatorRecord(
            args.domain, args.codomain, u)
        print(f"{args.op_name}: {args.domain}({dom.dim}) -> "
              f"{args.codomain}({cod.dim})")
        _save(args, cf)
        return 0
    u = _get_op(cf, args.op_name)
    if args.what == "norm":
        val = operator_norm(u)
    elif args.what == "nuclear":
        val = invariants.nuclear_norm(u, budgets)
    else:
        val = invariants.pi1_norm(u, budgets)
    print(f"{args.what} = {qstr(val)} ({to_float(val):.12g})")
    return 0


# ---------------------------------------------------------------------------
# tower


def _net_from_args(cf, args, budgets):
    spaces = [cf.catalog[n].space for n in cf.catalog.names()] if args.infile \
        else [l1_space(1), l1_space(2)]
    eps = None if args.eps == "inf" else _rat_arg(args.eps)
    return tower.triple_net(spaces, args.n, args.m, eps, args.seed, budgets)


def cmd_tower_net(args, budgets):
    cf = _load(args)
    net = _net_from_args(cf, args, budgets)
    print(f"net: n={net.n} m={net.m} eps={args.eps} "
          f"triples={len(net.triples)}")
    for k, t in enumerate(net.triples):
        rows = ";".join(",".join(qstr(a) for a in r) for r in t.i.matrix)
        print(f"  triple {k}: dims {t.A.dim}->{t.B.dim} i=[{rows}]")
    return 0


def cmd_tower_build(args, budgets):
    cf = _load(args)
    net = _net_from_args(cf, args, budgets)
    if not net.triples:
        raise UsageError("net is empty; nothing to build")
    seed_space = _get_space(cf, args.seed_space) if args.seed_space \
        else l1_space(1)
    stage = tower.build_tower(seed_space, net, args.steps, args.seed, budgets)
    print(f"stage {stage.index}: dim={stage.space.dim} "
          f"truncated={stage.truncated}")
    for j, c in enumerate(stage.chain):
        d = distortion(c, budgets).distortion
        print(f"  chain {j}: {c.domain.dim}->{c.codomain.dim} "
              f"distortion={qstr(d)}")
    if args.out:
        name = args.store_as or f"tower{args.seed}"
        cf.towers[name] = catalogio.TowerRecord(seed_space, stage.log)
        cf.catalog.add(f"{name}|top", stage.space,
                       f"tower(seed={args.seed}, steps={args.steps})",
                       dedupe=False, budgets=budgets)
        cf.seeds[f"tower-{name}"] = args.seed
        _save(args, cf)
    return 0


def cmd_tower_replay(args, budgets):
    cf = _load(args)
    if args.name not in cf.towers:
        raise UsageError(f"no tower named {args.name!r} in catalog")
    rec = cf.towers[args.name]
    try:
        stage = tower.replay_tower(rec.seed_space, rec.log, budgets)
    except ConstructionFailed as e:
        print(f"replay FAILED: {e}", file=sys.stderr)
        return 1
    print(f"replay ok: stage {stage.index} dim={stage.space.dim}")
    return 0


def cmd_tower_defect(args, budgets):
    cf = _load(args)
    if args.name not in cf.towers:
        raise UsageError(f"no tower named {args.name!r} in catalog")
    rec = cf.towers[args.name]
    stage = tower.replay_tower(rec.seed_space, rec.log, budgets)
    rng = random.Random(args.seed)
    triples = sorted({e.triple for e in stage.log},
                     key=lambda t: (t.A.dim, t.B.dim, t.i.matrix))
    probes = []
    k = 0
    while len(probes) < args.probes and triples:
        t = triples[k % len(triples)]
        k += 1
        cands = tower.anchor_candidates(t.A, stage, args.seed + k, budgets)
        if not cands:
            continue
        probes.append((t, rng.choice(cands)))
    stats = tower.homogeneity_defect(stage, probes, args.seed, budgets)
    rows = []
    for idx, r in enumerate(stats.probes):
        rows.append((idx, r.method,
                     r.defect if r.defect is not None else None,
                     r.defect_float))
        d = "unbounded" if r.defect is None else qstr(r.defect)
        print(f"probe {idx}: method={r.method} defect<={d}")
    med = None if stats.median is None else float(stats.median)
    print(f"summary: exact_ones={stats.exact_ones} median="
          + ("n/a" if med is None else f"{med:.12g}"))
    rows.append(("summary", f"exact_ones={stats.exact_ones}", None, med))
    _emit(args, reports.ReportTable(
        "homogeneity_defect", ("probe", "method", "defect_exact",
                               "defect_float"), tuple(rows)))
    return 0


# ---------------------------------------------------------------------------
# report


def cmd_report_emit(args, budgets):
    table = reports.load_table(args.infile)
    reports.emit_csv(args.csv, table)
    print(f"wrote {args.csv}")
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_cat_io(p, out=True):
    p.add_argument("--in", dest="infile", help="catalog JSON to read")
    if out:
        p.add_argument("--out", help="catalog JSON to write")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="banachcalc",
        description="exact calculus of finite-dimensional normed spaces")
    sub = ap.add_subparsers(dest="cmd", required=True)

    # space
    sp = sub.add_parser("space", help="space calculus").add_subparsers(
        dest="sub", required=True)
    p = sp.add_parser("make")
    _add_cat_io(p)
    p.add_argument("--name", required=True)
    p.add_argument("--kind", choices=["l1", "linf", "verts"], required=True)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--vertices")
    p.set_defaults(fn=cmd_space_make)
    p = sp.add_parser("show")
    _add_cat_io(p, out=False)
    p.add_argument("--name", required=True)
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(fn=cmd_space_show)
    p = sp.add_parser("dual")
    _add_cat_io(p)
    p.add_argument("--name", required=True)
    p.add_argument("--as", dest="store_as")
    p.set_defaults(fn=cmd_space_dual)
    for op in ("sum1", "suminf", "sum2"):
        p = sp.add_parser(op)
        _add_cat_io(p)
        p.add_argument("--left", required=True)
        p.add_argument("--right", required=True)
        p.add_argument("--as", dest="store_as")
        if op == "sum2":
            p.add_argument("--eps", required=True,
                           help="rational accuracy, e.g. 1/100")
        p.set_defaults(fn=cmd_space_sum, op=op)
    for op in ("subspace", "quotient"):
        p = sp.add_parser(op)
        _add_cat_io(p)
        p.add_argument("--name", required=True)
        p.add_argument("--basis", required=True,
                       help="semicolon-separated rational rows")
        p.add_argument("--as", dest="store_as")
        p.set_defaults(fn=cmd_space_sub_or_quot, op=op)
    p = sp.add_parser("norm")
    _add_cat_io(p, out=False)
    p.add_argument("--name", required=True)
    p.add_argument("--vector", required=True)
    p.set_defaults(fn=cmd_space_norm)

    # incarnate
    p = sub.add_parser("incarnate", help="embed a column span into l1^N")
    _add_cat_io(p)
    p.add_argument("--rows", required=True)
    p.add_argument("--as", dest="store_as")
    p.set_defaults(fn=cmd_incarnate)

    # zonotope
    p = sub.add_parser("zonotope", help="build/reconstruct/check zonotopes")
    p.add_argument("action", choices=["build", "reconstruct", "check"])
    _add_cat_io(p)
    p.add_argument("--generators")
    p.add_argument("--name")
    p.add_argument("--as", dest="store_as")
    p.set_defaults(fn=cmd_zonotope)

    # amalgam
    am = sub.add_parser("amalgam", help="pushouts and l1 amalgams")
    ams = am.add_subparsers(dest="sub", required=True)
    for kind in ("pushout", "l1", "verify"):
        p = ams.add_parser(kind)
        _add_cat_io(p)
        p.add_argument("--root", required=True)
        p.add_argument("--left", required=True)
        p.add_argument("--right", required=True)
        p.add_argument("--arrow-left", dest="arrow_left", required=True)
        p.add_argument("--arrow-right", dest="arrow_right", required=True)
        p.add_argument("--mode", choices=["isometric", "isomorphic"],
                       default="isometric")
        p.add_argument("--as", dest="store_as")
        if kind != "l1":
            p.add_argument("--kind", choices=["sum1", "sum2"],
                           default="sum1")
            p.add_argument("--eps")
        if kind == "verify":
            p.add_argument("--check-l1", dest="check_l1",
                           action="store_true")
    ams.choices["pushout"].set_defaults(fn=cmd_amalgam_pushout)
    ams.choices["l1"].set_defaults(fn=cmd_amalgam_l1)
    ams.choices["verify"].set_defaults(fn=cmd_amalgam_verify)
    p = ams.add_parser("search-iso-counterexample")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--tries", type=int, default=4)
    p.add_argument("--eps", default="1/1000000")
    p.set_defaults(fn=cmd_amalgam_search)

    # catalog
    cat = sub.add_parser("catalog", help="generate and grow catalogs")
    cats = cat.add_subparsers(dest="sub", required=True)
    p = cats.add_parser("gen")
    _add_cat_io(p)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, default=8)
    p.add_argument("--dim-max", dest="dim_max", type=int, default=3)
    p.add_argument("--include-standard", dest="include_standard",
                   action="store_true")
    p.set_defaults(fn=cmd_catalog_gen)
    for step in ("h-step", "q-step", "dual-step", "subbconvex-step"):
        p = cats.add_parser(step)
        _add_cat_io(p)
        if step == "subbconvex-step":
            p.add_argument("--seed", type=int, required=True)
            p.add_argument("--steps", type=int, default=1)
        else:
            p.add_argument("--seed", type=int)
            p.add_argument("--random", type=int, default=0)
        p.add_argument("--no-coordinate", dest="no_coordinate",
                       action="store_true")
        p.add_argument("--max-new", dest="max_new", type=int, default=64)
        p.set_defaults(fn=cmd_catalog_step, step=step)

    # check
    ck = sub.add_parser("check", help="verified identity suites")
    cks = ck.add_subparsers(dest="sub", required=True)
    p = cks.add_parser("duality")
    _add_cat_io(p, out=False)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--dim-max", dest="dim_max", type=int, default=4)
    p.set_defaults(fn=cmd_check_duality)
    p = cks.add_parser("identities")
    _add_cat_io(p, out=False)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--dim-max", dest="dim_max", type=int, default=3)
    p.set_defaults(fn=cmd_check_identities)

    # invariant
    p = sub.add_parser("invariant", help="type/cotype witnesses and averages")
    p.add_argument("what", choices=["cotype", "type", "radavg"])
    _add_cat_io(p, out=False)
    p.add_argument("--name", required=True)
    p.add_argument("--vectors", required=True)
    p.add_argument("--q", default="2")
    p.add_argument("--p", default="2")
    p.set_defaults(fn=cmd_invariant)

    # projconst
    pc = sub.add_parser("projconst", help="minimal projections")
    pcs = pc.add_subparsers(dest="sub", required=True)
    p = pcs.add_parser("solve")
    _add_cat_io(p, out=False)
    p.add_argument("--name", required=True)
    p.add_argument("--basis", required=True)
    p.set_defaults(fn=cmd_projconst_solve)
    p = pcs.add_parser("trend")
    p.add_argument("--max-rank", dest="max_rank", type=int, default=3)
    p.add_argument("--csv")
    p.add_argument("--json")
    p.set_defaults(fn=cmd_projconst_trend)

    # tensor
    p = sub.add_parser("tensor", help="tensor norms")
    p.add_argument("what", choices=["norms"])
    _add_cat_io(p, out=False)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--coeffs", required=True)
    p.set_defaults(fn=cmd_tensor_norms)

    # op
    p = sub.add_parser("op", help="store operators; operator ideal norms")
    p.add_argument("what", choices=["make", "norm", "nuclear", "pi1"])
    _add_cat_io(p)
    p.add_argument("--op", dest="op_name", required=True)
    p.add_argument("--domain")
    p.add_argument("--codomain")
    p.add_argument("--matrix")
    p.set_defaults(fn=cmd_op)

    # tower
    tw = sub.add_parser("tower", help="isometric gluing towers")
    tws = tw.add_subparsers(dest="sub", required=True)
    for name in ("net", "build"):
        p = tws.add_parser(name)
        _add_cat_io(p, out=(name == "build"))
        p.add_argument("--seed", type=int, required=True)
        p.add_argument("--n", type=int, default=1)
        p.add_argument("--m", type=int, default=2)
        p.add_argument("--eps", default="1/100")
        if name == "build":
            p.add_argument("--steps", type=int, required=True)
            p.add_argument("--seed-space", dest="seed_space")
            p.add_argument("--as", dest="store_as")
    tws.choices["net"].set_defaults(fn=cmd_tower_net)
    tws.choices["build"].set_defaults(fn=cmd_tower_build)
    p = tws.add_parser("replay")
    _add_cat_io(p, out=False)
    p.add_argument("--name", required=True)
    p.set_defaults(fn=cmd_tower_replay)
    p = tws.add_parser("defect")
    _add_cat_io(p, out=False)
    p.add_argument("--name", required=True)
    p.add_argument("--probes", type=int, default=4)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--csv")
    p.add_argument("--json")
    p.set_defaults(fn=cmd_tower_defect)

    # report
    rp = sub.add_parser("report", help="re-emit saved report tables")
    rps = rp.add_subparsers(dest="sub", required=True)
    p = rps.add_parser("emit")
    p.add_argument("--in", dest="infile", required=True,
                   help="report table JSON written by --json")
    p.add_argument("--csv", required=True)
    p.set_defaults(fn=cmd_report_emit)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    budgets = from_env()
    try:
        return args.fn(args, budgets)
    except (UsageError, ValueError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except (IoError, SchemaMismatch, MalformedRational) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CheckFailed as e:
        print(f"check failed: {e}", file=sys.stderr)
        return 1
    except CalcError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
