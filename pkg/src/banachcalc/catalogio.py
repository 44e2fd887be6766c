"""Exact JSON persistence for catalogs, operators, incarnating sets, towers.

Every rational is stored as a reduced "p/q" string, arrays are canonically
ordered, and the schema carries an explicit version, so load(save(x)) == x
bit-exactly and files diff cleanly. Floats never appear in persisted data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .amalgams import SpaceCatalog
from .errors import IoError, SchemaMismatch
from .l1geometry import IncarnatingSet
from .polytopes import SymPolytope
from .rationals import parse_rat, qstr
from .spaces import FinSpace, LinOp
from .tower import EmbeddingTriple, LogEntry

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class OperatorRecord:
    """A named operator between two named catalog spaces."""

    domain_name: str
    codomain_name: str
    op: LinOp


@dataclass(frozen=True)
class TowerRecord:
    """Seed space plus replayable log; self-contained (triples inlined)."""

    seed_space: FinSpace
    log: tuple           # of tower.LogEntry


@dataclass
class CatalogFile:
    """Everything one file persists. All fields optional except the catalog."""

    catalog: SpaceCatalog = field(default_factory=SpaceCatalog)
    operators: dict = field(default_factory=dict)      # name -> OperatorRecord
    incarnations: dict = field(default_factory=dict)   # name -> IncarnatingSet
    towers: dict = field(default_factory=dict)         # name -> TowerRecord
    seeds: dict = field(default_factory=dict)          # label -> int
    budgets: dict = field(default_factory=dict)        # field -> int


def _vec_json(v):
    return [qstr(a) for a in v]


def _mat_json(rows):
    return [_vec_json(r) for r in rows]


def _vec_load(arr):
    return tuple(parse_rat(s) for s in arr)


def _mat_load(arr):
    return tuple(_vec_load(r) for r in arr)


def _space_json(s: FinSpace):
    return {
        "dim": s.dim,
        "vertices": _mat_json(s.ball.vertices),
        "facets": _mat_json(s.ball.facets),
        "label": s.label,
        "meta": [[str(k), str(v)] for k, v in s.meta],
    }


def _space_load(obj) -> FinSpace:
    try:
        dim = int(obj["dim"])
        verts = _mat_load(obj["vertices"])
        facets = _mat_load(obj["facets"])
        label = obj.get("label", "")
        meta = tuple((k, v) for k, v in obj.get("meta", []))
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaMismatch(f"bad space record: {e}") from None
    ball = SymPolytope(dim, verts, facets)
    return FinSpace(dim, ball, label=label, meta=meta)


def _triple_json(t: EmbeddingTriple):
    return {"A": _space_json(t.A), "B": _space_json(t.B),
            "i": _mat_json(t.i.matrix)}


def _triple_load(obj) -> EmbeddingTriple:
    A = _space_load(obj["A"])
    B = _space_load(obj["B"])
    return EmbeddingTriple(A, B, LinOp(A, B, _mat_load(obj["i"])))


def _to_json(cf: CatalogFile) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "spaces": {
            name: {"space": _space_json(e.space), "provenance": e.provenance}
            for name, e in sorted(cf.catalog.entries.items())
        },
        "operators": {
            name: {"domain": r.domain_name, "codomain": r.codomain_name,
                   "matrix": _mat_json(r.op.matrix)}
            for name, r in sorted(cf.operators.items())
        },
        "incarnations": {
            name: {"sub_dim": k.sub_dim, "generators": _mat_json(k.generators)}
            for name, k in sorted(cf.incarnations.items())
        },
        "towers": {
            name: {
                "seed_space": _space_json(t.seed_space),
                "log": [
                    {"step": e.step, "triple": _triple_json(e.triple),
                     "anchor": _mat_json(e.anchor),
                     "j_left": _mat_json(e.j_left),
                     "j_right": _mat_json(e.j_right)}
                    for e in t.log
                ],
            }
            for name, t in sorted(cf.towers.items())
        },
        "seeds": {k: int(v) for k, v in sorted(cf.seeds.items())},
        "budgets": {k: int(v) for k, v in sorted(cf.budgets.items())},
    }


def _from_json(doc: dict) -> CatalogFile:
    if not isinstance(doc, dict):
        raise SchemaMismatch("top level is not an object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaMismatch(f"unknown schema version {version!r}")
    cf = CatalogFile()
    for name, rec in sorted(doc.get("spaces", {}).items()):
        cf.catalog.add(name, _space_load(rec["space"]),
                       rec.get("provenance", ""), dedupe=False)
    for name, rec in sorted(doc.get("operators", {}).items()):
        try:
            dn, cn = rec["domain"], rec["codomain"]
            dom = cf.catalog[dn].space
            cod = cf.catalog[cn].space
        except KeyError as e:
            raise SchemaMismatch(f"operator {name!r} references {e}") from None
        cf.operators[name] = OperatorRecord(
            dn, cn, LinOp(dom, cod, _mat_load(rec["matrix"])))
    for name, rec in sorted(doc.get("incarnations", {}).items()):
        try:
            cf.incarnations[name] = IncarnatingSet(
                int(rec["sub_dim"]), _mat_load(rec["generators"]))
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaMismatch(f"bad incarnation {name!r}: {e}") from None
    for name, rec in sorted(doc.get("towers", {}).items()):
        try:
            seed_space = _space_load(rec["seed_space"])
            log = tuple(
                LogEntry(int(e["step"]), _triple_load(e["triple"]),
                         _mat_load(e["anchor"]), _mat_load(e["j_left"]),
                         _mat_load(e["j_right"]))
                for e in rec["log"])
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaMismatch(f"bad tower {name!r}: {e}") from None
        cf.towers[name] = TowerRecord(seed_space, log)
    cf.seeds = {k: int(v) for k, v in sorted(doc.get("seeds", {}).items())}
    cf.budgets = {k: int(v) for k, v in sorted(doc.get("budgets", {}).items())}
    return cf


def dumps_catalog(cf: CatalogFile) -> str:
    return json.dumps(_to_json(cf), sort_keys=True, indent=2) + "\n"


def save_catalog(path, cf: CatalogFile) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps_catalog(cf))
    except OSError as e:
        raise IoError(f"cannot write {path}: {e}") from None


def load_catalog(path) -> CatalogFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise IoError(f"cannot read {path}: {e}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaMismatch(f"not valid JSON: {e}") from None
    return _from_json(doc)
