"""Resource limits for the enumeration-heavy operations.

All limits are plain data; every operation that can blow up takes a Budgets
argument (defaulting to DEFAULT) and raises DimensionOverBudget or
BudgetExceeded instead of grinding. Environment variables BANACHCALC_<FIELD>
(upper-cased field name) override the defaults via from_env(), which the CLI
applies at startup.
"""

import os
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Budgets:
    dim_cap: int = 6              # vertex/facet enumeration ambient dim
    vertex_budget: int = 20000    # max vertices in any enumeration
    zonotope_generators: int = 16  # max merged generators per zonotope
    sign_patterns: int = 20       # max N for 2^N sign enumeration
    tensor_cells: int = 16        # max dim(X)*dim(Y) for projective norms
    tower_dim_cap: int = 8        # max stage dimension in tower building
    lp_pivots: int = 200000       # simplex pivot guard
    search_restarts: int = 16     # seeded searches (bm_upper, defects)
    congruence_nodes: int = 200000  # backtracking node guard


DEFAULT = Budgets()


def from_env(base: Budgets = DEFAULT) -> Budgets:
    """Return base with any BANACHCALC_* environment overrides applied."""
    overrides = {}
    for f in fields(Budgets):
        raw = os.environ.get("BANACHCALC_" + f.name.upper())
        if raw is not None:
            overrides[f.name] = int(raw)
    return replace(base, **overrides) if overrides else base
