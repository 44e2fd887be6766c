"""Exact linear programming: dense two-phase simplex over the rationals.

Entering columns follow Dantzig's rule (most negative reduced cost, first
index on ties) for speed; after a bounded run of degenerate pivots the
solver switches to Bland's rule, whose termination guarantee makes the
whole procedure finite. Both rules are deterministic and the arithmetic is
exact, so there is no tolerance anywhere. The solver accepts inequality
rows a_ub x <= b_ub and equality rows a_eq x = b_eq, with all variables
either free (default, split internally) or all nonnegative.

Dual values are recovered from the optimal basis by solving A_B^T y = c_B
against the original standard-form rows, and are normalized so that

    value == dot(duals_ub, b_ub) + dot(duals_eq, b_eq)

holds exactly at the optimum (the usual strong-duality identity; signs flip
with maximize). Redundant rows eliminated during phase 1 get dual 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .budgets import DEFAULT, Budgets
from .errors import BudgetExceeded, Infeasible, Unbounded
from .rationals import ONE, ZERO
from .ratlinalg import mat, solve, vec


@dataclass
class LPResult:
    value: object
    x: tuple
    duals_ub: tuple | None = None
    duals_eq: tuple | None = None


def _pivot(rows, cost, basis, pr, pc):
    """Standard full-tableau pivot on row pr, column pc."""
    prow = rows[pr]
    pv = prow[pc]
    if pv != 1:
        prow = [a / pv for a in prow]
        rows[pr] = prow
    for i, row in enumerate(rows):
        if i != pr and row[pc] != 0:
            f = row[pc]
            rows[i] = [a - f * b for a, b in zip(row, prow)]
    if cost[pc] != 0:
        f = cost[pc]
        cost[:] = [a - f * b for a, b in zip(cost, prow)]
    basis[pr] = pc


def _simplex(rows, cost, basis, ncols, budgets):
    """Minimize; tableau must start basic-feasible.

    Dantzig entering rule until a degenerate stretch exceeds rows + cols
    pivots without moving the objective, then Bland's rule for the rest of
    the solve. Each stretch between strict improvements is bounded and
    Bland terminates from any basis, so the whole loop is finite."""
    pivots = 0
    stall = 0
    bland = False
    while True:
        if bland:
            pc = next((j for j in range(ncols) if cost[j] < 0), None)
        else:
            pc = None
            best_c = ZERO
            for j in range(ncols):
                if cost[j] < best_c:
                    best_c = cost[j]
                    pc = j
        if pc is None:
            return
        pr = None
        best = None
        for i, row in enumerate(rows):
            a = row[pc]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[pr]):
                    best = ratio
                    pr = i
        if pr is None:
            raise Unbounded("objective unbounded below")
        obj_before = cost[-1]
        _pivot(rows, cost, basis, pr, pc)
        pivots += 1
        if pivots > budgets.lp_pivots:
            raise BudgetExceeded(f"simplex exceeded {budgets.lp_pivots} pivots")
        if not bland:
            if cost[-1] == obj_before:
                stall += 1
                if stall > len(rows) + ncols:
                    bland = True
            else:
                stall = 0


def lp_solve(c, a_ub=(), b_ub=(), a_eq=(), b_eq=(), *, nonneg=False,
             maximize=False, want_dual=False, budgets: Budgets = DEFAULT) -> LPResult:
    """Solve min (or max) c.x subject to a_ub x <= b_ub, a_eq x = b_eq.

    Variables are free unless nonneg=True (then all >= 0). Raises Infeasible
    or Unbounded. Exact throughout.
    """
    c = vec(c)
    a_ub = mat(a_ub)
    b_ub = vec(b_ub)
    a_eq = mat(a_eq)
    b_eq = vec(b_eq)
    n = len(c)
    if maximize:
        c = tuple(-x for x in c)

    # Standard form columns: n primary (+ n negative parts if free) + slacks.
    nfree = 0 if nonneg else n
    nslack = len(a_ub)
    ncols = n + nfree + nslack

    std_rows = []   # original standard-form rows (for dual recovery)
    rhs = []
    flips = []      # +1/-1 per row, ub rows first
    for arow, bval in zip(a_ub, b_ub):
        row = list(arow) + ([-x for x in arow] if not nonneg else [])
        row += [ZERO] * nslack
        row[n + nfree + len(std_rows)] = ONE
        sigma = ONE
        if bval < 0:
            row = [-x for x in row]
            bval = -bval
            sigma = -ONE
        std_rows.append(row)
        rhs.append(bval)
        flips.append(sigma)
    for arow, bval in zip(a_eq, b_eq):
        row = list(arow) + ([-x for x in arow] if not nonneg else [])
        row += [ZERO] * nslack
        sigma = ONE
        if bval < 0:
            row = [-x for x in row]
            bval = -bval
            sigma = -ONE
        std_rows.append(row)
        rhs.append(bval)
        flips.append(sigma)

    m = len(std_rows)
    cost_full = list(c) + ([-x for x in c] if not nonneg else []) + [ZERO] * nslack

    # Phase 1: artificial variable on every row (slacks of unflipped ub rows
    # could seed the basis directly, but uniformity keeps the code simple).
    rows = [list(r) + [ONE if i == j else ZERO for j in range(m)] + [rhs[i]]
            for i, r in enumerate(std_rows)]
    cost = [ZERO] * ncols + [ONE] * m + [ZERO]
    basis = [ncols + i for i in range(m)]
    for i in range(m):  # reduce artificial costs out of the objective row
        cost = [a - b for a, b in zip(cost, rows[i])]
    _simplex(rows, cost, basis, ncols + m, budgets)
    if -cost[-1] != 0:
        raise Infeasible("phase 1 optimum positive")

    # Drive remaining artificials out of the basis; drop redundant rows.
    keep = []
    for i in range(m):
        if basis[i] >= ncols:
            pc = next((j for j in range(ncols) if rows[i][j] != 0), None)
            if pc is None:
                continue  # redundant row
            _pivot(rows, cost, basis, i, pc)
        keep.append(i)
    row_of = {i: k for k, i in enumerate(keep)}
    rows = [rows[i][:ncols] + [rows[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]

    # Phase 2 with the real objective.
    cost = list(cost_full) + [ZERO]
    for i, bi in enumerate(basis):
        if cost[bi] != 0:
            f = cost[bi]
            cost = [a - f * b for a, b in zip(cost, rows[i])]
    _simplex(rows, cost, basis, ncols, budgets)

    xstd = [ZERO] * ncols
    for i, bi in enumerate(basis):
        xstd[bi] = rows[i][-1]
    if nonneg:
        x = tuple(xstd[:n])
    else:
        x = tuple(xstd[i] - xstd[n + i] for i in range(n))
    value = sum((ci * xi for ci, xi in zip(c, x)), ZERO)

    duals_ub = duals_eq = None
    if want_dual:
        acols = mat([[std_rows[i][bi] for bi in basis] for i in keep])
        cb = vec([cost_full[bi] for bi in basis])
        y = solve(tuple(zip(*acols)), cb) if keep else ()
        yfull = [ZERO] * m
        for i in keep:
            yfull[i] = y[row_of[i]] * flips[i]
        if maximize:
            yfull = [-v for v in yfull]
        duals_ub = tuple(yfull[:nslack])
        duals_eq = tuple(yfull[nslack:])

    if maximize:
        value = -value
    return LPResult(value=value, x=x, duals_ub=duals_ub, duals_eq=duals_eq)


def lp_feasible(a_ub=(), b_ub=(), a_eq=(), b_eq=(), *, nonneg=False,
                budgets: Budgets = DEFAULT) -> bool:
    """Phase-1 feasibility test for the given system."""
    ncols = len(a_ub[0]) if a_ub else (len(a_eq[0]) if a_eq else 0)
    try:
        lp_solve([ZERO] * ncols, a_ub, b_ub, a_eq, b_eq,
                 nonneg=nonneg, budgets=budgets)
        return True
    except Infeasible:
        return False
