"""Seeded random generators for spaces, subspaces, and operators.

All functions take an explicit random.Random instance so CLI commands and
tests are reproducible from a single integer seed. Entries are small-height
rationals to keep the exact enumeration cheap.
"""

from __future__ import annotations

import random

from .budgets import DEFAULT, Budgets
from .rationals import Q
from .ratlinalg import rank, unit, vneg
from .spaces import FinSpace, space_from_vertices

_ENTRIES = [Q(-2), Q(-3, 2), Q(-1), Q(-1, 2), Q(0), Q(1, 2), Q(1), Q(3, 2), Q(2)]
_SCALES = [Q(1), Q(3, 2), Q(2)]


def rand_entry(rng: random.Random):
    return rng.choice(_ENTRIES)


def rand_vector(rng: random.Random, n: int, nonzero: bool = True):
    while True:
        v = tuple(rand_entry(rng) for _ in range(n))
        if not nonzero or any(a != 0 for a in v):
            return v


def random_space(rng: random.Random, dim: int, extra_pairs: int | None = None,
                 budgets: Budgets = DEFAULT) -> FinSpace:
    """Random symmetric polytope space: scaled unit vectors plus extra pairs.

    The scaled unit vectors guarantee the set spans, so construction never
    fails; extra pairs shape the ball.
    """
    if extra_pairs is None:
        extra_pairs = dim + 1
    pts = []
    for i in range(dim):
        c = rng.choice(_SCALES)
        e = tuple(c * x for x in unit(dim, i))
        pts.append(e)
        pts.append(vneg(e))
    for _ in range(extra_pairs):
        v = rand_vector(rng, dim)
        pts.append(v)
        pts.append(vneg(v))
    return space_from_vertices(pts, budgets=budgets)


def random_subspace_basis(rng: random.Random, n: int, k: int):
    """k independent small-height vectors in dimension n."""
    while True:
        cols = [rand_vector(rng, n) for _ in range(k)]
        if rank(cols) == k:
            return cols


def random_matrix(rng: random.Random, rows: int, cols: int,
                  injective: bool = False):
    while True:
        m = tuple(tuple(rand_entry(rng) for _ in range(cols)) for _ in range(rows))
        if not injective or rank(list(zip(*m))) == cols:
            return m
