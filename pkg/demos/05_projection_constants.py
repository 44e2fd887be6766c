"""Minimal projections by exact linear programming.

lambda(A -> X) is the least operator norm of a projection of X onto A.
The LP below finds it exactly; the trend table tracks how it grows on
increasingly Euclidean subspaces of l1^m.

Run:  python3 demos/05_projection_constants.py      (the rank-3 LP takes
a minute or two)
"""

from banachcalc import l1_space, projection_constant
from banachcalc.cli import near_euclidean_entries
from banachcalc.invariants import projection_trend
from banachcalc.rationals import parse_rat, qstr, to_float

R = parse_rat


def main():
    # The diagonal of l1^2 is the range of a norm-one projection.
    res = projection_constant(l1_space(2), [(R("1"), R("1"))])
    print("lambda(diagonal -> l1^2) =", qstr(res.lam))
    for row in res.projection.matrix:
        print("   P", ",".join(qstr(a) for a in row))

    # Near-Euclidean subspaces of l1^m, ranks 1..3: the constant climbs.
    print("\nnear-Euclidean trend:")
    rep = projection_trend(near_euclidean_entries(3))
    for label, rank, lam in rep.rows:
        print(f"   {label}: rank={rank} lambda={qstr(lam)} "
              f"({to_float(lam):.4f})")
    print(f"fitted exponent = {rep.exponent:.4f} (observational)")


if __name__ == "__main__":
    main()
