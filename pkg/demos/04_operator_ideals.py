"""Operator and tensor norms, all exact.

The chain ||u|| <= pi1(u) <= nu1(u) holds for every finite-rank operator;
rank-one operators collapse it to ||f||* ||y|| on the outer two. On tensors,
the injective norm never exceeds the projective norm, and the identity
tensor of l1^n separates them maximally: 1 versus n.

Run:  python3 demos/04_operator_ideals.py
"""

from banachcalc import (LinOp, TensorElem, injective_norm, l1_space,
                        linf_space, nuclear_norm, pi1_norm, projective_norm)
from banachcalc.rationals import parse_rat, qstr
from banachcalc.ratlinalg import identity
from banachcalc.spaces import operator_norm

R = parse_rat


def main():
    # Rank one: u = y f^T with f = (3,1) on l1^2, y = (4) in l1^1.
    u = LinOp(l1_space(2), l1_space(1), ((R("12"), R("4")),))
    print("rank-one u = y f^T, f=(3,1), y=(4):")
    print("   ||u||  =", qstr(operator_norm(u)))
    print("   pi1(u) =", qstr(pi1_norm(u)))
    print("   nu1(u) =", qstr(nuclear_norm(u)))
    assert pi1_norm(u) == nuclear_norm(u) == 12

    # The identity of l1^2 keeps the chain strict on the left:
    # ||id|| = 1 but pi1(id) = nu1(id) = 2.
    idm = identity(2)
    v = LinOp(l1_space(2), l1_space(2), idm)
    print("\nidentity of l1^2:")
    print("   ||id||  =", qstr(operator_norm(v)))
    print("   pi1(id) =", qstr(pi1_norm(v)))
    print("   nu1(id) =", qstr(nuclear_norm(v)))

    # Identity tensor in linf^n (x) l1^n: injective 1, projective n.
    print("\nidentity tensor t_n in linf^n (x) l1^n:")
    for n in range(1, 5):
        t = TensorElem(linf_space(n), l1_space(n), identity(n))
        print(f"   n={n}: vee = {qstr(injective_norm(t))}   "
              f"wedge = {qstr(projective_norm(t))}")


if __name__ == "__main__":
    main()
