"""Spaces as rational polytopes: norms, duals, and the two duality laws.

Run:  python3 demos/01_spaces_and_duality.py
"""

from banachcalc import (dual, duality_identity_check, l1_space, linf_space,
                        parse_rat, quotient, space_norm, subspace)
from banachcalc.rationals import qstr

R = parse_rat


def show(name, X):
    print(f"{name}: dim={X.dim} vertices={len(X.ball.vertices)} "
          f"facets={len(X.ball.facets)}")
    for v in X.ball.vertices:
        print("   v", ",".join(qstr(a) for a in v))


def main():
    X = l1_space(2)
    show("l1^2 (unit ball = cross-polytope)", X)
    print("||(1,-1)||_1 =", qstr(space_norm(X, (R("1"), R("-1")))))

    D = dual(X)
    show("its dual (the sup-norm square)", D)
    assert D.ball.vertices == linf_space(2).ball.vertices
    assert dual(D).ball.vertices == X.ball.vertices   # polarity is exact

    # The diagonal line in l1^2, with the restricted norm ||t(1,1)|| = 2|t|.
    diag = [(R("1"), R("1"))]
    S = subspace(X, diag)
    print("\ndiagonal subspace: ||t|| =", qstr(space_norm(S, (R("1"),))),
          "* |t|")
    Q, _ = quotient(X, diag)
    print("quotient by the diagonal: ||e1 + span|| =",
          qstr(space_norm(Q, (R("1"),))))

    # dual(subspace) ~ quotient(dual) and dual(quotient) ~ annihilator,
    # checked by exact congruence search (zero tolerance).
    rep = duality_identity_check(X, diag)
    print("\nduality identities on the diagonal:",
          "PASS" if rep.passed else "FAIL")
    assert rep.passed


if __name__ == "__main__":
    main()
