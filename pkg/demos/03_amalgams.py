"""Gluing two spaces along a common subspace.

The l1-sum pushout of an isometric V-formation is always an amalgam with
exactly isometric glue maps. The l2-sum version is NOT: already the 1-dim
identity formation picks up the defect 1 - 1/sqrt(2), which this package
reports as a finding rather than asserting away.

Run:  python3 demos/03_amalgams.py
"""

import math

from banachcalc import (LinOp, VFormation, l1_amalgamate, l1_space, pushout,
                        verify_amalgam)
from banachcalc.rationals import parse_rat, qstr, to_float

R = parse_rat


def main():
    # A = l1^1 glued into B1 = l1^2 along t -> (t/2, t/2) and into B2 = l1^1
    # by the identity.
    A, B1, B2 = l1_space(1), l1_space(2), l1_space(1)
    v = VFormation(A, B1, B2,
                   LinOp(A, B1, ((R("1/2"),), (R("1/2"),))),
                   LinOp(A, B2, ((R("1"),),)))

    am = pushout(v, "sum1")
    rep = verify_amalgam(v, am, check_l1=True)
    print(f"pushout: dim={am.space.dim} commutes={rep.commutes} "
          f"defects=({qstr(am.defect_left)}, {qstr(am.defect_right)}) "
          f"l1-embeddable={rep.l1_embeddable}")
    assert rep.passed

    # The same formation amalgamated directly inside l1 (rib pairing).
    am2 = l1_amalgamate(v)
    print(f"l1 amalgam: witness in l1^{am2.witness.ambient}, "
          f"j_right = {tuple(tuple(qstr(a) for a in r) for r in am2.j_right.matrix)}")

    # The l2-sum pushout of the identity formation is not isometric.
    idop = LinOp(A, A, ((R("1"),),))
    ident = VFormation(A, A, A, idop, idop)
    am3 = pushout(ident, "sum2", eps=R("1/10000"))
    target = 1 - 1 / math.sqrt(2)
    print(f"\nsum2 identity pushout defect = {qstr(am3.defect_left)} "
          f"~ {to_float(am3.defect_left):.6f} (analytic {target:.6f})")
    print("finding: the l2-sum pushout of an isometric formation need not "
          "be isometric.")


if __name__ == "__main__":
    main()
