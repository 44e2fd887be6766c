"""Which spaces sit isometrically inside l1? Exactly those whose dual ball
is a zonotope. This demo embeds a space, recovers the generators from the
zonotope's edges, and shows the classical counterexamples.

Run:  python3 demos/02_zonotopes_and_l1.py
"""

from banachcalc import (NotAZonotope, dual_zonotope, incarnate,
                        incarnation_norm, is_l1_embeddable, l1_space,
                        linf_space, reconstruct)
from banachcalc.polytopes import support
from banachcalc.rationals import parse_rat, qstr

R = parse_rat


def main():
    # Embed the span of two coordinates plus their sum into l1^3.
    emb = incarnate([(R("1"), R("0")), (R("0"), R("1")), (R("1"), R("1"))])
    print(f"embedded into l1^{emb.ambient}; generators:")
    for g in emb.incarnation.generators:
        print("   g", ",".join(qstr(a) for a in g))

    # The norm carried over from l1 equals the support function of the
    # zonotope spanned by the generators (the dual unit ball).
    Z = dual_zonotope(emb.incarnation)
    c = (R("2"), R("-1"))
    print("incarnation norm at (2,-1):",
          qstr(incarnation_norm(emb.incarnation, c)))
    print("support of the zonotope   :", qstr(support(Z, c)))

    # Edges of a zonotope are translates of its generator segments, so the
    # generators can be read back off bit-exactly.
    K = reconstruct(Z)
    assert K.generators == emb.incarnation.generators
    print("reconstruct(dual_zonotope(K)) == K   (bit-exact)")

    # The octahedron is NOT a zonotope: l1^3 has no isometric copy whose
    # dual ball it would be.
    try:
        reconstruct(l1_space(3).ball)
    except NotAZonotope as e:
        print("\noctahedron rejected:", e)

    # Every 2-dim space embeds into l1; linf^3 does not.
    ok, _ = is_l1_embeddable(linf_space(2))
    no, _ = is_l1_embeddable(linf_space(3))
    print("linf^2 l1-embeddable:", ok)
    print("linf^3 l1-embeddable:", no)
    assert ok and not no


if __name__ == "__main__":
    main()
