"""Towers of isometric gluings, replayable bit-for-bit.

Each step glues a net triple (A -> B) onto the current top space through an
isometric anchor; the left pushout map extends the chain isometrically. The
log stores every matrix, so the whole tower can be re-derived and compared
bit-exactly. Extension defects quantify how far the finished top space is
from homogeneity.

Run:  python3 demos/06_towers.py
"""

from banachcalc import (EmbeddingTriple, LinOp, build_tower, homogeneity_defect,
                        l1_space, replay_tower)
from banachcalc.rationals import parse_rat, qstr
from banachcalc.spaces import distortion
from banachcalc.tower import TripleNet, anchor_candidates

R = parse_rat


def main():
    A = l1_space(1)
    net = TripleNet(n=1, m=2, eps=None, triples=(
        EmbeddingTriple(A, l1_space(2),
                        LinOp(A, l1_space(2), ((R("1"),), (R("0"),)))),
        EmbeddingTriple(A, l1_space(2),
                        LinOp(A, l1_space(2), ((R("1/2"),), (R("1/2"),)))),
    ))

    stage = build_tower(l1_space(1), net, steps=4, seed=7)
    print(f"built stage {stage.index}: dim={stage.space.dim} "
          f"({len(stage.space.ball.vertices)} vertices)")
    for k, c in enumerate(stage.chain):
        cert = distortion(c)
        print(f"   chain {k}: {c.domain.dim}->{c.codomain.dim} "
              f"isometric={cert.is_isometry}")

    again = replay_tower(l1_space(1), stage.log)
    assert again.space.ball.vertices == stage.space.ball.vertices
    assert again.log == stage.log
    print("replay: bit-exact")

    # Probe homogeneity: how well do embeddings of net triples extend?
    probes = []
    for t in net.triples:
        for anchor in anchor_candidates(t.A, stage, seed=1)[:1]:
            probes.append((t, anchor))
    stats = homogeneity_defect(stage, probes, seed=2)
    for r in stats.probes:
        print(f"   probe: method={r.method} defect<={qstr(r.defect)}")
    print(f"exact extensions: {stats.exact_ones}/{len(stats.probes)}, "
          f"median defect {qstr(stats.median)}")


if __name__ == "__main__":
    main()
