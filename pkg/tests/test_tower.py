
import pytest

from banachcalc.budgets import Budgets
from banachcalc.errors import (ConstructionFailed, DimensionOverBudget,
                               DimMismatch, NotIsometricInput)
from banachcalc.rationals import ONE, parse_rat, rat
from banachcalc.spaces import LinOp, distortion, is_isometric, l1_space
from banachcalc.tower import (EmbeddingTriple, TowerStage, anchor_candidates,
                              build_tower, find_isometric_embeddings,
                              homogeneity_defect, replay_tower, tower_step,
                              triple_distance_upper, triple_net)

R = parse_rat


def line_in_plane():
    A = l1_space(1)
    B = l1_space(2)
    return EmbeddingTriple(A, B, LinOp(A, B, ((rat(1),), (rat(0),))))


def test_embedding_triple_validation():
    A = l1_space(1)
    B = l1_space(2)
    with pytest.raises(NotIsometricInput):
        EmbeddingTriple(A, B, LinOp(A, B, ((rat(2),), (rat(0),))))
    with pytest.raises(DimMismatch):
        EmbeddingTriple(A, B, LinOp(A, A, ((rat(1),),)))


def test_find_isometric_embeddings():
    found = find_isometric_embeddings(l1_space(1), l1_space(2), seed=0)
    assert found
    for op in found:
        assert distortion(op).is_isometry


def test_triple_distance_certifies_signed_copy():
    A = l1_space(1)
    B = l1_space(2)
    t1 = EmbeddingTriple(A, B, LinOp(A, B, ((rat(1),), (rat(0),))))
    t2 = EmbeddingTriple(A, B, LinOp(A, B, ((rat(-1),), (rat(0),))))
    t3 = EmbeddingTriple(A, B, LinOp(A, B, ((rat(0),), (rat(1),))))
    assert triple_distance_upper(t1, t2) == ONE
    assert triple_distance_upper(t1, t3) == ONE  # coordinate swap witness


def test_triple_net_collapses_duplicates():
    net = triple_net([l1_space(1), l1_space(2)], 1, 2, None, seed=0)
    # eps=None keeps a single representative
    assert len(net.triples) == 1


def test_tower_two_steps_reaches_l1_3():
    t = line_in_plane()
    stage0 = TowerStage(0, l1_space(1))
    anchor0 = LinOp(l1_space(1), l1_space(1), ((rat(1),),))
    stage1 = tower_step(stage0, t, anchor0)
    assert stage1.space.dim == 2
    # follow the glued copy of the line: j_right places B, compose with i
    from banachcalc.ratlinalg import mat_mul
    anchor1 = LinOp(l1_space(1), stage1.space,
                    mat_mul(stage1.log[-1].j_right, t.i.matrix))
    stage2 = tower_step(stage1, t, anchor1)
    assert stage2.space.dim == 3
    assert is_isometric(stage2.space, l1_space(3)) is not None
    # chain maps are isometric and compose
    comp = stage2.chain_map(0)
    assert distortion(comp).is_isometry


def test_tower_step_dimension_cap():
    t = line_in_plane()
    stage = TowerStage(0, l1_space(1))
    anchor = LinOp(l1_space(1), l1_space(1), ((rat(1),),))
    with pytest.raises(DimensionOverBudget):
        tower_step(stage, t, anchor, Budgets(tower_dim_cap=1))


def test_build_and_replay_bit_exact():
    net = triple_net([l1_space(1), l1_space(2)], 1, 2, R("1/100"), seed=2)
    stage = build_tower(l1_space(1), net, 3, seed=5)
    assert stage.index == 3
    replayed = replay_tower(l1_space(1), stage.log)
    assert replayed.space == stage.space
    assert replayed.log == stage.log
    for c in stage.chain:
        assert distortion(c).is_isometry


def test_replay_rejects_tampered_log():
    net = triple_net([l1_space(1), l1_space(2)], 1, 2, R("1/100"), seed=2)
    stage = build_tower(l1_space(1), net, 2, seed=5)
    entry = stage.log[-1]
    from dataclasses import replace
    bad_j = tuple(tuple(2 * a for a in row) for row in entry.j_left)
    tampered = stage.log[:-1] + (replace(entry, j_left=bad_j),)
    with pytest.raises(ConstructionFailed):
        replay_tower(l1_space(1), tampered)


def test_anchor_candidates_provenance_first():
    t = line_in_plane()
    stage0 = TowerStage(0, l1_space(1))
    anchor0 = LinOp(l1_space(1), l1_space(1), ((rat(1),),))
    stage1 = tower_step(stage0, t, anchor0)
    cands = anchor_candidates(l1_space(1), stage1, seed=0)
    assert cands
    for c in cands:
        assert distortion(c).is_isometry
        assert c.codomain == stage1.space


def test_homogeneity_defect_probe_reports():
    t = line_in_plane()
    stage0 = TowerStage(0, l1_space(1))
    anchor0 = LinOp(l1_space(1), l1_space(1), ((rat(1),),))
    stage1 = tower_step(stage0, t, anchor0)
    # provenance probe: the logged anchor was the identity on the line, so
    # its placement in the new stage is exactly the left glue map
    lifted = LinOp(l1_space(1), stage1.space, stage1.log[-1].j_left)
    stats = homogeneity_defect(stage1, [(t, lifted)], seed=0)
    assert stats.probes[0].defect == 1
    assert stats.probes[0].method in ("provenance", "search")
    assert stats.exact_ones >= 1


def test_homogeneity_square_triple_is_exact():
    A = l1_space(2)
    sq = EmbeddingTriple(A, A, LinOp(A, A, ((rat(1), rat(0)),
                                            (rat(0), rat(1)))))
    stage = TowerStage(0, l1_space(2))
    idm = LinOp(A, stage.space, ((rat(1), rat(0)), (rat(0), rat(1))))
    stats = homogeneity_defect(stage, [(sq, idm)], seed=0)
    assert stats.probes[0].defect == 1
    assert stats.probes[0].method == "square"
