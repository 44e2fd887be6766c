import random

import pytest

from banachcalc.errors import DimMismatch
from banachcalc.polytopes import polar
from banachcalc.rationals import parse_rat, rat
from banachcalc.sampling import random_space, random_subspace_basis
from banachcalc.spaces import (FinSpace, LinOp, annihilator, bm_upper,
                               distortion, dsum1, dsum2_approx, dsum_inf,
                               dual, is_isometric, l1_space, linf_space,
                               operator_norm, quotient, space_norm, subspace)

R = parse_rat


def test_l1_linf_norms():
    X = l1_space(3)
    Y = linf_space(3)
    v = (rat(1), rat(-2), R("1/2"))
    assert space_norm(X, v) == R("7/2")
    assert space_norm(Y, v) == 2
    assert space_norm(X, (rat(0), rat(0), rat(0))) == 0


def test_dual_pairs():
    assert dual(l1_space(3)) == FinSpace(3, linf_space(3).ball,
                                         label=dual(l1_space(3)).label)
    assert dual(dual(l1_space(2))).ball == l1_space(2).ball
    rng = random.Random(1)
    for _ in range(5):
        X = random_space(rng, rng.randint(1, 3))
        assert dual(dual(X)).ball == X.ball


def test_dual_norm_is_support():
    rng = random.Random(2)
    X = random_space(rng, 2)
    D = dual(X)
    for f in D.ball.vertices:
        # dual vertices are exactly the facet functionals of X
        assert f in X.ball.facets
    assert D.ball == polar(X.ball)


def test_subspace_diagonal_of_l1():
    S = subspace(l1_space(2), [(rat(1), rat(1))])
    assert set(S.ball.vertices) == {(R("1/2"),), (R("-1/2"),)}
    S2 = subspace(linf_space(2), [(rat(1), rat(1))])
    assert set(S2.ball.vertices) == {(rat(1),), (rat(-1),)}


def test_quotient_of_l1_by_e1():
    F, qmap = quotient(l1_space(2), [(rat(1), rat(0))])
    assert F.dim == 1
    assert set(F.ball.vertices) == {(rat(1),), (rat(-1),)}
    # quotient map is a contraction and surjective
    assert operator_norm(qmap) == 1


def test_quotient_norm_is_infimum():
    # in l1^2 / span{(1,1)}: class of e1 has norm min_a |1-a| + |a|... = 1/2?
    F, qmap = quotient(l1_space(2), [(rat(1), rat(1))])
    img = qmap.apply((rat(1), rat(0)))
    # representatives (1,0) + t(1,1); minimum l1 norm at t=-1/2 gives 1
    assert space_norm(F, img) == space_norm(l1_space(2),
                                            (R("1/2"), R("-1/2")))


def test_annihilator_dimensions_and_duality():
    X = l1_space(3)
    ann_space, ann_basis = annihilator(X, [(rat(1), rat(0), rat(0))])
    assert ann_space.dim == 2
    assert len(ann_basis) == 2
    # annihilator functionals kill the subspace
    for f in ann_basis:
        assert f[0] == 0


def test_dsum1_dsuminf_duality():
    X = l1_space(2)
    Y = linf_space(2)
    S = dsum1(X, Y)
    T = dsum_inf(dual(X), dual(Y))
    assert S.ball == polar(T.ball)
    v = (rat(1), rat(0), rat(0), rat(0))
    assert space_norm(S, v) == 1
    assert space_norm(S, (rat(1), rat(0), rat(1), rat(0))) == 2
    assert space_norm(T, (rat(1), rat(0), rat(1), rat(0))) == 1


def test_dsum2_approx_sandwich():
    eps = R("1/100")
    S = dsum2_approx(l1_space(1), l1_space(1), eps)
    # norm of (x, y) should approximate sqrt(x^2 + y^2) within factor 1+eps
    for x, y in [(1, 0), (1, 1), (3, 4), (-2, 5)]:
        n = space_norm(S, (rat(x), rat(y)))
        euclid = (x * x + y * y) ** 0.5
        assert euclid / 1.01 - 1e-12 <= float(n) <= euclid * 1.01 + 1e-12


def test_dsum2_meta_tag():
    S = dsum2_approx(l1_space(1), l1_space(1), R("1/10"))
    assert ("approx", "sum2") in S.meta


def test_operator_norm_values():
    X = l1_space(2)
    Y = linf_space(2)
    u = LinOp(X, Y, ((rat(1), rat(0)), (rat(0), rat(1))))
    assert operator_norm(u) == 1
    v = LinOp(Y, X, ((rat(1), rat(0)), (rat(0), rat(1))))
    assert operator_norm(v) == 2  # maps (1,1) to l1-norm 2
    w = LinOp(X, X, ((rat(2), rat(0)), (rat(0), rat(3))))
    assert operator_norm(w) == 3


def test_distortion_certificate():
    X = l1_space(2)
    u = LinOp(X, X, ((rat(2), rat(0)), (rat(0), rat(2))))
    cert = distortion(u)
    assert cert.norm == 2
    assert cert.inv_norm == R("1/2")
    assert cert.distortion == 1
    sing = LinOp(X, X, ((rat(1), rat(1)), (rat(1), rat(1))))
    assert distortion(sing).distortion is None


def test_is_isometric_positive_and_negative():
    w = is_isometric(l1_space(2), linf_space(2))
    assert w is not None
    assert distortion(w).distortion == 1
    assert is_isometric(l1_space(3), linf_space(3)) is None
    assert is_isometric(l1_space(2), l1_space(3)) is None


def test_bm_upper_bounds():
    cert = bm_upper(l1_space(2), linf_space(2), seed=0)
    assert cert.distortion == 1
    cert2 = bm_upper(l1_space(2), l1_space(2), seed=0)
    assert cert2.distortion == 1
    cert3 = bm_upper(l1_space(3), linf_space(3), seed=0)
    assert cert3.distortion is not None and cert3.distortion >= 1


def test_linop_validation():
    with pytest.raises(DimMismatch):
        LinOp(l1_space(2), l1_space(2), ((rat(1),),))


def test_subspace_quotient_random_consistency():
    # inclusion followed by quotient map annihilates the subspace
    rng = random.Random(9)
    for _ in range(5):
        X = random_space(rng, 3)
        basis = random_subspace_basis(rng, 3, 1)
        F, qmap = quotient(X, basis)
        img = qmap.apply(basis[0])
        assert all(a == 0 for a in img)
        S = subspace(X, basis)
        assert S.dim == 1
        # the inclusion is isometric: section vertices have norm 1 upstairs
        for c in S.ball.vertices:
            x = tuple(sum(basis[j][i] * c[j] for j in range(1))
                      for i in range(3))
            assert space_norm(X, x) == 1
