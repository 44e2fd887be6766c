import random

import pytest

from banachcalc.budgets import Budgets
from banachcalc.errors import BudgetExceeded
from banachcalc.invariants import (TensorElem, cotype_witness, injective_norm,
                                   nuclear_norm, pi1_norm,
                                   projection_constant, projection_trend,
                                   projective_norm, rademacher_average,
                                   type_witness)
from banachcalc.rationals import parse_rat, rat
from banachcalc.ratlinalg import unit
from banachcalc.sampling import random_space
from banachcalc.spaces import (LinOp, dual, l1_space, linf_space,
                               operator_norm, space_norm)

R = parse_rat


def e(n, i):
    return unit(n, i)


def test_rademacher_average_hand_values():
    X = l1_space(2)
    assert rademacher_average(X, [e(2, 0), e(2, 1)]) == 2
    assert rademacher_average(X, [e(2, 0), e(2, 0)]) == 1
    Y = linf_space(2)
    assert rademacher_average(Y, [e(2, 0), e(2, 1)]) == 1


def test_rademacher_average_brute_force_cross_check():
    rng = random.Random(21)
    for _ in range(4):
        X = random_space(rng, 2)
        vecs = [tuple(rat(rng.randint(-2, 2)) for _ in range(2))
                for _ in range(3)]
        total = rat(0)
        count = 0
        for mask in range(8):
            signs = [1 if mask >> i & 1 else -1 for i in range(3)]
            s = tuple(sum(signs[i] * vecs[i][d] for i in range(3))
                      for d in range(2))
            total += space_norm(X, s)
            count += 1
        assert rademacher_average(X, vecs) == total / count


def test_rademacher_sign_budget():
    X = l1_space(1)
    vecs = [(rat(1),)] * 4
    with pytest.raises(BudgetExceeded):
        rademacher_average(X, vecs, Budgets(sign_patterns=3))


def test_cotype2_l1_repeated_basis_vector():
    rep = cotype_witness(l1_space(2), [e(2, 0), e(2, 0)], rat(2))
    assert rep.rademacher_avg == 1
    assert rep.exact_square == 2
    assert abs(rep.bound_float - 2 ** 0.5) < 1e-12


def test_cotype2_linf_basis_squares():
    for n in range(1, 5):
        rep = cotype_witness(linf_space(n),
                             [e(n, i) for i in range(n)], rat(2))
        assert rep.rademacher_avg == 1
        assert rep.exact_square == n


def test_cotype_inf_exact_path():
    rep = cotype_witness(l1_space(2), [e(2, 0), e(2, 1)], "inf")
    # lhs = max norm = 1, avg = 2 -> bound 1/2 exactly
    assert rep.exact_value == R("1/2")


def test_cotype_float_path():
    rep = cotype_witness(linf_space(3), [e(3, i) for i in range(3)], rat(3))
    assert rep.exact_value is None and rep.exact_square is None
    assert abs(rep.bound_float - 3 ** (1 / 3)) < 1e-9


def test_type1_l1_basis():
    rep = type_witness(l1_space(2), [e(2, 0), e(2, 1)], rat(1))
    assert rep.rademacher_avg == 2
    assert rep.exact_value == 1


def test_type_bound_monotone_in_p():
    # (sum ||x||)^1 >= sqrt(sum ||x||^2), so the p=2 bound dominates p=1;
    # compared exactly through squares
    rng = random.Random(23)
    for _ in range(5):
        X = random_space(rng, 2)
        vecs = [tuple(rat(rng.randint(-2, 2)) for _ in range(2))
                for _ in range(3)]
        if all(all(a == 0 for a in v) for v in vecs):
            continue
        r1 = type_witness(X, vecs, rat(1))
        r2 = type_witness(X, vecs, rat(2))
        assert r1.exact_value is not None and r2.exact_square is not None
        assert r1.exact_value ** 2 <= r2.exact_square
        assert r1.bound_float <= r2.bound_float + 1e-12


def test_projection_constant_diagonal_in_l1():
    res = projection_constant(l1_space(2), [(rat(1), rat(1))])
    assert res.lam == 1
    P = res.projection
    # fixes the subspace and lands in it
    img = P.apply((rat(1), rat(1)))
    assert img == (rat(1), rat(1))
    assert operator_norm(P) == 1


def test_projection_constant_coordinate_plane():
    res = projection_constant(l1_space(3), [e(3, 0), e(3, 1)])
    assert res.lam == 1  # coordinate projections are contractions in l1


def test_projection_constant_lower_bounds_every_projection():
    # any explicit projection gives an upper bound certificate
    res = projection_constant(l1_space(2), [(rat(1), rat(1))])
    Q = LinOp(l1_space(2), l1_space(2),
              ((rat(1), rat(0)), (rat(1), rat(0))))  # projection onto diag
    # Q fixes (1,1) and has range in the diagonal
    assert Q.apply((rat(1), rat(1))) == (rat(1), rat(1))
    assert res.lam <= operator_norm(Q)


def test_projection_trend_increasing():
    entries = [("r1", l1_space(2), [e(2, 0)]),
               ("r2", l1_space(3), [e(3, 0), e(3, 1)])]
    rep = projection_trend(entries)
    assert [r[1] for r in rep.rows] == [1, 2]
    assert rep.exponent is not None


def test_tensor_identity_linf_l1():
    for n in range(1, 5):
        coeffs = tuple(tuple(rat(1) if i == j else rat(0) for j in range(n))
                       for i in range(n))
        t = TensorElem(linf_space(n), l1_space(n), coeffs)
        assert injective_norm(t) == 1
        assert projective_norm(t) == n


def test_tensor_norms_ordering_sampled():
    rng = random.Random(31)
    for _ in range(6):
        nl, nr = rng.randint(1, 2), rng.randint(1, 3)
        L = random_space(rng, nl)
        Rt = random_space(rng, nr)
        coeffs = tuple(tuple(rat(rng.randint(-2, 2)) for _ in range(nr))
                       for _ in range(nl))
        t = TensorElem(L, Rt, coeffs)
        assert injective_norm(t) <= projective_norm(t)


def test_tensor_cell_budget():
    coeffs = tuple(tuple(rat(0) for _ in range(5)) for _ in range(5))
    t = TensorElem(l1_space(5), l1_space(5), coeffs)
    with pytest.raises(BudgetExceeded):
        projective_norm(t, Budgets(tensor_cells=16))


def test_nuclear_norm_identity_l1():
    for n in range(1, 4):
        idm = tuple(tuple(rat(1) if i == j else rat(0) for j in range(n))
                    for i in range(n))
        u = LinOp(l1_space(n), l1_space(n), idm)
        assert nuclear_norm(u) == n


def test_pi1_identity_l1_2():
    idm = ((rat(1), rat(0)), (rat(0), rat(1)))
    u = LinOp(l1_space(2), l1_space(2), idm)
    assert pi1_norm(u) == 2


def test_rank_one_pi1_equals_nuclear():
    # u = y <f, .> with f = (3, 1) on l1^2 (sup-norm 3), y = (4) in l1^1
    X = l1_space(2)
    Y = l1_space(1)
    u = LinOp(X, Y, ((rat(12), rat(4)),))  # y f^T with y=(4), f=(3,1)
    fnorm = space_norm(dual(X), (rat(3), rat(1)))
    ynorm = space_norm(Y, (rat(4),))
    assert fnorm * ynorm == 12
    assert pi1_norm(u) == 12
    assert nuclear_norm(u) == 12


def test_operator_norm_chain_sampled():
    rng = random.Random(41)
    for _ in range(6):
        X = random_space(rng, 2)
        Y = random_space(rng, rng.randint(1, 2))
        m = tuple(tuple(rat(rng.randint(-2, 2)) for _ in range(2))
                  for _ in range(Y.dim))
        u = LinOp(X, Y, m)
        lo = operator_norm(u)
        mid = pi1_norm(u)
        hi = nuclear_norm(u)
        assert lo <= mid <= hi
