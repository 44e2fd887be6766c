import pytest

from banachcalc.budgets import Budgets
from banachcalc.errors import BudgetExceeded, Infeasible, Unbounded
from banachcalc.linprog import lp_feasible, lp_solve
from banachcalc.rationals import rat


def R(s):
    from banachcalc.rationals import parse_rat
    return parse_rat(s)


def test_min_t_above_two_bounds():
    # min t subject to t >= 1, t >= 2
    res = lp_solve((rat(1),), a_ub=((rat(-1),), (rat(-1),)),
                   b_ub=(rat(-1), rat(-2)))
    assert res.value == 2
    assert res.x == (rat(2),)


def test_l1_distance_to_diagonal():
    # distance of e1 to span{(1,1)} in l1^2: min |1-a| + |a| over a,
    # linearized with s >= |1-a|, t >= |a|; variables (a, s, t)
    res = lp_solve(
        (rat(0), rat(1), rat(1)),
        a_ub=((rat(-1), rat(-1), rat(0)),   # 1-a <= s
              (rat(1), rat(-1), rat(0)),    # a-1 <= s
              (rat(1), rat(0), rat(-1)),    # a <= t
              (rat(-1), rat(0), rat(-1))),  # -a <= t
        b_ub=(rat(-1), rat(1), rat(0), rat(0)))
    assert res.value == 1


def test_maximize_and_duals():
    # max x+y over the square [-1,1]^2; strong duality checked exactly
    res = lp_solve((rat(1), rat(1)),
                   a_ub=((rat(1), rat(0)), (rat(-1), rat(0)),
                         (rat(0), rat(1)), (rat(0), rat(-1))),
                   b_ub=(rat(1), rat(1), rat(1), rat(1)),
                   maximize=True, want_dual=True)
    assert res.value == 2
    assert res.x == (rat(1), rat(1))
    paid = sum(d * b for d, b in zip(res.duals_ub,
                                     (rat(1), rat(1), rat(1), rat(1))))
    assert paid == res.value


def test_equality_constraints_nonneg():
    # min x+2y with x+y = 1, x,y >= 0
    res = lp_solve((rat(1), rat(2)), a_eq=((rat(1), rat(1)),),
                   b_eq=(rat(1),), nonneg=True)
    assert res.value == 1
    assert res.x == (rat(1), rat(0))


def test_fractional_optimum_is_exact():
    # min y s.t. y >= x/3 + 1/7, y >= -x + 2/5 meet at exact rationals
    res = lp_solve((rat(0), rat(1)),
                   a_ub=((R("1/3"), rat(-1)), (rat(-1), rat(-1))),
                   b_ub=(R("-1/7"), R("-2/5")))
    # intersection: x/3 + 1/7 = -x + 2/5  =>  x = 27/140, y = 9/49 + ...
    x = R("27/140")
    assert res.x[0] == x
    assert res.value == x / 3 + R("1/7")


def test_infeasible():
    with pytest.raises(Infeasible):
        lp_solve((rat(1),), a_ub=((rat(1),), (rat(-1),)),
                 b_ub=(rat(-1), rat(-1)))


def test_unbounded():
    with pytest.raises(Unbounded):
        lp_solve((rat(-1),), a_ub=((rat(-1),),), b_ub=(rat(0),))


def test_pivot_budget():
    tight = Budgets(lp_pivots=1)
    with pytest.raises(BudgetExceeded):
        lp_solve((rat(1), rat(1), rat(1)),
                 a_ub=((rat(-1), rat(0), rat(0)),
                       (rat(0), rat(-1), rat(0)),
                       (rat(0), rat(0), rat(-1))),
                 b_ub=(rat(-1), rat(-2), rat(-3)), budgets=tight)


def test_feasibility_probe():
    assert lp_feasible(a_ub=((rat(1),),), b_ub=(rat(0),))
    assert not lp_feasible(a_ub=((rat(1),), (rat(-1),)),
                           b_ub=(rat(-1), rat(-1)))
