import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from meshddbs.lattice_ball import (
    BallSpec,
    BudgetExceededError,
    ConstraintSpec,
    Parity,
    asymptotic_estimate,
    ball_points,
    ball_size_closed,
    ball_size_closed_alt,
    ball_size_recurrence,
    bound_chain,
    bounding_box_points,
    enumerate_ball,
    generating_series,
    moore_bound,
    size_table,
)
from meshddbs.mesh_graph import diameter

from oracles import EVEN_TABLE, ODD_TABLE, brute_ball_count, delannoy

PARITIES = [Parity.EVEN, Parity.ODD]


@pytest.mark.parametrize("parity,table", [(Parity.EVEN, EVEN_TABLE), (Parity.ODD, ODD_TABLE)])
def test_frozen_tables(parity, table):
    assert size_table(4, 8, parity) == table
    for k in range(5):
        for p in range(9):
            assert ball_size_closed(BallSpec(k, p, parity)) == table[k][p]


@pytest.mark.parametrize("parity", PARITIES)
def test_every_counting_method_agrees(parity):
    for k in range(5):
        series = generating_series(k, parity, 7)
        for p in range(8):
            spec = BallSpec(k, p, parity)
            closed = ball_size_closed(spec)
            assert closed == ball_size_closed_alt(spec) == ball_size_recurrence(spec) == series[p]
            if k <= 3 and p <= 5:
                assert closed == brute_ball_count(k, p, parity is Parity.ODD)


def test_ball_points_match_box_scan():
    for k in range(1, 4):
        for p in range(5):
            for parity in PARITIES:
                spec = BallSpec(k, p, parity)
                pts = list(ball_points(spec))
                assert pts == sorted(pts)
                assert pts == bounding_box_points(spec)


@given(st.integers(0, 10), st.integers(0, 10))
def test_delannoy_symmetry_and_identity(k, p):
    even = ball_size_closed(BallSpec(k, p))
    assert even == ball_size_closed(BallSpec(p, k))
    assert even == delannoy(k, p)
    if k >= 1 and p >= 1:
        for parity in PARITIES:
            f = lambda a, b: ball_size_closed(BallSpec(a, b, parity))  # noqa: E731
            assert f(k, p) == f(k, p - 1) + f(k - 1, p) + f(k - 1, p - 1)


def test_small_balls_as_graphs():
    g = enumerate_ball(BallSpec(2, 3))
    assert (g.order, g.size, diameter(g)) == (25, 36, 6)
    odd = enumerate_ball(BallSpec(3, 2, Parity.ODD))
    assert (odd.order, diameter(odd)) == (38, 5)
    assert enumerate_ball(BallSpec(1, 3, Parity.ODD)).order == 8


def test_enumeration_budget():
    with pytest.raises(BudgetExceededError):
        enumerate_ball(BallSpec(4, 8), budget=1000)


def test_moore_bound():
    assert moore_bound(4, 4) == 161
    assert moore_bound(3, 2) == 10
    assert moore_bound(2, 3) == 7
    assert moore_bound(1, 5) == 2


def test_bound_chain():
    assert bound_chain(2, 3, 2) == (13, 25)
    with pytest.raises(ValueError):
        bound_chain(3, 3, 2)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_asymptotic_ratio_is_bounded(k):
    ratios = [ball_size_closed(BallSpec(k, p)) / asymptotic_estimate(k, p) for p in (10, 100, 1000)]
    assert all(r >= 1 for r in ratios)
    assert ratios[0] >= ratios[1] >= ratios[2]
    assert ratios[2] - 1 < 2 * k / 1000 * math.factorial(k)


def test_input_guards():
    with pytest.raises(ValueError):
        BallSpec(-1, 2)
    with pytest.raises(ValueError):
        ConstraintSpec(0, 3)
    with pytest.raises(ValueError):
        ConstraintSpec(5, 2).check_dimension(2)
    assert BallSpec.from_diameter(3, 7) == BallSpec(3, 3, Parity.ODD)
    assert BallSpec(2, 3, "odd").diameter() == 7
