import random
from fractions import Fraction as F

import pytest

from fafrontier import AgentWeights, SizeError, feasible_set, input_design_feasible
from fafrontier.instances import MISCLASSIFICATION, binary_score_instance, random_instance, signal_instance
from fafrontier.oracle import gift_wrap, oracle_clip, oracle_feasible, oracle_frontier, oracle_input_design


def test_gift_wrap_square_with_collinear_points():
    pts = [(0, 0), (1, 0), (2, 0), (2, 2), (0, 2), (1, 1)]
    assert gift_wrap(pts) == [(0, 0), (2, 0), (2, 2), (0, 2)]


def test_oracle_feasible_binary_score():
    cloud, hull = oracle_feasible(binary_score_instance(), MISCLASSIFICATION)
    assert len(cloud) == 4
    assert set(hull) == {(F(1, 4), F(1, 3)), (F(3, 4), F(2, 3))}


def test_oracle_size_bound():
    inst = random_instance(random.Random(0), names=("X1",), realizations=[(str(i),) for i in range(13)])
    with pytest.raises(SizeError):
        oracle_feasible(inst, MISCLASSIFICATION)


def test_oracle_clip_triangle():
    assert set(oracle_clip([(0, 0), (1, 0), (1, 1), (0, 1)], (1, 1), 1)) == {(0, 0), (1, 0), (0, 1)}


def test_oracle_frontier_exact_and_float_agree():
    pts = [(F(0), F(2, 5)), (F(2, 5), F(2, 5)), (F(1), F(2, 5)), (F(1, 2), F(1, 2)), (F(1), F(3, 5))]
    exact = set(oracle_frontier(pts).points)
    flt = set(oracle_frontier([(float(a), float(b)) for a, b in pts]).points)
    assert exact == {(0, F(2, 5)), (F(2, 5), F(2, 5))}
    assert flt == {(float(a), float(b)) for a, b in exact}


def test_oracle_input_design_stays_in_clip():
    inst = signal_instance()
    agent = AgentWeights(F(1, 2), F(1, 2))
    poly = input_design_feasible(feasible_set(inst, MISCLASSIFICATION), agent)
    cloud = oracle_input_design(inst, MISCLASSIFICATION, agent, 2000, seed=3)
    assert len(cloud) > 0
    assert all(poly.contains(p, 1e-9) for p in cloud.points)
    again = oracle_input_design(inst, MISCLASSIFICATION, agent, 2000, seed=3)
    assert again.points == cloud.points
