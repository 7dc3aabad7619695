import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from fafrontier import (Constrained, DomainError, Egalitarian, Kind, Rawlsian, SimpleWeights, SocialWelfare,
                        Utilitarian, classify, fa_dominates, fa_frontier, feasible_set, group_error,
                        preference_optimum, simple_preference_witness, special_points)
from fafrontier.frontier import mixture_algorithm, polygon_frontier, polygon_special_points
from fafrontier.geometry import ConvexPolygon, Polyline, sample_polyline
from fafrontier.instances import (MISCLASSIFICATION, binary_score_instance, random_instance, random_loss,
                                  split_signal_instance)
from support import seeded_instance


def test_binary_score_frontier():
    fs = feasible_set(binary_score_instance(), MISCLASSIFICATION)
    sp = special_points(fs)
    assert sp.r_point == sp.b_point == (F(1, 4), F(1, 3))
    assert sp.f_point == (F(1, 2), F(1, 2))
    assert classify(sp).kind is Kind.R_SKEWED
    assert fa_frontier(fs).points == ((F(1, 4), F(1, 3)), (F(1, 2), F(1, 2)))


def test_special_point_algorithms_reproduce_points():
    fs = feasible_set(binary_score_instance(), MISCLASSIFICATION)
    sp = special_points(fs)
    for name in "rbf":
        alg = getattr(sp, f"{name}_algorithm")
        assert group_error(fs.instance, fs.loss, alg) == getattr(sp, f"{name}_point")


def test_split_signal_is_strictly_balanced():
    fs = feasible_set(split_signal_instance(random.Random(2)), MISCLASSIFICATION)
    c = classify(special_points(fs))
    assert c.kind is Kind.GROUP_BALANCED and c.strict_balance


def test_fa_dominance_relation():
    assert fa_dominates((F(1, 5), F(1, 5)), (F(1, 4), F(1, 4)))
    assert not fa_dominates((F(1, 5), F(1, 5)), (F(1, 5), F(1, 5)))
    assert not fa_dominates((0, F(2, 5)), (F(2, 5), F(2, 5)))  # bigger gap
    assert fa_dominates((F(2, 5), F(2, 5)), (F(1, 2), F(1, 2)))


def test_rectangle_frontier_and_preferences():
    rect = ConvexPolygon.from_points([(0, F(2, 5)), (1, F(2, 5)), (1, F(3, 5)), (0, F(3, 5))])
    fr = polygon_frontier(rect)
    assert fr.points == ((0, F(2, 5)), (F(2, 5), F(2, 5)))
    assert preference_optimum(fr, Egalitarian()) == (F(2, 5), F(2, 5))
    assert preference_optimum(fr, Utilitarian(F(1, 2), F(1, 2))) == (0, F(2, 5))
    assert preference_optimum(fr, Rawlsian()) == (F(2, 5), F(2, 5))
    assert preference_optimum(fr, SocialWelfare(1, 1)) == (0, F(2, 5))
    assert preference_optimum(fr, Constrained(F(9, 10))) == (F(2, 5), F(2, 5))


def test_singleton_polygon():
    sp = polygon_special_points(ConvexPolygon(((F(1, 3), F(1, 3)),)))
    assert sp.r_point == sp.b_point == sp.f_point
    assert classify(sp).kind is Kind.GROUP_BALANCED


def test_simple_weights_signs():
    with pytest.raises(DomainError):
        SimpleWeights(1, -1, 0)
    with pytest.raises(DomainError):
        SimpleWeights(-1, -1, 1)


def test_simple_witness_rejects_off_frontier():
    fs = feasible_set(binary_score_instance(), MISCLASSIFICATION)
    with pytest.raises(DomainError):
        simple_preference_witness(fs, (F(3, 4), F(2, 3)))


def test_group_swap_mirrors_classification():
    for seed in range(40):
        inst, loss = seeded_instance(seed)
        k1 = classify(special_points(feasible_set(inst, loss))).kind
        k2 = classify(special_points(feasible_set(inst.swap_groups(), loss))).kind
        mirror = {Kind.R_SKEWED: Kind.B_SKEWED, Kind.B_SKEWED: Kind.R_SKEWED, Kind.GROUP_BALANCED: Kind.GROUP_BALANCED}
        assert k2 is mirror[k1]


def test_float_mode_agrees_with_exact():
    for seed in range(20):
        inst, loss = seeded_instance(seed)
        exact = fa_frontier(feasible_set(inst, loss)).simplified().points
        flt = fa_frontier(feasible_set(inst.with_mode("float"), loss.with_mode(False))).simplified().points
        assert len(exact) == len(flt)
        for p, q in zip(exact, flt):
            assert abs(float(p[0]) - q[0]) < 1e-9 and abs(float(p[1]) - q[1]) < 1e-9


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_every_frontier_point_has_simple_witness(seed):
    rng = random.Random(seed)
    inst = random_instance(rng, max_realizations=5)
    loss = random_loss(rng, inst.type_labels, negative=seed % 2 == 0)
    fs = feasible_set(inst, loss)
    for e in sample_polyline(fa_frontier(fs), 3):
        w = simple_preference_witness(fs, e)
        assert w.alpha_r < 0 and w.alpha_b < 0 and w.alpha_f <= 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_mixture_algorithm_hits_target(seed):
    rng = random.Random(seed)
    inst = random_instance(rng)
    loss = random_loss(rng, inst.type_labels)
    fs = feasible_set(inst, loss)
    vs = fs.polygon.vertices
    ws = [F(rng.randint(0, 5)) for _ in vs]
    if not any(ws):
        ws[0] = F(1)
    t = (sum(w * v[0] for w, v in zip(ws, vs)) / sum(ws), sum(w * v[1] for w, v in zip(ws, vs)) / sum(ws))
    assert group_error(inst, loss, mixture_algorithm(fs, t)) == t


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_preference_optima_are_on_frontier_and_undominated(seed):
    rng = random.Random(seed)
    inst = random_instance(rng)
    loss = random_loss(rng, inst.type_labels)
    fs = feasible_set(inst, loss)
    fr = fa_frontier(fs)
    for pref in (Utilitarian(*inst.group_probs.values()), Rawlsian(), Egalitarian(), Constrained(F(1, 3))):
        p = preference_optimum(fr, pref)
        assert fr.contains(p)
        assert not any(fa_dominates(q, p) for q in sample_polyline(fr, 8))
