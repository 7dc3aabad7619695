import random
from fractions import Fraction as F

import pytest

from fafrontier import (AgentWeights, DomainError, PreconditionError, UnsupportedModeError, decision_relevant,
                        exclude_G_predicate, exclude_Xprime_given_G_predicate, extreme_group_errors,
                        feasible_set, project, uniform_worsening_report)
from fafrontier.dist import Instance, LossMatrix
from fafrontier.instances import (MISCLASSIFICATION, binary_score_instance, random_binary_instance,
                                  reveals_group_instance, signal_instance, split_signal_instance)

HALF = AgentWeights(F(1, 2), F(1, 2))


def test_extreme_errors_examples():
    ex = extreme_group_errors(feasible_set(project(signal_instance(), ["X", "Xp"], True), MISCLASSIFICATION))
    assert (ex.min_r, ex.max_r, ex.min_b, ex.max_b) == (0, 1, F(2, 5), F(3, 5))
    ex = extreme_group_errors(feasible_set(binary_score_instance(), MISCLASSIFICATION))
    assert (ex.min_r, ex.max_r, ex.min_b, ex.max_b) == (F(1, 4), F(3, 4), F(1, 3), F(2, 3))
    flat = extreme_group_errors(feasible_set(binary_score_instance(), LossMatrix.constant(F(1, 2), ("0", "1"))))
    assert flat.min_r == flat.max_r == flat.min_b == flat.max_b == F(1, 2)


def test_decision_relevance_signal_instance():
    inst = signal_instance()
    assert decision_relevant(inst, MISCLASSIFICATION, ["X"], ["Xp"], "r")
    assert decision_relevant(inst, MISCLASSIFICATION, ["X"], ["Xp"], "b")


def test_irrelevant_noise_column():
    base = binary_score_instance()
    mass = {((x[0], n), y, g): m / 2 for (x, y, g), m in base.mass.items() for n in "01"}
    inst = Instance(("X", "N"), base.type_labels, mass)
    for g in "rb":
        assert not decision_relevant(inst, MISCLASSIFICATION, ["X"], ["N"], g)
    rep = uniform_worsening_report(inst, MISCLASSIFICATION, HALF, ["X"], ["N"], False)
    assert not rep.uniformly_worsens
    assert rep.shared_point is not None
    assert not exclude_Xprime_given_G_predicate(inst, MISCLASSIFICATION, HALF, ["X"], ["N"])


def test_decision_relevance_validation():
    inst = signal_instance()
    with pytest.raises(DomainError):
        decision_relevant(inst, MISCLASSIFICATION, ["X"], ["Z"], "r")
    with pytest.raises(DomainError):
        decision_relevant(inst, MISCLASSIFICATION, ["X"], ["X"], "r")
    with pytest.raises(DomainError):
        decision_relevant(inst, MISCLASSIFICATION, ["X"], ["Xp"], "g3")


def test_signal_instance_reports():
    inst = signal_instance()
    rep = uniform_worsening_report(inst, MISCLASSIFICATION, HALF, ["X"], ["Xp"], True)
    assert rep.uniformly_worsens and rep.witness == ((F(1, 2), F(1, 2)), (F(2, 5), F(2, 5)))
    rep = uniform_worsening_report(inst, MISCLASSIFICATION, HALF, ["X", "Xp"], ["G"], False)
    assert not rep.uniformly_worsens and rep.shared_point == (0, F(2, 5))
    assert exclude_Xprime_given_G_predicate(inst, MISCLASSIFICATION, HALF, ["X"], ["Xp"])


def test_exclude_group_predicates():
    split = split_signal_instance(random.Random(0))
    assert exclude_G_predicate(split, MISCLASSIFICATION, HALF, ["X1", "X2"])
    skewed = binary_score_instance()
    assert not exclude_G_predicate(skewed, MISCLASSIFICATION, HALF, ["X"])
    rev = reveals_group_instance(random.Random(1), max_types=2)
    assert not exclude_G_predicate(rev, MISCLASSIFICATION, HALF, ["X1"])


def test_precondition_outside_halfspace():
    # an agent who cares only about group b cannot be brought to r's optimum
    found = False
    for seed in range(200):
        inst = random_binary_instance(random.Random(seed), sizes=(2, 2))
        try:
            exclude_G_predicate(inst, MISCLASSIFICATION, AgentWeights(0, 1), ["X1", "X2"])
        except PreconditionError:
            found = True
            break
    assert found


def test_adversarial_agents_rejected():
    with pytest.raises(UnsupportedModeError):
        uniform_worsening_report(signal_instance(), MISCLASSIFICATION, AgentWeights(1, F(-1, 2)), ["X"], ["Xp"])


def test_adding_group_keeps_extreme_errors():
    for seed in range(40):
        inst = random_binary_instance(random.Random(seed), sizes=(2, 3), zero_prob=0.1)
        a = extreme_group_errors(feasible_set(project(inst, ["X1"]), MISCLASSIFICATION))
        b = extreme_group_errors(feasible_set(project(inst, ["X1"], True), MISCLASSIFICATION))
        assert (a.min_r, a.min_b) == (b.min_r, b.min_b)


def test_group_relabeling_invariance():
    for seed in range(30):
        inst = random_binary_instance(random.Random(seed), sizes=(2, 2))
        a = uniform_worsening_report(inst, MISCLASSIFICATION, HALF, ["X1"], ["X2"], True).uniformly_worsens
        b = uniform_worsening_report(inst.swap_groups(), MISCLASSIFICATION, HALF, ["X1"], ["X2"],
                                     True).uniformly_worsens
        assert a == b
