from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from fafrontier import (Algorithm, ConditioningError, DomainError, Instance, LossMatrix, NormalizationError,
                        conditional_expected_loss, detect_structure, group_error, project)
from fafrontier.dist import GroupLossMatrix
from fafrontier.instances import (MISCLASSIFICATION, binary_score_instance, conditionally_independent_instance,
                                  random_instance, random_loss, reveals_group_instance,
                                  strongly_independent_instance)


def test_binary_score_identity_algorithm():
    inst = binary_score_instance()
    e = group_error(inst, MISCLASSIFICATION, Algorithm({("0",): 0, ("1",): 1}))
    assert e == (F(1, 4), F(1, 3))
    assert e.e_r == F(1, 4)


def test_constant_algorithms_give_base_rates():
    inst = binary_score_instance()
    assert group_error(inst, MISCLASSIFICATION, Algorithm.constant(inst, 0)) == (F(1, 2), F(1, 2))
    assert group_error(inst, MISCLASSIFICATION, Algorithm.constant(inst, 1)) == (F(1, 2), F(1, 2))


def test_normalization_is_checked():
    with pytest.raises(NormalizationError):
        Instance(("X",), ("0", "1"), {(("0",), "0", "r"): F(1, 2), (("0",), "1", "b"): F(2, 5)})


def test_float_normalization_tolerance():
    inst = Instance(("X",), ("0",), {(("0",), "0", "r"): 0.5 + 1e-12, (("0",), "0", "b"): 0.5}, "float")
    assert inst.tol == 1e-9
    with pytest.raises(NormalizationError):
        Instance(("X",), ("0",), {(("0",), "0", "r"): 0.5 + 1e-6, (("0",), "0", "b"): 0.5}, "float")


def test_both_groups_need_mass():
    with pytest.raises(NormalizationError):
        Instance(("X",), ("0",), {(("0",), "0", "r"): F(1)})


def test_bad_group_label():
    with pytest.raises(DomainError):
        Instance(("X",), ("0",), {(("0",), "0", "g3"): F(1, 2), (("0",), "0", "r"): F(1, 2)})


def test_zero_cells_dropped():
    inst = Instance(("X",), ("0", "1"), {(("0",), "0", "r"): F(1, 2), (("1",), "0", "r"): 0,
                                         (("0",), "1", "b"): F(1, 2)})
    assert inst.realizations == (("0",),)


def test_algorithm_range_checked():
    with pytest.raises(DomainError):
        Algorithm({("0",): F(3, 2)})


def test_conditional_expected_loss_and_zero_cell():
    inst = reveals_group_instance(__import__("random").Random(0))
    x_r = next(x for x in inst.realizations if x[0].startswith("r"))
    with pytest.raises(ConditioningError):
        conditional_expected_loss(inst, MISCLASSIFICATION.with_mode(True), x_r, "b", 1)


def test_misclassification_loss_values():
    loss = LossMatrix.misclassification()
    assert [loss.value(d, y) for d in (0, 1) for y in "01"] == [0, 1, 1, 0]


def test_missing_loss_cell():
    loss = LossMatrix({(0, "0"): 0, (1, "0"): 1})
    with pytest.raises(DomainError):
        loss.check_types(["0", "1"])


def test_group_loss_matrix_depends_on_group():
    gl = GroupLossMatrix({(d, y, g): F(d + (g == "r")) for d in (0, 1) for y in "01" for g in "rb"})
    assert gl.value(1, "0", "r") == 2 and gl.value(1, "0", "b") == 1


def test_project_adds_group_column():
    inst = binary_score_instance()
    pg = project(inst, ["X"], include_group=True)
    assert pg.covariate_names == ("X", "G")
    assert all(x[1] == g for (x, y, g) in pg.mass)
    assert project(inst, ["X", "G"]).covariate_names == ("X", "G")
    assert project(inst, [], False).realizations == ((),)


def test_detect_structure_families():
    import random
    rng = random.Random(3)
    assert detect_structure(reveals_group_instance(rng)).reveals_g
    assert detect_structure(conditionally_independent_instance(rng)).conditional_independence
    rep = detect_structure(strongly_independent_instance(rng))
    assert rep.strong_independence and rep.conditional_independence


def test_swap_groups_swaps_errors():
    import random
    rng = random.Random(4)
    inst = random_instance(rng)
    loss = random_loss(rng, inst.type_labels)
    a = Algorithm({x: F(rng.randint(0, 4), 4) for x in inst.realizations})
    e = group_error(inst, loss, a)
    assert group_error(inst.swap_groups(), loss, a) == (e[1], e[0])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_projection_preserves_errors_of_coarse_algorithms(seed):
    import random
    rng = random.Random(seed)
    inst = random_instance(rng, max_realizations=6)
    loss = random_loss(rng, inst.type_labels)
    first = inst.covariate_names[0]
    coarse = project(inst, [first])
    a_coarse = Algorithm({x: F(rng.randint(0, 3), 3) for x in coarse.realizations})
    a_fine = Algorithm({x: a_coarse((x[0],)) for x in inst.realizations})
    assert group_error(coarse, loss, a_coarse) == group_error(inst, loss, a_fine)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_errors_are_affine_in_algorithm(seed):
    import random
    rng = random.Random(seed)
    inst = random_instance(rng)
    loss = random_loss(rng, inst.type_labels, negative=True)
    a = Algorithm({x: F(rng.randint(0, 5), 5) for x in inst.realizations})
    b = Algorithm({x: F(rng.randint(0, 5), 5) for x in inst.realizations})
    lam = F(rng.randint(0, 7), 7)
    ea, eb, em = group_error(inst, loss, a), group_error(inst, loss, b), group_error(inst, loss, a.mix(b, lam))
    assert em == (lam * ea[0] + (1 - lam) * eb[0], lam * ea[1] + (1 - lam) * eb[1])
