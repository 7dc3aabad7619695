"""Audits of what happens to the input-design frontier when covariates are withheld."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .dist import GROUP_COLUMN, GROUPS, Instance, Loss, project
from .errors import (ConsistencyError, DegenerateReportError, DomainError, PreconditionError,
                     UnsupportedModeError)
from .frontier import FeasibleSet, Kind, classify, fa_dominates, feasible_set, special_points
from .geometry import (HalfPlane, Point2, Polyline, clip, common_point, polylines_intersect,
                       sample_polyline, support_argmin)
from .input_design import AgentWeights, input_design_frontier, no_info_payoff
from .numeric import tol_for_points

WITNESS_SAMPLES_PER_EDGE = 64


@dataclass(frozen=True)
class ExtremeErrors:
    min_r: object
    max_r: object
    min_b: object
    max_b: object


@dataclass(frozen=True)
class ExclusionReport:
    frontier_without: Polyline
    frontier_with: Polyline
    uniformly_worsens: bool
    witness: Optional[tuple] = None  # (point_without, dominating_point_with) when disjoint
    shared_point: Optional[Point2] = None


def extreme_group_errors(fs: FeasibleSet) -> ExtremeErrors:
    poly = fs.polygon
    return ExtremeErrors(
        support_argmin(poly, (1, 0))[0],
        support_argmin(poly, (-1, 0))[0],
        support_argmin(poly, (0, 1))[1],
        support_argmin(poly, (0, -1))[1],
    )


def _check_names(instance: Instance, names: Sequence[str]) -> None:
    unknown = [n for n in names if n not in instance.covariate_names and n != GROUP_COLUMN]
    if unknown:
        raise DomainError(f"unknown covariate names {unknown}")


def decision_relevant(instance: Instance, loss: Loss, base_names: Sequence[str],
                      extra_names: Sequence[str], g: str) -> bool:
    """Whether the extra covariates flip the uniquely optimal decision for group g.

    True when, for some base realization x, one refinement (x, x') has the unique
    optimum 1 and another (x, x'') has the unique optimum 0, both with positive
    probability in group g.
    """
    if g not in GROUPS:
        raise DomainError(f"unknown group {g!r}")
    _check_names(instance, list(base_names) + list(extra_names))
    if set(base_names) & set(extra_names):
        raise DomainError("base and extra covariates overlap")
    joint = project(instance, list(base_names) + list(extra_names), False)
    base_idx = [i for i, n in enumerate(joint.covariate_names) if n in base_names]
    tol = instance.tol
    seen: dict = {}
    for x, cells in joint.cells_by_x.items():
        gcells = [(y, m) for (y, gg), m in cells.items() if gg == g]
        if not gcells:
            continue
        # unnormalized conditional losses share the positive factor P(x, g)
        diff = sum((m * (loss.value(1, y, g) - loss.value(0, y, g)) for y, m in gcells), instance.zero())
        key = tuple(x[i] for i in base_idx)
        flags = seen.setdefault(key, set())
        if diff < -tol:
            flags.add(1)
        elif diff > tol:
            flags.add(0)
        if flags == {0, 1}:
            return True
    return False


def _dominating_point(poly, e):
    """A point of the polygon's FA frontier dominating e, if any."""
    gap = abs(e[0] - e[1])
    cone = poly
    for hp in (HalfPlane((1, 0), e[0]), HalfPlane((0, 1), e[1]),
               HalfPlane((1, -1), gap), HalfPlane((-1, 1), gap)):
        cone = clip(cone, hp)
    if cone.is_empty:
        return None
    best = support_argmin(cone, (1, 1), (1, -1) if e[0] >= e[1] else (-1, 1))
    return best if fa_dominates(best, e) else None


def uniform_worsening_report(instance: Instance, loss: Loss, agent: AgentWeights,
                             base_names: Sequence[str], extra_names: Sequence[str],
                             include_group_in_base: bool = False,
                             samples_per_edge: int = WITNESS_SAMPLES_PER_EDGE) -> ExclusionReport:
    """Compare input-design frontiers with and without ``extra_names``.

    ``extra_names`` may contain ``G`` to add the group itself.
    """
    if agent.adversarial:
        raise UnsupportedModeError("exclusion audits need nonnegative agent weights")
    _check_names(instance, list(base_names) + list(extra_names))
    inst_without = project(instance, base_names, include_group_in_base)
    inst_with = project(instance, list(base_names) + list(extra_names), include_group_in_base)
    fs_without = feasible_set(inst_without, loss)
    fs_with = feasible_set(inst_with, loss)
    f_without = input_design_frontier(fs_without, agent)
    f_with = input_design_frontier(fs_with, agent)
    if f_without.is_empty or f_with.is_empty:
        raise DegenerateReportError("an input-design frontier is empty")
    if polylines_intersect(f_without, f_with):
        return ExclusionReport(f_without, f_with, False, None, common_point(f_without, f_with))
    _, h = no_info_payoff(inst_with, loss, agent)
    implementable = clip(fs_with.polygon, h)
    tol = tol_for_points(list(f_with.points) + list(f_without.points))
    witness = None
    for e in sample_polyline(f_without, samples_per_edge):
        d = _dominating_point(implementable, e)
        if d is None or not f_with.contains(d, tol * 10 if tol else 0):
            raise ConsistencyError(f"no dominating frontier point for {tuple(e)} despite disjoint frontiers")
        if witness is None:
            witness = (e, d)
    return ExclusionReport(f_without, f_with, True, witness, None)


def exclude_G_predicate(instance: Instance, loss: Loss, agent: AgentWeights, base_names: Sequence[str]) -> bool:
    """Whether adding the group to the base covariates uniformly improves the frontier.

    Requires both group optimal points to be implementable; answers via strict
    group balance and cross-checks against the geometric report.
    """
    if agent.adversarial:
        raise UnsupportedModeError("exclusion audits need nonnegative agent weights")
    inst = project(instance, base_names, False)
    fs = feasible_set(inst, loss)
    sp = special_points(fs)
    _, h = no_info_payoff(inst, loss, agent)
    if not (h.contains(sp.r_point) and h.contains(sp.b_point)):
        raise PreconditionError("group optimal points are not both implementable")
    verdict = classify(sp).strict_balance
    report = uniform_worsening_report(instance, loss, agent, base_names, [GROUP_COLUMN], False)
    if report.uniformly_worsens != verdict:
        raise ConsistencyError("strict-balance verdict disagrees with the frontier comparison")
    return verdict


def exclude_Xprime_given_G_predicate(instance: Instance, loss: Loss, agent: AgentWeights,
                                     base_names: Sequence[str], extra_names: Sequence[str]) -> bool:
    """Whether adding ``extra_names`` to (base, G) uniformly improves the frontier."""
    if agent.adversarial:
        raise UnsupportedModeError("exclusion audits need nonnegative agent weights")
    fs = feasible_set(project(instance, base_names, True), loss)
    kind = classify(special_points(fs)).kind
    if kind is Kind.R_SKEWED:
        verdict = decision_relevant(instance, loss, base_names, extra_names, "b")
    elif kind is Kind.B_SKEWED:
        verdict = decision_relevant(instance, loss, base_names, extra_names, "r")
    else:
        verdict = all(decision_relevant(instance, loss, base_names, extra_names, g) for g in GROUPS)
    report = uniform_worsening_report(instance, loss, agent, base_names, extra_names, True)
    if report.uniformly_worsens != verdict:
        raise ConsistencyError("decision-relevance verdict disagrees with the frontier comparison")
    return verdict
