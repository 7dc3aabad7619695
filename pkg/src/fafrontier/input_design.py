"""Designing the agent's input: obedience, the halfplane H and input-design frontiers.

An agent with weights (alpha_r, alpha_b) sees a garbled signal of the covariates
and picks the decision minimizing alpha_r e_r + alpha_b e_b given what it saw.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .dist import Algorithm, ErrorPair, Instance, Loss, group_error
from .errors import ConsistencyError, DomainError, InfeasibilityError, UnsupportedModeError
from .frontier import (FeasibleSet, fa_frontier, classify, Kind, mixture_algorithm, polygon_frontier,
                       special_points)
from .geometry import ConvexPolygon, HalfPlane, Point2, Polyline, clip, clip_polyline, same_point
from .numeric import format_number, tol_for, tol_for_points


@dataclass(frozen=True)
class AgentWeights:
    alpha_r: object
    alpha_b: object

    def __post_init__(self):
        if self.alpha_r == 0 and self.alpha_b == 0:
            raise DomainError("agent weights cannot both be zero")
        if self.alpha_r < 0 and self.alpha_b < 0:
            raise DomainError("at most one agent weight may be negative")

    @property
    def adversarial(self) -> bool:
        return self.alpha_r < 0 or self.alpha_b < 0

    def weight(self, g: str):
        return self.alpha_r if g == "r" else self.alpha_b

    def payoff(self, e):
        return self.alpha_r * e[0] + self.alpha_b * e[1]


@dataclass(frozen=True)
class Garbling:
    """Stochastic map from realizations to signals, optionally with a recommended decision per signal."""

    signal_labels: tuple
    kernel: Mapping  # x -> {signal: probability}
    recommendation: Optional[Mapping] = None

    def __post_init__(self):
        for x, row in self.kernel.items():
            if any(s not in self.signal_labels for s in row):
                raise DomainError(f"unknown signal in kernel row {x}")
            tot = sum(row.values())
            if abs(tot - 1) > tol_for(row.values()):
                raise DomainError(f"kernel row {x} sums to {tot}")


@dataclass(frozen=True)
class ObedienceCertificate:
    induced_errors: ErrorPair
    agent_payoff: object
    no_info_payoff: object
    obedient: bool
    per_signal_slack: Mapping = field(default_factory=dict)


def no_info_payoff(instance: Instance, loss: Loss, agent: AgentWeights):
    """Best weighted loss achievable without information, and the halfplane it defines."""
    vals = [agent.payoff(group_error(instance, loss, Algorithm.constant(instance, c)))
            for c in (instance.zero(), instance.one())]
    e0 = min(vals)
    return e0, HalfPlane((agent.alpha_r, agent.alpha_b), e0)


def _halfplane(fs: FeasibleSet, agent: AgentWeights) -> HalfPlane:
    return no_info_payoff(fs.instance, fs.loss, agent)[1]


def input_design_feasible(fs: FeasibleSet, agent: AgentWeights) -> ConvexPolygon:
    return clip(fs.polygon, _halfplane(fs, agent))


def input_design_frontier(fs: FeasibleSet, agent: AgentWeights) -> Polyline:
    h = _halfplane(fs, agent)
    if agent.adversarial:
        poly = clip(fs.polygon, h)
        return polygon_frontier(poly)
    pieces = clip_polyline(fa_frontier(fs), h)
    if not pieces:
        return Polyline(())
    if len(pieces) > 1:
        raise DomainError("frontier meets H in more than one piece")
    return pieces[0]


def frontier_equivalence(fs: FeasibleSet, agent: AgentWeights) -> bool:
    """Whether restricting to implementable points leaves the FA frontier unchanged."""
    if agent.adversarial:
        raise UnsupportedModeError("frontier equivalence needs nonnegative agent weights")
    h = _halfplane(fs, agent)
    sp = special_points(fs)
    kind = classify(sp).kind
    if kind is Kind.GROUP_BALANCED:
        ends = (sp.r_point, sp.b_point)
    elif kind is Kind.R_SKEWED:
        ends = (sp.r_point, sp.f_point)
    else:
        ends = (sp.b_point, sp.f_point)
    verdict = all(h.contains(p) for p in ends)
    full = fa_frontier(fs).simplified()
    restricted = input_design_frontier(fs, agent).simplified()
    tol = tol_for_points(list(full.points) + list(restricted.points))
    same = len(full) == len(restricted) and all(same_point(a, b, tol) for a, b in zip(full, restricted))
    if same != verdict:
        raise ConsistencyError("endpoint membership test disagrees with frontier comparison")
    return verdict


def _weighted_losses(instance: Instance, loss: Loss, agent: AgentWeights, garbling: Garbling):
    """Per signal: the agent's weighted loss of choosing d=0 and d=1."""
    p = instance.group_probs
    out = {t: [instance.zero(), instance.zero()] for t in garbling.signal_labels}
    for x, cells in instance.cells_by_x.items():
        row = garbling.kernel.get(x)
        if row is None:
            raise DomainError(f"garbling undefined at realization {x}")
        for (y, g), m in cells.items():
            wg = m * agent.weight(g) / p[g]
            for t, k in row.items():
                if k:
                    out[t][0] += wg * k * loss.value(0, y, g)
                    out[t][1] += wg * k * loss.value(1, y, g)
    return out


def verify_obedience(instance: Instance, loss: Loss, agent: AgentWeights, garbling: Garbling) -> ObedienceCertificate:
    if garbling.recommendation is None:
        raise DomainError("garbling has no recommendation map")
    rec = garbling.recommendation
    wl = _weighted_losses(instance, loss, agent, garbling)
    slack = {t: wl[t][1 - rec[t]] - wl[t][rec[t]] for t in garbling.signal_labels}
    tol = instance.tol
    obedient = all(s >= -tol for s in slack.values())
    alg = Algorithm({x: sum((k for t, k in row.items() if rec[t] == 1), instance.zero())
                     for x, row in garbling.kernel.items()})
    induced = group_error(instance, loss, alg)
    e0, _ = no_info_payoff(instance, loss, agent)
    return ObedienceCertificate(induced, agent.payoff(induced), e0, obedient, slack)


def best_response(instance: Instance, loss: Loss, agent: AgentWeights, garbling: Garbling) -> Garbling:
    """The same garbling with each signal mapped to the agent's optimal decision (ties go to 1)."""
    wl = _weighted_losses(instance, loss, agent, garbling)
    rec = {t: 1 if wl[t][1] <= wl[t][0] else 0 for t in garbling.signal_labels}
    return Garbling(garbling.signal_labels, garbling.kernel, rec)


def recommendation_garbling(algorithm: Algorithm) -> Garbling:
    kernel = {x: {"1": a, "0": 1 - a} for x, a in algorithm.assign.items()}
    return Garbling(("0", "1"), kernel, {"0": 0, "1": 1})


def construct_garbling(fs: FeasibleSet, target, agent: AgentWeights):
    """Recommendation garbling whose obedient play yields exactly ``target``."""
    t = Point2(*target)
    h = _halfplane(fs, agent)
    where = f"({format_number(t[0])}, {format_number(t[1])})"
    if not fs.polygon.contains(t):
        raise InfeasibilityError(f"target {where} is not a feasible error pair", "feasible set")
    if not h.contains(t):
        raise InfeasibilityError(f"target {where} violates the obedience halfspace H", "obedience halfspace H")
    alg = mixture_algorithm(fs, t)
    garbling = recommendation_garbling(alg)
    cert = verify_obedience(fs.instance, fs.loss, agent, garbling)
    if not cert.obedient or not same_point(cert.induced_errors, t, fs.tol):
        raise ConsistencyError(f"constructed garbling for {where} is not an obedient implementation")
    return garbling, cert
