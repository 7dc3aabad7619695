"""Feasible error sets, group and fairness optimal points, classification and the FA frontier."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Union

from .dist import Algorithm, Instance, Loss, group_error
from .errors import ConsistencyError, DomainError
from .geometry import (ConvexPolygon, HalfPlane, Point2, Polyline, WeightedSegment, clip, decompose,
                       dot, lower_boundary, on_segment, same_point, support_argmin, zonotope_walk)
from .numeric import sign, tol_for_points


class Kind(str, enum.Enum):
    GROUP_BALANCED = "group-balanced"
    R_SKEWED = "r-skewed"
    B_SKEWED = "b-skewed"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class FeasibleSet:
    """Polygon of achievable error pairs, with a deterministic algorithm for every vertex."""

    polygon: ConvexPolygon
    vertex_algorithms: Mapping
    instance: Instance
    loss: Loss

    @property
    def tol(self):
        return self.instance.tol


@dataclass(frozen=True)
class SpecialPoints:
    r_point: Point2
    b_point: Point2
    f_point: Point2
    r_algorithm: Optional[Algorithm] = None
    b_algorithm: Optional[Algorithm] = None
    f_algorithm: Optional[Algorithm] = None


@dataclass(frozen=True)
class Classification:
    kind: Kind
    strict_balance: bool


@dataclass(frozen=True)
class SimpleWeights:
    """Utility alpha_r e_r + alpha_b e_b + alpha_f |e_r - e_b| (to be maximized)."""

    alpha_r: object
    alpha_b: object
    alpha_f: object

    def __post_init__(self):
        if not (self.alpha_r < 0 and self.alpha_b < 0 and self.alpha_f <= 0):
            raise DomainError("simple weights need alpha_r, alpha_b < 0 and alpha_f <= 0")

    def utility(self, e):
        return self.alpha_r * e[0] + self.alpha_b * e[1] + self.alpha_f * abs(e[0] - e[1])


# -- feasible set -----------------------------------------------------------

def error_segments(instance: Instance, loss: Loss) -> list:
    """Per-realization (x, WeightedSegment): conditional error pairs for d=1 and d=0, weight P(x)."""
    p = instance.group_probs
    out = []
    for x, cells in instance.cells_by_x.items():
        px = instance.x_probs[x]
        ends = []
        for d in (1, 0):
            acc = {"r": instance.zero(), "b": instance.zero()}
            for (y, g), m in cells.items():
                acc[g] += m * loss.value(d, y, g)
            ends.append(Point2(acc["r"] / (p["r"] * px), acc["b"] / (p["b"] * px)))
        out.append((x, WeightedSegment(ends[0], ends[1], px)))
    return out


def feasible_set(instance: Instance, loss: Loss) -> FeasibleSet:
    loss.check_types(instance.type_labels)
    segs = error_segments(instance, loss)
    walk = zonotope_walk([s for _, s in segs])
    algs = {}
    one, zero = instance.one(), instance.zero()
    for v, inc in zip(walk.vertices, walk.included):
        assign = {}
        for i, (x, _) in enumerate(segs):
            k = walk.group_of[i]
            on = k is not None and k in inc
            assign[x] = one if on != walk.flipped[i] else zero
        algs[v] = Algorithm(assign)
    return FeasibleSet(ConvexPolygon(tuple(walk.vertices)), algs, instance, loss)


def mixture_algorithm(fs: FeasibleSet, target) -> Algorithm:
    """Randomized algorithm achieving ``target`` by mixing at most three vertex algorithms."""
    parts = decompose(fs.polygon, target)
    vs = fs.polygon.vertices
    assign = {}
    for x in fs.instance.realizations:
        assign[x] = sum((w * fs.vertex_algorithms[vs[i]](x) for i, w in parts), fs.instance.zero())
    if fs.instance.exact:
        return Algorithm(assign)
    return Algorithm({x: min(max(a, 0.0), 1.0) for x, a in assign.items()})


# -- special points -------------------------------------------------------------

def _greedy_group_optimal(fs: FeasibleSet, g: str) -> Algorithm:
    # Per realization, pick the decision with the lower conditional loss for g,
    # and break ties in favour of the other group.
    k, ko = (0, 1) if g == "r" else (1, 0)
    tol = fs.tol
    segs = error_segments(fs.instance, fs.loss)
    assign = {}
    for x, s in segs:
        e1, e0 = s.endpoint_d1, s.endpoint_d0
        c = sign(e1[k] - e0[k], tol)
        if c == 0:
            c = sign(e1[ko] - e0[ko], tol)
        assign[x] = fs.instance.one() if c < 0 else fs.instance.zero()
    return Algorithm(assign)


def fair_point(polygon: ConvexPolygon) -> Point2:
    """Minimizer of |u - v|, ties broken toward lower errors."""
    tol = polygon.tol
    band = clip(clip(polygon, HalfPlane((1, -1), 0)), HalfPlane((-1, 1), 0))
    if not band.is_empty:
        f = support_argmin(band, (1, 0), (0, 1))
        f2 = support_argmin(band, (0, 1), (1, 0))
        if not same_point(f, f2, tol):
            raise ConsistencyError("fair point tie-break depends on the group")
        return f
    if all(p[0] < p[1] for p in polygon.vertices):
        obj = (-1, 1)
    else:
        obj = (1, -1)
    f = support_argmin(polygon, obj, (1, 0))
    f2 = support_argmin(polygon, obj, (0, 1))
    if not same_point(f, f2, tol):
        raise ConsistencyError("fair point tie-break depends on the group")
    return f


def polygon_special_points(polygon: ConvexPolygon) -> SpecialPoints:
    """Group and fairness optimal points of a bare polygon (no algorithms attached)."""
    if polygon.is_empty:
        raise DomainError("special points of an empty set")
    r = support_argmin(polygon, (1, 0), (0, 1))
    b = support_argmin(polygon, (0, 1), (1, 0))
    return SpecialPoints(r, b, fair_point(polygon))


def special_points(fs: FeasibleSet) -> SpecialPoints:
    poly = fs.polygon
    tol = fs.tol
    ra = _greedy_group_optimal(fs, "r")
    ba = _greedy_group_optimal(fs, "b")
    r = Point2(*group_error(fs.instance, fs.loss, ra))
    b = Point2(*group_error(fs.instance, fs.loss, ba))
    geo = polygon_special_points(poly)
    check_tol = tol * 10 if tol else 0
    if not same_point(r, geo.r_point, check_tol) or not same_point(b, geo.b_point, check_tol):
        raise ConsistencyError(f"greedy group optima {r}, {b} disagree with support queries "
                               f"{geo.r_point}, {geo.b_point}")
    # report the polygon's own vertices so downstream lookups are exact
    r, b, f = geo.r_point, geo.b_point, geo.f_point
    return SpecialPoints(r, b, f, ra, ba, mixture_algorithm(fs, f))


def classify(sp: SpecialPoints) -> Classification:
    tol = tol_for_points([sp.r_point, sp.b_point])
    r, b = sp.r_point, sp.b_point
    d_r = sign(r[0] - r[1], tol)  # sign of e_r - e_b at r_X
    d_b = sign(b[0] - b[1], tol)
    if d_r < 0 and d_b <= 0:
        kind = Kind.R_SKEWED
    elif d_b > 0 and d_r >= 0:
        kind = Kind.B_SKEWED
    else:
        kind = Kind.GROUP_BALANCED
    return Classification(kind, d_r < 0 and d_b > 0)


def frontier_endpoints(sp: SpecialPoints, cls: Classification) -> tuple:
    if cls.kind is Kind.GROUP_BALANCED:
        return sp.r_point, sp.b_point
    if cls.kind is Kind.R_SKEWED:
        return sp.r_point, sp.f_point
    return sp.b_point, sp.f_point


def polygon_frontier(polygon: ConvexPolygon, sp: SpecialPoints | None = None) -> Polyline:
    """FA frontier of an arbitrary nonempty convex polygon."""
    if polygon.is_empty:
        return Polyline(())
    sp = sp or polygon_special_points(polygon)
    p, q = frontier_endpoints(sp, classify(sp))
    return lower_boundary(polygon, p, q).left_to_right()


def fa_frontier(fs: FeasibleSet) -> Polyline:
    return polygon_frontier(fs.polygon, special_points(fs))


def fa_dominates(e, e2, tol=None) -> bool:
    """True when e FA-dominates e2."""
    if tol is None:
        tol = tol_for_points([e, e2])
    gap, gap2 = abs(e[0] - e[1]), abs(e2[0] - e2[1])
    diffs = (e2[0] - e[0], e2[1] - e[1], gap2 - gap)
    if any(d < -tol for d in diffs):
        return False
    return any(d > tol for d in diffs)


# -- preferences ------------------------------------------------------------

@dataclass(frozen=True)
class Utilitarian:
    p_r: object
    p_b: object

    def key(self, e):
        return (-(self.p_r * e[0] + self.p_b * e[1]), -abs(e[0] - e[1]))


@dataclass(frozen=True)
class SocialWelfare:
    alpha_r: object
    alpha_b: object

    def key(self, e):
        return (-(self.alpha_r * e[0] + self.alpha_b * e[1]), -abs(e[0] - e[1]))


@dataclass(frozen=True)
class Rawlsian:
    def key(self, e):
        return (-max(e[0], e[1]), -abs(e[0] - e[1]), -(e[0] + e[1]))


@dataclass(frozen=True)
class Egalitarian:
    p_r: object = Fraction(1, 2)
    p_b: object = Fraction(1, 2)

    def key(self, e):
        return (-abs(e[0] - e[1]), -(self.p_r * e[0] + self.p_b * e[1]))


@dataclass(frozen=True)
class Constrained:
    lam: object
    p_r: object = Fraction(1, 2)
    p_b: object = Fraction(1, 2)

    def key(self, e):
        wu = -(self.p_r * e[0] + self.p_b * e[1])
        we = -abs(e[0] - e[1])
        return ((1 - self.lam) * wu + self.lam * we, we, wu)


Preference = Union[Utilitarian, SocialWelfare, Rawlsian, Egalitarian, Constrained]


def _diagonal_crossings(points) -> list:
    out = []
    for a, b in zip(points[:-1], points[1:]):
        da, db = a[0] - a[1], b[0] - b[1]
        if (da < 0 < db) or (db < 0 < da):
            t = da / (da - db)
            out.append(Point2(a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t))
    return out


def preference_optimum(frontier: Polyline, preference: Preference) -> Point2:
    """Frontier point maximizing the preference's (concave, piecewise-linear) utility."""
    if frontier.is_empty:
        raise DomainError("empty frontier")
    pts = list(frontier.points)
    cands = pts + _diagonal_crossings(pts)
    tol = tol_for_points(cands)
    if not tol:
        return max(cands, key=preference.key)
    best = cands[0]
    for c in cands[1:]:
        kc, kb = preference.key(c), preference.key(best)
        for a, b in zip(kc, kb):
            if a > b + tol:
                best = c
                break
            if a < b - tol:
                break
    return best


# -- simple preference witness ----------------------------------------------

def _utility_max(poly: ConvexPolygon, w: SimpleWeights):
    pts = list(poly.vertices)
    closed = pts + pts[:1] if len(pts) > 2 else pts
    cands = pts + _diagonal_crossings(closed)
    return max(w.utility(p) for p in cands)


def simple_preference_witness(fs: FeasibleSet, frontier_point) -> SimpleWeights:
    """Weights of a simple FA preference maximized over the feasible set at ``frontier_point``."""
    poly = fs.polygon
    e = Point2(*frontier_point)
    front = fa_frontier(fs)
    tol = tol_for_points(list(poly.vertices) + [e])
    if not front.contains(e, tol):
        raise DomainError(f"{tuple(e)} is not on the FA frontier")
    sp = special_points(fs)
    cands: list = []
    if same_point(e, sp.r_point, tol) and same_point(e, sp.b_point, tol):
        cands.append((-1, -1, 0))
    for a, b in front.segments():
        if a == b or not on_segment(e, a, b, tol):
            continue
        d = (b[0] - a[0], b[1] - a[1])
        for n in ((d[1], -d[0]), (-d[1], d[0])):
            if not all(dot(n, v) <= dot(n, e) + tol for v in poly.vertices):
                continue  # not an outward normal
            br, bb = n
            if br < 0 and bb < 0:
                cands.append((br, bb, 0))
            elif e[0] <= e[1] and br >= 0 > bb and -br > bb:
                af = (bb - br) / 2
                cands.append((br + af, bb - af, af))
            elif e[0] >= e[1] and bb >= 0 > br and -bb > br:
                af = (br - bb) / 2
                cands.append((br - af, bb + af, af))
    for c in cands:
        try:
            w = SimpleWeights(*c)
        except DomainError:
            continue
        if w.utility(e) >= _utility_max(poly, w) - tol:
            return w
    raise ConsistencyError(f"no simple-preference witness found for {tuple(e)}")
