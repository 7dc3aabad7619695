"""Exact planar convex geometry on error pairs (u, v) = (e_r, e_b).

Every predicate works on ``Fraction`` coordinates without rounding. When any
coordinate is a float the predicates switch to an absolute tolerance of 1e-9.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, NamedTuple, Sequence

from .errors import ContainmentError, DomainError
from .numeric import Number, sign, tol_for_points


class Point2(NamedTuple):
    u: Number
    v: Number


def _sub(a, b) -> Point2:
    return Point2(a[0] - b[0], a[1] - b[1])


def _add(a, b) -> Point2:
    return Point2(a[0] + b[0], a[1] + b[1])


def _scale(a, s) -> Point2:
    return Point2(a[0] * s, a[1] * s)


def cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def orient(o, a, b):
    """Twice the signed area of triangle (o, a, b); positive when counterclockwise."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def same_point(a, b, tol=0) -> bool:
    if tol == 0:
        return a[0] == b[0] and a[1] == b[1]
    return abs(a[0] - b[0]) <= tol and abs(a[1] - b[1]) <= tol


def on_segment(p, a, b, tol=0) -> bool:
    """Closed segment membership."""
    if sign(orient(a, b, p), tol) != 0:
        return False
    return (min(a[0], b[0]) - tol <= p[0] <= max(a[0], b[0]) + tol
            and min(a[1], b[1]) - tol <= p[1] <= max(a[1], b[1]) + tol)


@dataclass(frozen=True)
class WeightedSegment:
    endpoint_d1: Point2
    endpoint_d0: Point2
    weight: Number

    def __post_init__(self):
        if self.weight <= 0:
            raise DomainError("segment weight must be positive")

    @property
    def vector(self) -> Point2:
        return _scale(_sub(self.endpoint_d1, self.endpoint_d0), self.weight)


@dataclass(frozen=True)
class HalfPlane:
    """The set {p : normal . p <= offset}."""

    normal: tuple
    offset: Number

    def __post_init__(self):
        if self.normal[0] == 0 and self.normal[1] == 0:
            raise DomainError("halfplane normal must be nonzero")

    def value(self, p):
        return self.normal[0] * p[0] + self.normal[1] * p[1] - self.offset

    def contains(self, p, tol=None) -> bool:
        if tol is None:
            tol = tol_for_points([p, self.normal, (self.offset, 0)])
        return self.value(p) <= tol


@dataclass(frozen=True)
class ConvexPolygon:
    """Counterclockwise, strictly convex vertex list.

    One vertex is a point, two are a segment and zero is the empty polygon.
    Canonical form starts at the lexicographically smallest vertex, so two
    polygons are equal exactly when their vertex tuples are.
    """

    vertices: tuple = ()

    @classmethod
    def from_points(cls, points: Iterable) -> "ConvexPolygon":
        return cls(tuple(convex_hull(points)))

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def __len__(self):
        return len(self.vertices)

    @property
    def tol(self):
        return tol_for_points(self.vertices)

    def edges(self):
        vs = self.vertices
        n = len(vs)
        if n < 2:
            return []
        if n == 2:
            return [(vs[0], vs[1])]
        return [(vs[i], vs[(i + 1) % n]) for i in range(n)]

    def contains(self, p, tol=None) -> bool:
        vs = self.vertices
        if tol is None:
            tol = tol_for_points(list(vs) + [p])
        if not vs:
            return False
        if len(vs) == 1:
            return same_point(vs[0], p, tol)
        if len(vs) == 2:
            return on_segment(p, vs[0], vs[1], tol)
        return all(orient(a, b, p) >= -tol for a, b in self.edges())

    def on_boundary(self, p, tol=None) -> bool:
        if tol is None:
            tol = tol_for_points(list(self.vertices) + [p])
        if len(self.vertices) <= 2:
            return self.contains(p, tol)
        return any(on_segment(p, a, b, tol) for a, b in self.edges())

    def bounds(self):
        us = [p[0] for p in self.vertices]
        vs = [p[1] for p in self.vertices]
        return min(us), max(us), min(vs), max(vs)


EMPTY = ConvexPolygon(())


@dataclass(frozen=True)
class Polyline:
    points: tuple = ()

    def __post_init__(self):
        pts = []
        tol = tol_for_points(self.points)
        for p in self.points:
            p = Point2(p[0], p[1])
            if not pts or not same_point(pts[-1], p, tol):
                pts.append(p)
        object.__setattr__(self, "points", tuple(pts))

    @property
    def is_empty(self) -> bool:
        return not self.points

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def segments(self):
        pts = self.points
        if len(pts) == 1:
            return [(pts[0], pts[0])]
        return list(zip(pts[:-1], pts[1:]))

    def contains(self, p, tol=None) -> bool:
        if tol is None:
            tol = tol_for_points(list(self.points) + [p])
        return any(on_segment(p, a, b, tol) for a, b in self.segments())

    def reversed(self) -> "Polyline":
        return Polyline(self.points[::-1])

    def left_to_right(self) -> "Polyline":
        """Orient so the first point has the smaller (e_r, e_b)."""
        if len(self.points) > 1 and tuple(self.points[-1]) < tuple(self.points[0]):
            return self.reversed()
        return self

    def simplified(self) -> "Polyline":
        """Drop interior points collinear with their neighbours."""
        pts = list(self.points)
        tol = tol_for_points(pts)
        out: list = []
        for p in pts:
            while len(out) >= 2 and sign(orient(out[-2], out[-1], p), tol) == 0 \
                    and dot(_sub(out[-1], out[-2]), _sub(p, out[-1])) > 0:
                out.pop()
            out.append(p)
        return Polyline(tuple(out))


# -- hulls ----------------------------------------------------------------

def convex_hull(points: Iterable) -> list:
    """Monotone-chain hull: strictly convex, CCW, starting at the smallest (u, v)."""
    pts = sorted({Point2(p[0], p[1]) for p in points})
    tol = tol_for_points(pts)
    if tol:
        dedup: list = []
        for p in pts:
            if not dedup or not same_point(dedup[-1], p, tol):
                dedup.append(p)
        pts = dedup
    if len(pts) <= 1:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and orient(lower[-2], lower[-1], p) <= tol:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and orient(upper[-2], upper[-1], p) <= tol:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and same_point(hull[0], hull[1], tol):
        return hull[:1]
    return hull


def _canonical(vertices: Sequence) -> tuple:
    if not vertices:
        return ()
    i = min(range(len(vertices)), key=lambda k: tuple(vertices[k]))
    return tuple(vertices[i:]) + tuple(vertices[:i])


# -- zonotopes ------------------------------------------------------------

@dataclass
class ZonotopeWalk:
    """Vertices of a zonotope with, for each vertex, which generator groups are switched on."""

    vertices: list
    included: list  # per vertex: frozenset of group indices
    group_of: list  # per input segment: group index, or None for zero generators
    flipped: list  # per input segment: True when the d1 endpoint sits in the base point


def zonotope_walk(segments: Sequence[WeightedSegment]) -> ZonotopeWalk:
    if not segments:
        raise DomainError("zonotope needs at least one segment")
    tol = tol_for_points([p for s in segments for p in (s.endpoint_d1, s.endpoint_d0)] + [(s.weight, 0) for s in segments])
    base = Point2(0 * segments[0].weight, 0 * segments[0].weight)
    gens = []
    flipped = []
    for i, s in enumerate(segments):
        base = _add(base, _scale(s.endpoint_d0, s.weight))
        g = s.vector
        flip = False
        if sign(g[1], tol) < 0 or (sign(g[1], tol) == 0 and g[0] < 0):
            base = _add(base, g)
            g = Point2(-g[0], -g[1])
            flip = True
        flipped.append(flip)
        if sign(g[0], tol) == 0 and sign(g[1], tol) == 0:
            continue
        gens.append((g, i))

    def cmp(a, b):
        return -sign(cross(a[0], b[0]), tol)

    gens.sort(key=cmp_to_key(cmp))
    groups: list = []  # (vector, [segment indices])
    for g, i in gens:
        if groups and sign(cross(groups[-1][0], g), tol) == 0:
            groups[-1] = (_add(groups[-1][0], g), groups[-1][1] + [i])
        else:
            groups.append((g, [i]))
    group_of: list = [None] * len(segments)
    for k, (_, idx) in enumerate(groups):
        for i in idx:
            group_of[i] = k
    k = len(groups)
    verts = [base]
    inc = [frozenset()]
    cur = base
    for j in range(k):
        cur = _add(cur, groups[j][0])
        verts.append(cur)
        inc.append(frozenset(range(j + 1)))
    for j in range(k - 1):
        cur = _sub(cur, groups[j][0])
        verts.append(cur)
        inc.append(frozenset(range(j + 1, k)))
    # rotate to canonical start
    order = sorted(range(len(verts)), key=lambda t: tuple(verts[t]))
    s0 = order[0]
    verts = verts[s0:] + verts[:s0]
    inc = inc[s0:] + inc[:s0]
    return ZonotopeWalk(verts, inc, group_of, flipped)


def zonotope(segments: Sequence[WeightedSegment]) -> ConvexPolygon:
    """Minkowski sum of the weighted segments."""
    return ConvexPolygon(tuple(zonotope_walk(segments).vertices))


# -- clipping -------------------------------------------------------------

def clip(polygon: ConvexPolygon, halfplane: HalfPlane) -> ConvexPolygon:
    """Intersection of a convex polygon with a halfplane (may be EMPTY)."""
    vs = polygon.vertices
    if not vs:
        return EMPTY
    tol = tol_for_points(list(vs) + [halfplane.normal, (halfplane.offset, 0)])
    vals = [halfplane.value(p) for p in vs]
    if all(s <= tol for s in vals):
        return polygon
    if all(s > tol for s in vals):
        return EMPTY
    out = []
    n = len(vs)
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        sa, sb = vals[i], vals[(i + 1) % n]
        if sa <= tol:
            out.append(a)
        if (sa < -tol and sb > tol) or (sa > tol and sb < -tol):
            t = sa / (sa - sb)
            out.append(Point2(a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t))
    return ConvexPolygon.from_points(out)


def clip_polyline(polyline: Polyline, halfplane: HalfPlane) -> list:
    """Pieces of a polyline inside a halfplane, as a list of Polylines."""
    pts = polyline.points
    if not pts:
        return []
    tol = tol_for_points(list(pts) + [halfplane.normal, (halfplane.offset, 0)])
    if len(pts) == 1:
        return [polyline] if halfplane.value(pts[0]) <= tol else []
    pieces: list = []
    cur: list = []
    for a, b in zip(pts[:-1], pts[1:]):
        sa, sb = halfplane.value(a), halfplane.value(b)
        a_in, b_in = sa <= tol, sb <= tol
        if a_in and not cur:
            cur = [a]
        if a_in and b_in:
            cur.append(b)
        elif a_in and not b_in:
            if sa < -tol:
                t = sa / (sa - sb)
                cur.append(Point2(a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t))
            pieces.append(cur)
            cur = []
        elif not a_in and b_in:
            if sb < -tol:
                t = sa / (sa - sb)
                cur = [Point2(a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t), b]
            else:
                cur = [b]
    if cur:
        pieces.append(cur)
    return [Polyline(tuple(p)) for p in pieces]


# -- queries --------------------------------------------------------------

def support_argmin(polygon: ConvexPolygon, objective, tiebreak=(0, 0)) -> Point2:
    """Vertex minimizing objective . p, ties broken by minimizing tiebreak . p."""
    vs = polygon.vertices
    if not vs:
        raise DomainError("support query on an empty polygon")
    tol = tol_for_points(vs)
    best_val = min(dot(objective, p) for p in vs)
    cands = [p for p in vs if dot(objective, p) <= best_val + tol]
    return min(cands, key=lambda p: (dot(tiebreak, p), tuple(p)))


def _insert_on_boundary(vertices: list, pts: Sequence, tol) -> tuple:
    """Cycle with the given boundary points spliced in; returns (cycle, indices)."""
    cyc = list(vertices)
    n = len(cyc)
    extra: dict = {i: [] for i in range(n)}
    found = []
    for p in pts:
        hit = None
        for i in range(n):
            if same_point(cyc[i], p, tol):
                hit = ("v", i)
                break
        if hit is None:
            for i in range(n):
                a, b = cyc[i], cyc[(i + 1) % n]
                if on_segment(p, a, b, tol):
                    hit = ("e", i)
                    break
        if hit is None:
            raise DomainError(f"point {tuple(p)} is not on the polygon boundary")
        found.append(hit)
        if hit[0] == "e":
            extra[hit[1]].append(p)
    out: list = []
    for i in range(n):
        out.append(cyc[i])
        a = cyc[i]
        for p in sorted(extra[i], key=lambda p: dot(_sub(p, a), _sub(cyc[(i + 1) % n], a))):
            if not same_point(out[-1], p, tol):
                out.append(p)
    idx = []
    for p in pts:
        idx.append(next(k for k, q in enumerate(out) if same_point(q, p, tol)))
    return out, idx


def lower_boundary(polygon: ConvexPolygon, p, q) -> Polyline:
    """Boundary path from p to q on the side of chord pq facing low errors.

    The low side is the one holding a vertex minimizing u + v strictly off the
    chord line. When no such vertex exists the side is fixed by the direction
    (-1, -1), or (0, -1) for chords parallel to the diagonal. A polygon lying on
    the chord yields the chord itself.
    """
    p = Point2(p[0], p[1])
    q = Point2(q[0], q[1])
    vs = list(polygon.vertices)
    tol = tol_for_points(vs + [p, q])
    if not polygon.on_boundary(p, tol) or not polygon.on_boundary(q, tol):
        raise DomainError("lower_boundary endpoints must lie on the polygon boundary")
    if same_point(p, q, tol):
        return Polyline((p,))
    if len(vs) <= 2:
        return Polyline((p, q))
    cyc, (ip, iq) = _insert_on_boundary(vs, [p, q], tol)
    n = len(cyc)
    fwd = [cyc[(ip + k) % n] for k in range((iq - ip) % n + 1)]
    bwd = [cyc[(ip - k) % n] for k in range((ip - iq) % n + 1)]
    chord = _sub(q, p)

    def side(x):
        return sign(cross(chord, _sub(x, p)), tol)

    low = min(dot((1, 1), x) for x in vs)

    def holds_min(arc):
        return any(side(x) != 0 and dot((1, 1), x) <= low + tol for x in arc[1:-1])

    fm, bm = holds_min(fwd), holds_min(bwd)
    if fm != bm:
        arc = fwd if fm else bwd
    else:
        s = sign(cross(chord, (-1, -1)), tol)
        if s == 0:
            s = sign(cross(chord, (0, -1)), tol)
        arc = None
        for cand in (fwd, bwd):
            sides = {side(x) for x in cand[1:-1]}
            if s in sides and -s not in sides:
                arc = cand
                break
        if arc is None:
            arc = fwd if all(side(x) == 0 for x in fwd[1:-1]) else bwd
    return Polyline(tuple(arc))


def _segments_intersect(a, b, c, d, tol) -> bool:
    o1 = sign(orient(a, b, c), tol)
    o2 = sign(orient(a, b, d), tol)
    o3 = sign(orient(c, d, a), tol)
    o4 = sign(orient(c, d, b), tol)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (on_segment(c, a, b, tol) or on_segment(d, a, b, tol)
            or on_segment(a, c, d, tol) or on_segment(b, c, d, tol))


def polylines_intersect(a: Polyline, b: Polyline) -> bool:
    """Closed point-set intersection test (shared endpoints count)."""
    if a.is_empty or b.is_empty:
        return False
    tol = tol_for_points(list(a.points) + list(b.points))
    return any(_segments_intersect(p, q, r, s, tol) for p, q in a.segments() for r, s in b.segments())


def common_point(a: Polyline, b: Polyline):
    """Some point shared by two polylines, or None."""
    tol = tol_for_points(list(a.points) + list(b.points))
    for p, q in a.segments():
        for r, s in b.segments():
            if not _segments_intersect(p, q, r, s, tol):
                continue
            for x in (p, q, r, s):
                if on_segment(x, p, q, tol) and on_segment(x, r, s, tol):
                    return Point2(*x)
            d = cross(_sub(q, p), _sub(s, r))
            t = cross(_sub(r, p), _sub(s, r)) / d
            return Point2(p[0] + (q[0] - p[0]) * t, p[1] + (q[1] - p[1]) * t)
    return None


def decompose(polygon: ConvexPolygon, target) -> list:
    """Write target as a convex combination of at most three polygon vertices."""
    vs = polygon.vertices
    t = Point2(target[0], target[1])
    tol = tol_for_points(list(vs) + [t])
    if not polygon.contains(t, tol):
        raise ContainmentError(f"target {tuple(t)} is outside the polygon")
    for i, v in enumerate(vs):
        if same_point(v, t, tol):
            return [(i, 1 + 0 * t[0])]
    if len(vs) == 2:
        a, b = vs
        d = _sub(b, a)
        k = 0 if abs(d[0]) >= abs(d[1]) else 1
        lam = (t[k] - a[k]) / d[k]
        return [(i, w) for i, w in ((0, 1 - lam), (1, lam)) if w != 0]
    v0 = vs[0]
    for i in range(1, len(vs) - 1):
        a, b = vs[i], vs[i + 1]
        area = orient(v0, a, b)
        l0 = orient(t, a, b) / area
        l1 = orient(v0, t, b) / area
        l2 = orient(v0, a, t) / area
        if l0 >= -tol and l1 >= -tol and l2 >= -tol:
            ws = [(0, l0), (i, l1), (i + 1, l2)]
            if tol:
                ws = [(j, max(w, 0.0)) for j, w in ws]
                s = sum(w for _, w in ws)
                ws = [(j, w / s) for j, w in ws]
            return [(j, w) for j, w in ws if w != 0]
    raise ContainmentError(f"target {tuple(t)} not located in any fan triangle")


def sample_boundary(polygon: ConvexPolygon, per_edge: int) -> list:
    """Vertices plus ``per_edge`` evenly spaced interior points on every edge."""
    out = []
    for a, b in polygon.edges() or [(polygon.vertices[0], polygon.vertices[0])]:
        for k in range(per_edge + 1):
            lam = Fraction(k, per_edge + 1)
            out.append(Point2(a[0] + (b[0] - a[0]) * lam, a[1] + (b[1] - a[1]) * lam))
    if len(polygon.vertices) == 2:
        out.append(polygon.vertices[1])
    return out


def sample_polyline(polyline: Polyline, per_edge: int) -> list:
    pts = polyline.points
    if len(pts) <= 1:
        return list(pts)
    out = []
    for a, b in zip(pts[:-1], pts[1:]):
        for k in range(per_edge + 1):
            lam = Fraction(k, per_edge + 1)
            out.append(Point2(a[0] + (b[0] - a[0]) * lam, a[1] + (b[1] - a[1]) * lam))
    out.append(pts[-1])
    return out
