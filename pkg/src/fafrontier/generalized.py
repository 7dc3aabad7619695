"""Fairness measured by a general linear functional h, by |phi(e_r) - phi(e_b)|, and standard criteria losses."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Mapping, Sequence

from .dist import GROUPS, GroupLossMatrix, Instance, Loss, LossMatrix
from .errors import ContainmentError, DomainError, SizeError, UnsupportedModeError, ConsistencyError
from .frontier import (FeasibleSet, Kind, classify, fa_frontier, feasible_set, special_points)
from .geometry import ConvexPolygon, Point2, Polyline, lower_boundary, support_argmin
from .numeric import tol_for, tol_for_points

MAX_REALIZATIONS = 12
DEFAULT_GRID = 33


# -- linear functionals -------------------------------------------------------

@dataclass(frozen=True)
class FairnessFunctional:
    """Linear h(a) = sum_x c(x,1) a(x) + c(x,0) (1 - a(x))."""

    coefficients: Mapping  # (x, d) -> value

    def constant_and_slopes(self, realizations: Sequence) -> tuple:
        c = self.coefficients
        zero = 0 * next(iter(c.values())) if c else 0
        h0 = sum((c.get((x, 0), zero) for x in realizations), zero)
        k = [c.get((x, 1), zero) - c.get((x, 0), zero) for x in realizations]
        return h0, k

    def __call__(self, algorithm) -> object:
        xs = sorted({x for x, _ in self.coefficients})
        h0, k = self.constant_and_slopes(xs)
        return h0 + sum(ki * algorithm(x) for ki, x in zip(k, xs))

    @classmethod
    def zero(cls, instance: Instance) -> "FairnessFunctional":
        return cls({(x, d): instance.zero() for x in instance.realizations for d in (0, 1)})

    @classmethod
    def from_fairness_loss(cls, instance: Instance, fairness_loss: Loss) -> "FairnessFunctional":
        """h(a) = E[l~(a, Y) | G=r] - E[l~(a, Y) | G=b]."""
        p = instance.group_probs
        coef = {}
        for x, cells in instance.cells_by_x.items():
            for d in (0, 1):
                v = instance.zero()
                for (y, g), m in cells.items():
                    s = 1 if g == "r" else -1
                    v += s * m * fairness_loss.value(d, y, g) / p[g]
                coef[(x, d)] = v
        return cls(coef)

    @classmethod
    def baseline(cls, instance: Instance, loss: Loss) -> "FairnessFunctional":
        """h(a) = e_r(a) - e_b(a), so |h| is the usual error gap."""
        return cls.from_fairness_loss(instance, loss)


def _affine_errors(instance: Instance, loss: Loss):
    """e_g(a) = base_g + sum_x slope_g[x] a(x), for the instance's realizations."""
    p = instance.group_probs
    base = {g: instance.zero() for g in GROUPS}
    slope = {g: [] for g in GROUPS}
    for x in instance.realizations:
        cells = instance.cells_by_x[x]
        s = {g: instance.zero() for g in GROUPS}
        for (y, g), m in cells.items():
            base[g] += m * loss.value(0, y, g) / p[g]
            s[g] += m * (loss.value(1, y, g) - loss.value(0, y, g)) / p[g]
        for g in GROUPS:
            slope[g].append(s[g])
    return base, slope


def _check_size(instance: Instance):
    n = len(instance.realizations)
    if n > MAX_REALIZATIONS:
        raise SizeError(f"{n} covariate realizations exceed the enumeration bound {MAX_REALIZATIONS}")
    return n


def _equality_vertices(rows: list, rhs: list, n: int, tol) -> list:
    """Vertices of {a in [0,1]^n : rows . a = rhs} for one or two equality rows."""
    out = []
    seen = set()
    m = len(rows)
    for size in range(0, m + 1):
        for basis in combinations(range(n), size):
            rest = [i for i in range(n) if i not in basis]
            for bits in product((0, 1), repeat=len(rest)):
                resid = [rhs[j] - sum((rows[j][i] for i, b in zip(rest, bits) if b), 0 * rhs[j]) for j in range(m)]
                sol = _solve_small(rows, resid, basis, tol)
                if sol is None:
                    continue
                if any(v < -tol or v > 1 + tol for v in sol):
                    continue
                a = [0] * n
                for i, b in zip(rest, bits):
                    a[i] = b
                for i, v in zip(basis, sol):
                    a[i] = v
                key = tuple(a) if not tol else tuple(round(float(v), 12) for v in a)
                if key not in seen:
                    seen.add(key)
                    out.append(a)
    return out


def _solve_small(rows, resid, basis, tol):
    m = len(rows)
    if len(basis) == 0:
        return [] if all(abs(r) <= tol for r in resid) else None
    if len(basis) == 1:
        i = basis[0]
        col = [rows[j][i] for j in range(m)]
        piv = max(range(m), key=lambda j: abs(col[j]))
        if abs(col[piv]) <= tol:
            return None
        v = resid[piv] / col[piv]
        if any(abs(col[j] * v - resid[j]) > tol for j in range(m)):
            return None
        return [v]
    i, k = basis
    a, b, c, d = rows[0][i], rows[0][k], rows[1][i], rows[1][k]
    det = a * d - b * c
    if abs(det) <= tol:
        return None
    return [(resid[0] * d - b * resid[1]) / det, (a * resid[1] - c * resid[0]) / det]


def unfairness_d(instance: Instance, loss: Loss, h: FairnessFunctional, target) -> object:
    """Smallest |h(a)| over algorithms achieving the error pair ``target``."""
    n = _check_size(instance)
    xs = instance.realizations
    base, slope = _affine_errors(instance, loss)
    h0, k = h.constant_and_slopes(xs)
    rows = [slope["r"], slope["b"]]
    rhs = [target[0] - base["r"], target[1] - base["b"]]
    tol = tol_for(list(rhs) + list(k) + [h0])
    verts = _equality_vertices(rows, rhs, n, tol)
    if not verts:
        raise ContainmentError(f"error pair {tuple(target)} is not feasible")
    vals = [h0 + sum(ki * ai for ki, ai in zip(k, a)) for a in verts]
    lo, hi = min(vals), max(vals)
    if lo <= tol and hi >= -tol:
        return 0 * h0
    return min(abs(lo), abs(hi))


def _slab_vertices(k: list, h0, delta, n: int, tol) -> list:
    """Vertices of {a in [0,1]^n : -delta <= h0 + k . a <= delta}."""
    out = []
    for bits in product((0, 1), repeat=n):
        val = h0 + sum((ki for ki, b in zip(k, bits) if b), 0 * h0)
        if abs(val) <= delta + tol:
            out.append(list(bits))
    for i in range(n):
        if abs(k[i]) <= tol:
            continue
        rest = [j for j in range(n) if j != i]
        for bits in product((0, 1), repeat=n - 1):
            val = h0 + sum((k[j] for j, b in zip(rest, bits) if b), 0 * h0)
            for level in (delta, -delta):
                t = (level - val) / k[i]
                if -tol <= t <= 1 + tol:
                    a = [0] * n
                    for j, b in zip(rest, bits):
                        a[j] = b
                    a[i] = t
                    out.append(a)
    return out


@dataclass(frozen=True)
class GeneralizedFrontier:
    delta_grid: tuple
    r_curve: tuple  # Point2 per grid value
    b_curve: tuple
    pareto_boundary: Polyline
    fairness_optimal_set: Polyline
    sublevel_sets: tuple  # ConvexPolygon per grid value
    min_unfairness: object

    def region_polylines(self) -> list:
        return [pareto_set(p) for p in self.sublevel_sets]


def pareto_set(poly: ConvexPolygon) -> Polyline:
    """Pareto frontier (lower-left chain between the two group optima) of a polygon."""
    if poly.is_empty:
        return Polyline(())
    r = support_argmin(poly, (1, 0), (0, 1))
    b = support_argmin(poly, (0, 1), (1, 0))
    return lower_boundary(poly, r, b).left_to_right()


def _errors_of(a, base, slope):
    return Point2(base["r"] + sum(s * v for s, v in zip(slope["r"], a)),
                  base["b"] + sum(s * v for s, v in zip(slope["b"], a)))


def sublevel_set(instance: Instance, loss: Loss, h: FairnessFunctional, delta) -> ConvexPolygon:
    """Error pairs of algorithms with |h(a)| <= delta."""
    n = _check_size(instance)
    base, slope = _affine_errors(instance, loss)
    h0, k = h.constant_and_slopes(instance.realizations)
    tol = tol_for(list(k) + [h0, delta])
    verts = _slab_vertices(k, h0, delta, n, tol)
    return ConvexPolygon.from_points(_errors_of(a, base, slope) for a in verts)


def unfairness_range(instance: Instance, h: FairnessFunctional) -> tuple:
    """(min |h|, max |h|) over all algorithms."""
    h0, k = h.constant_and_slopes(instance.realizations)
    lo = h0 + sum((min(ki, 0 * ki) for ki in k), 0 * h0)
    hi = h0 + sum((max(ki, 0 * ki) for ki in k), 0 * h0)
    low = max(lo, -hi, 0 * h0)
    return low, max(abs(lo), abs(hi))


def delta_grid(low, high, size: int) -> tuple:
    """``size`` values from low to high, spaced geometrically toward low."""
    if size < 2 or high == low:
        return (low,)
    ratio = Fraction(3, 4) if isinstance(low, (int, Fraction)) and isinstance(high, (int, Fraction)) else 0.75
    return (low,) + tuple(low + (high - low) * ratio ** (size - 1 - i) for i in range(1, size))


def generalized_frontier(instance: Instance, loss: Loss, h: FairnessFunctional,
                         delta_grid_size: int = DEFAULT_GRID) -> GeneralizedFrontier:
    _check_size(instance)
    low, high = unfairness_range(instance, h)
    grid = delta_grid(low, high, delta_grid_size)
    polys = tuple(sublevel_set(instance, loss, h, d) for d in grid)
    tol = tol_for(list(grid))
    for p, q in zip(polys[:-1], polys[1:]):
        if not all(q.contains(v, tol * 10 if tol else None) for v in p.vertices):
            raise ConsistencyError("sublevel sets are not nested")
    r_curve = tuple(support_argmin(p, (1, 0), (0, 1)) for p in polys)
    b_curve = tuple(support_argmin(p, (0, 1), (1, 0)) for p in polys)
    full = feasible_set(instance, loss).polygon
    return GeneralizedFrontier(grid, r_curve, b_curve, pareto_set(full), pareto_set(polys[0]), polys, low)


def in_generalized_frontier(instance: Instance, loss: Loss, h: FairnessFunctional, e) -> bool:
    """Whether e is undominated once fairness is measured by the minimal achievable |h|."""
    d = unfairness_d(instance, loss, h, e)
    return pareto_set(sublevel_set(instance, loss, h, d)).contains(Point2(*e))


def generalized_group_balanced(instance: Instance, loss: Loss, h: FairnessFunctional,
                               delta_grid_size: int = DEFAULT_GRID) -> bool:
    gf = generalized_frontier(instance, loss, h, delta_grid_size)
    pareto = gf.pareto_boundary
    tol = tol_for_points(pareto.points)
    verdict = all(pareto.contains(v, tol) for v in gf.fairness_optimal_set.points)
    if verdict:
        for pl in gf.region_polylines():
            if not all(pareto.contains(v, tol) for v in pl.points):
                raise ConsistencyError("balanced instance whose generalized frontier leaves the Pareto set")
    return verdict


def parity_functional(instance: Instance) -> FairnessFunctional:
    """h from the fairness loss 1{d=0}: difference in rates of decision 0."""
    one = instance.one()
    return FairnessFunctional.from_fairness_loss(
        instance, LossMatrix({(d, y): one * (d == 0) for d in (0, 1) for y in instance.type_labels}))


def binary_x_balance_check(instance: Instance) -> bool:
    """Balance verdict for two realizations, misclassification loss and parity fairness.

    Balance fails exactly when both groups share the accuracy-optimal action at each
    realization and those actions differ across the two realizations.
    """
    xs = instance.realizations
    if len(xs) != 2 or set(instance.type_labels) - {"0", "1"}:
        raise UnsupportedModeError("needs exactly two realizations and binary types '0'/'1'")
    act = {}
    for x in xs:
        for g in GROUPS:
            cells = instance.cells_by_x[x]
            pxg = sum((m for (y, gg), m in cells.items() if gg == g), instance.zero())
            if pxg == 0:
                raise UnsupportedModeError(f"P(X={x}, G={g}) = 0")
            act[(x, g)] = int(cells.get(("1", g), 0) / pxg >= Fraction(1, 2))
    x0, x1 = xs
    fails = act[(x0, "r")] == act[(x0, "b")] and act[(x1, "r")] == act[(x1, "b")] and act[(x0, "r")] != act[(x1, "r")]
    verdict = not fails
    geo = generalized_group_balanced(instance, LossMatrix.misclassification(instance.type_labels),
                                     parity_functional(instance), delta_grid_size=2)
    if geo != verdict:
        raise ConsistencyError("two-realization balance rule disagrees with the geometric check")
    return verdict


# -- phi transforms -------------------------------------------------------------

@dataclass(frozen=True)
class PhiTransform:
    """Strictly increasing transform of group errors used to measure unfairness."""

    kind: str
    power: float = 1.0

    def __post_init__(self):
        if self.kind not in ("identity", "log", "sqrt", "power"):
            raise DomainError(f"unknown phi kind {self.kind!r}")
        if self.kind == "power" and not self.power > 0:
            raise DomainError("power must be positive")

    @classmethod
    def parse(cls, text: str) -> "PhiTransform":
        if text.startswith("power"):
            _, _, p = text.partition(":")
            if not p:
                _, _, p = text.partition("(")
                p = p.rstrip(")")
            return cls("power", float(p or 2))
        return cls(text)

    @property
    def domain_guard(self):
        """Errors must be above this (log) or at least this (others)."""
        return -math.inf if self.kind == "identity" else 0.0

    @property
    def concave(self) -> bool:
        return self.kind in ("log", "sqrt") or (self.kind == "power" and self.power <= 1)

    def check_domain(self, values) -> None:
        if self.kind == "identity":
            return
        for v in values:
            if (self.kind == "log" and v <= 0) or v < 0:
                raise DomainError(f"phi={self.kind} is undefined at error {v}")

    def __call__(self, e: float) -> float:
        e = float(e)
        if self.kind == "identity":
            return e
        if self.kind == "log":
            return math.log(e)
        if self.kind == "sqrt":
            return math.sqrt(e)
        return e ** self.power


GOLDEN_TOL = 1e-10
_INV_PHI = (math.sqrt(5) - 1) / 2


def _golden_min(f: Callable, lo: float, hi: float, tol: float = GOLDEN_TOL) -> float:
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return (a + b) / 2


def phi_fair_point(polygon: ConvexPolygon, phi: PhiTransform) -> Point2:
    """Boundary point minimizing |phi(e_r) - phi(e_b)|, ties toward lower errors."""
    vs = polygon.vertices
    edges = polygon.edges() or [(vs[0], vs[0])]
    gap = lambda p: abs(phi(p[0]) - phi(p[1]))  # noqa: E731
    cands: list = list(vs)
    for a, b in edges:
        da, db = a[0] - a[1], b[0] - b[1]
        if da == 0 or db == 0 or (da < 0) != (db < 0):
            # the errors coincide somewhere on this edge, so the gap vanishes there
            if da != db:
                t = da / (da - db)
                cands.append(Point2(a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t))
            continue
        ax, ay, bx, by = float(a[0]), float(a[1]), float(b[0]), float(b[1])
        pt = lambda t: (ax + (bx - ax) * t, ay + (by - ay) * t)  # noqa: E731
        samples = [k / 64 for k in range(65)]
        vals = [gap(pt(t)) for t in samples]
        j = min(range(len(vals)), key=vals.__getitem__)
        lo, hi = samples[max(j - 1, 0)], samples[min(j + 1, 64)]
        t = _golden_min(lambda s: gap(pt(s)), lo, hi)
        cands.append(Point2(*pt(t)))
    best = min(gap(p) for p in cands)
    close = [p for p in cands if gap(p) <= best + 1e-12]
    return min(close, key=lambda p: (float(p[0]), float(p[1])))


def phi_frontier(fs: FeasibleSet, phi: PhiTransform) -> Polyline:
    """Frontier when unfairness is |phi(e_r) - phi(e_b)|."""
    poly = fs.polygon
    phi.check_domain([c for p in poly.vertices for c in p])
    if phi.kind == "identity":
        return fa_frontier(fs)
    sp = special_points(fs)
    kind = classify(sp).kind
    if kind is Kind.GROUP_BALANCED:
        return fa_frontier(fs)
    g_point = sp.r_point if kind is Kind.R_SKEWED else sp.b_point
    f = phi_fair_point(poly, phi)
    return _lower_boundary_float(poly, g_point, f).left_to_right()


def _lower_boundary_float(poly: ConvexPolygon, p, q) -> Polyline:
    """lower_boundary where q may carry float rounding: snap q onto the nearest boundary point."""
    tol = 1e-9
    if poly.on_boundary(q, tol):
        return lower_boundary(poly, p, q)
    raise DomainError(f"phi-fair point {tuple(q)} is not on the boundary")


# -- fairness criteria --------------------------------------------------------------

CRITERIA = ("statistical_parity", "false_positive", "false_negative", "equalized_odds")


def criteria_loss(kind: str, instance: Instance) -> Loss:
    """Loss whose group-error gap is the named fairness criterion."""
    one, zero = instance.one(), instance.zero()
    ys = instance.type_labels
    if kind == "statistical_parity":
        return LossMatrix({(d, y): one if d == 1 else zero for d in (0, 1) for y in ys})
    if kind in ("false_positive", "false_negative"):
        if set(ys) - {"0", "1"}:
            raise DomainError(f"{kind} needs binary types '0' and '1'")
        cell = (1, "0") if kind == "false_positive" else (0, "1")
        return LossMatrix({(d, y): one if (d, y) == cell else zero for d in (0, 1) for y in ("0", "1")})
    if kind == "equalized_odds":
        py = instance.type_probs()
        vals = {}
        for g in GROUPS:
            pyg = instance.type_probs(g)
            for y in ys:
                if pyg[y] == 0:
                    raise DomainError(f"P(Y={y} | G={g}) = 0")
                vals[(1, y, g)] = py[y] / pyg[y]
                vals[(0, y, g)] = zero
        return GroupLossMatrix(vals)
    raise DomainError(f"unknown criterion {kind!r}")
