"""Brute-force reference computations.

Nothing here imports the geometry or frontier code: error pairs come from a
naive sum over the full probability table, hulls from gift wrapping, and
frontiers from a pairwise dominance filter.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from numbers import Rational

import numpy as np

from .dist import Instance, Loss
from .errors import SizeError

MAX_REALIZATIONS = 12


@dataclass(frozen=True)
class PointCloud:
    points: tuple  # (e_r, e_b) pairs
    tags: tuple = field(default=())

    def __len__(self):
        return len(self.points)


def _naive_errors(instance: Instance, loss: Loss, decision: dict) -> tuple:
    num = {"r": 0, "b": 0}
    den = {"r": 0, "b": 0}
    for (x, y, g), m in instance.mass.items():
        a = decision[x]
        num[g] += m * a * loss.value(1, y, g) + m * (1 - a) * loss.value(0, y, g)
        den[g] += m
    return (num["r"] / den["r"], num["b"] / den["b"])


def _turn(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def gift_wrap(points) -> list:
    """Jarvis march; strictly convex CCW hull, collinear points dropped."""
    pts = sorted(set((p[0], p[1]) for p in points))
    if len(pts) <= 2:
        return pts
    exact = all(isinstance(c, Rational) for p in pts for c in p)
    tol = 0 if exact else 1e-12
    start = pts[0]
    hull = [start]
    cur = start
    while True:
        cand = None
        for p in pts:
            if p == cur:
                continue
            if cand is None:
                cand = p
                continue
            t = _turn(cur, cand, p)
            d_c = (cand[0] - cur[0]) ** 2 + (cand[1] - cur[1]) ** 2
            d_p = (p[0] - cur[0]) ** 2 + (p[1] - cur[1]) ** 2
            if t < -tol or (abs(t) <= tol and d_p > d_c):
                cand = p
        cur = cand
        if cur == start:
            break
        hull.append(cur)
        if len(hull) > len(pts):
            raise RuntimeError("gift wrapping did not close")
    return hull


def oracle_feasible(instance: Instance, loss: Loss):
    """All deterministic algorithms' error pairs and their convex hull."""
    xs = sorted({x for (x, _, _) in instance.mass})
    if len(xs) > MAX_REALIZATIONS:
        raise SizeError(f"{len(xs)} realizations exceed {MAX_REALIZATIONS}")
    pts, tags = [], []
    for bits in product((0, 1), repeat=len(xs)):
        pts.append(_naive_errors(instance, loss, dict(zip(xs, bits))))
        tags.append(bits)
    return PointCloud(tuple(pts), tuple(tags)), gift_wrap(pts)


def oracle_clip(hull: list, normal, offset) -> list:
    """Vertices of hull intersected with {normal . p <= offset}, recomputed from scratch."""
    def val(p):
        return normal[0] * p[0] + normal[1] * p[1] - offset

    keep = [p for p in hull if val(p) <= 0]
    n = len(hull)
    pairs = [(hull[i], hull[(i + 1) % n]) for i in range(n)] if n > 1 else []
    for a, b in pairs:
        va, vb = val(a), val(b)
        if (va < 0 < vb) or (vb < 0 < va):
            t = va / (va - vb)
            keep.append((a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t))
    return gift_wrap(keep)


def oracle_frontier(points, tol: float | None = None) -> PointCloud:
    """Points not FA-dominated by any other point of the input (pairwise check)."""
    pts = list(dict.fromkeys((p[0], p[1]) for p in points))
    if not pts:
        return PointCloud(())
    exact = all(isinstance(c, Rational) for p in pts for c in p)
    if exact and tol is None:
        keep = []
        for e in pts:
            dominated = False
            for o in pts:
                gap_o, gap_e = abs(o[0] - o[1]), abs(e[0] - e[1])
                if o[0] <= e[0] and o[1] <= e[1] and gap_o <= gap_e and (o[0] < e[0] or o[1] < e[1] or gap_o < gap_e):
                    dominated = True
                    break
            if not dominated:
                keep.append(e)
        return PointCloud(tuple(keep))
    tol = 1e-12 if tol is None else tol
    arr = np.array([[float(p[0]), float(p[1])] for p in pts])
    gap = np.abs(arr[:, 0] - arr[:, 1])
    feats = np.column_stack([arr, gap])
    # le[i, j]: point j weakly better than point i in every coordinate
    le = np.all(feats[None, :, :] <= feats[:, None, :] + tol, axis=2)
    lt = np.any(feats[None, :, :] < feats[:, None, :] - tol, axis=2)
    dominated = np.any(le & lt, axis=1)
    return PointCloud(tuple(pts[i] for i in range(len(pts)) if not dominated[i]))


def _cell_arrays(instance: Instance, loss: Loss, xs: list):
    idx = {x: i for i, x in enumerate(xs)}
    n = len(xs)
    p = {"r": 0.0, "b": 0.0}
    for (x, y, g), m in instance.mass.items():
        p[g] += float(m)
    l1 = {g: np.zeros(n) for g in p}
    l0 = {g: np.zeros(n) for g in p}
    for (x, y, g), m in instance.mass.items():
        l1[g][idx[x]] += float(m) * float(loss.value(1, y, g)) / p[g]
        l0[g][idx[x]] += float(m) * float(loss.value(0, y, g)) / p[g]
    return l1, l0


def oracle_input_design(instance: Instance, loss: Loss, agent, n_samples: int, seed: int = 0) -> PointCloud:
    """Induced error pairs of random recommendation rules that the agent obeys.

    Each sample draws a(x) uniformly in [0,1]^X; the rule is kept when neither
    recommendation can be profitably disobeyed (evaluated in floating point).
    """
    xs = sorted({x for (x, _, _) in instance.mass})
    rng = np.random.default_rng(seed)
    a = rng.random((n_samples, len(xs)))
    # mix in some deterministic and near-deterministic rules so extreme points get hit
    a[: n_samples // 4] = np.round(a[: n_samples // 4])
    l1, l0 = _cell_arrays(instance, loss, xs)
    ar, ab = float(agent.alpha_r), float(agent.alpha_b)
    w1 = ar * l1["r"] + ab * l1["b"]  # agent's weighted loss of d=1 per realization
    w0 = ar * l0["r"] + ab * l0["b"]
    slack_one = a @ (w0 - w1)  # signal "1": loss(0) - loss(1)
    slack_zero = (1 - a) @ (w1 - w0)
    ok = (slack_one >= -1e-12) & (slack_zero >= -1e-12)
    er = a @ l1["r"] + (1 - a) @ l0["r"]
    eb = a @ l1["b"] + (1 - a) @ l0["b"]
    keep = np.nonzero(ok)[0]
    return PointCloud(tuple(zip(er[keep].tolist(), eb[keep].tolist())),
                      tuple(("seed", seed, int(i)) for i in keep))
