"""Shared fixtures for the test suite: seeded instance families and exact helpers."""
from __future__ import annotations

import random
from fractions import Fraction as F

from fafrontier.instances import random_instance, random_loss

N_RANDOM = 200


def seeded_instance(seed: int, max_realizations: int = 6, max_types: int = 3):
    """The i-th member of the shared random family: instance plus loss.

    Every third seed draws losses that may be negative.
    """
    rng = random.Random(seed)
    inst = random_instance(rng, max_realizations=max_realizations, max_types=max_types)
    loss = random_loss(rng, inst.type_labels, negative=(seed % 3 == 2))
    return inst, loss


def positive_agent(rng: random.Random):
    from fafrontier import AgentWeights
    return AgentWeights(F(rng.randint(1, 9), 10), F(rng.randint(1, 9), 10))


def clip_segment(a, b, halfplanes):
    """Exact part of segment ab inside every (normal, offset) halfplane, or None."""
    t0, t1 = F(0), F(1)
    for (nx, ny), off in halfplanes:
        va = nx * a[0] + ny * a[1] - off
        vb = nx * b[0] + ny * b[1] - off
        if va > 0 and vb > 0:
            return None
        if va > 0 or vb > 0:
            t = F(va) / (va - vb)
            if va > 0:
                t0 = max(t0, t)
            else:
                t1 = min(t1, t)
        if t0 > t1:
            return None
    return ((a[0] + (b[0] - a[0]) * t0, a[1] + (b[1] - a[1]) * t0),
            (a[0] + (b[0] - a[0]) * t1, a[1] + (b[1] - a[1]) * t1))


def dominated_by_polyline(e, points) -> bool:
    """Whether some point of the closed polyline FA-dominates e (exact).

    The dominating region of e is {u <= e_u, v <= e_v, |u - v| <= |e_u - e_v|};
    any point there other than e itself dominates e.
    """
    gap = abs(e[0] - e[1])
    hps = [((1, 0), e[0]), ((0, 1), e[1]), ((1, -1), gap), ((-1, 1), gap)]
    segs = list(zip(points[:-1], points[1:])) or [(points[0], points[0])]
    for a, b in segs:
        piece = clip_segment(a, b, hps)
        if piece is None:
            continue
        if tuple(piece[0]) != tuple(e) or tuple(piece[1]) != tuple(e):
            return True
    return False
