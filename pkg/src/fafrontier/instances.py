"""Worked instances and seeded random instance generators."""
from __future__ import annotations

import random
from fractions import Fraction as F
from itertools import product

from .dist import Instance, LossMatrix

MISCLASSIFICATION = LossMatrix.misclassification()


def binary_score_instance() -> Instance:
    """One binary score X; Y is binary; X matches Y 3/4 of the time for r, 2/3 for b."""
    cond = {
        (("0",), "0", "r"): F(3, 8), (("0",), "1", "r"): F(1, 8),
        (("1",), "0", "r"): F(1, 8), (("1",), "1", "r"): F(3, 8),
        (("0",), "0", "b"): F(1, 3), (("0",), "1", "b"): F(1, 6),
        (("1",), "0", "b"): F(1, 6), (("1",), "1", "b"): F(1, 3),
    }
    return Instance.from_conditionals(("X",), {"r": F(1, 2), "b": F(1, 2)}, cond, ("0", "1"))


def signal_instance() -> Instance:
    """Null covariate X and a signal Xp; Xp reveals Y for r and is 60% accurate for b.

    Y and G are independent and uniform.
    """
    mass = {}
    for y in ("0", "1"):
        mass[(("x0", y), y, "r")] = F(1, 4)
        for s in ("0", "1"):
            acc = F(3, 5) if s == y else F(2, 5)
            mass[(("x0", s), y, "b")] = F(1, 4) * acc
    return Instance(("X", "Xp"), ("0", "1"), mass)


# -- random generators -------------------------------------------------------

def _columns(rng: random.Random, max_realizations: int):
    if max_realizations >= 4 and rng.random() < 0.5:
        k1 = rng.randint(1, max(1, max_realizations // 2))
        k2 = rng.randint(1, max_realizations // k1)
        return ("X1", "X2"), [tuple(str(i) for i in t) for t in product(range(k1), range(k2))]
    k = rng.randint(1, max_realizations)
    return ("X1",), [(str(i),) for i in range(k)]


def _normalize(weights: dict) -> dict:
    tot = sum(weights.values())
    return {k: F(v, tot) for k, v in weights.items() if v}


def random_loss(rng: random.Random, types, negative: bool = False, lo: int = 0, hi: int = 6) -> LossMatrix:
    low = -3 if negative else lo
    return LossMatrix({(d, y): F(rng.randint(low, hi), rng.choice((1, 2, 3))) for d in (0, 1) for y in types})


def random_instance(rng: random.Random, max_realizations: int = 6, max_types: int = 3,
                    zero_prob: float = 0.15, names=None, realizations=None) -> Instance:
    """Random rational instance; some cells get zero mass."""
    if realizations is None:
        names, realizations = _columns(rng, max_realizations)
    ntypes = rng.randint(2, max_types)
    types = tuple(str(i) for i in range(ntypes))
    while True:
        w = {}
        for x in realizations:
            for y in types:
                for g in ("r", "b"):
                    w[(x, y, g)] = 0 if rng.random() < zero_prob else rng.randint(1, 12)
        if any(v for (x, y, g), v in w.items() if g == "r") and any(v for (x, y, g), v in w.items() if g == "b"):
            return Instance(tuple(names), types, _normalize(w))


def random_binary_instance(rng: random.Random, names=("X1", "X2"), sizes=(2, 2), zero_prob: float = 0.0) -> Instance:
    """Binary types, covariate columns of the given sizes."""
    reals = [tuple(str(i) for i in t) for t in product(*[range(s) for s in sizes])]
    while True:
        w = {}
        for x in reals:
            for y in ("0", "1"):
                for g in ("r", "b"):
                    w[(x, y, g)] = 0 if rng.random() < zero_prob else rng.randint(1, 12)
        if any(v for k, v in w.items() if k[2] == "r") and any(v for k, v in w.items() if k[2] == "b"):
            return Instance(tuple(names), ("0", "1"), _normalize(w))


def reveals_group_instance(rng: random.Random, per_group: int = 2, max_types: int = 3) -> Instance:
    """Every covariate realization belongs to a single group."""
    types = tuple(str(i) for i in range(rng.randint(2, max_types)))
    w = {}
    for g in ("r", "b"):
        for i in range(per_group):
            for y in types:
                w[((f"{g}{i}",), y, g)] = rng.randint(1, 9)
    return Instance(("X1",), types, _normalize(w))


def conditionally_independent_instance(rng: random.Random, k: int = 3, max_types: int = 3) -> Instance:
    """P(y, g | x) = P(y | x) P(g | x)."""
    types = tuple(str(i) for i in range(rng.randint(2, max_types)))
    w = {}
    for i in range(k):
        px = rng.randint(1, 6)
        py = {y: rng.randint(1, 6) for y in types}
        pg = {g: rng.randint(1, 6) for g in ("r", "b")}
        for y in types:
            for g in ("r", "b"):
                w[((str(i),), y, g)] = px * F(py[y], sum(py.values())) * F(pg[g], sum(pg.values()))
    tot = sum(w.values())
    return Instance(("X1",), types, {kk: v / tot for kk, v in w.items()})


def strongly_independent_instance(rng: random.Random, k: int = 3, max_types: int = 3) -> Instance:
    """P(g | x, y) = P(g)."""
    types = tuple(str(i) for i in range(rng.randint(2, max_types)))
    pr = F(rng.randint(1, 9), 10)
    pg = {"r": pr, "b": 1 - pr}
    wxy = {((str(i),), y): rng.randint(1, 9) for i in range(k) for y in types}
    tot = sum(wxy.values())
    return Instance(("X1",), types, {(x, y, g): F(v, tot) * pg[g] for (x, y), v in wxy.items() for g in pg})


def split_signal_instance(rng: random.Random) -> Instance:
    """Binary Y; X1 predicts Y only for group r, X2 only for group b.

    Yields strictly group-balanced (X1, X2) under misclassification loss.
    """
    w = {}
    acc_r = F(rng.randint(7, 9), 10)
    acc_b = F(rng.randint(7, 9), 10)
    prior = {"r": F(rng.randint(4, 6), 10), "b": F(rng.randint(4, 6), 10)}
    for g in ("r", "b"):
        for y in ("0", "1"):
            py = prior[g] if y == "1" else 1 - prior[g]
            for s1, s2 in product("01", "01"):
                informative, noise = (s1, s2) if g == "r" else (s2, s1)
                acc = acc_r if g == "r" else acc_b
                p_inf = acc if informative == y else 1 - acc
                w[((s1, s2), y, g)] = F(1, 2) * py * p_inf * F(1, 2)
    return Instance(("X1", "X2"), ("0", "1"), w)


def binary_x_instance(rng: random.Random) -> Instance:
    """Two realizations, binary Y; posteriors never exactly 1/2 and P(X|G) differs by group."""
    while True:
        px_r = F(rng.randint(1, 19), 20)
        px_b = F(rng.randint(1, 19), 20)
        if px_r == px_b:
            continue
        post = {}
        for x in ("0", "1"):
            for g in ("r", "b"):
                q = F(rng.randint(1, 19), 20)
                while q == F(1, 2):
                    q = F(rng.randint(1, 19), 20)
                post[(x, g)] = q
        pr = F(rng.randint(3, 7), 10)
        pg = {"r": pr, "b": 1 - pr}
        pxg = {("0", "r"): px_r, ("1", "r"): 1 - px_r, ("0", "b"): px_b, ("1", "b"): 1 - px_b}
        w = {}
        for (x, g), q in post.items():
            w[((x,), "1", g)] = pg[g] * pxg[(x, g)] * q
            w[((x,), "0", g)] = pg[g] * pxg[(x, g)] * (1 - q)
        return Instance(("X",), ("0", "1"), w)
