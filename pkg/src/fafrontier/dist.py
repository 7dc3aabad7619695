"""Joint distributions over (covariates, type, group), losses, algorithms and group errors."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, NamedTuple, Union

from .errors import ConditioningError, DomainError, NormalizationError
from .numeric import EPS, Number, convert

GROUPS = ("r", "b")
GROUP_COLUMN = "G"

Cell = tuple  # (x: tuple[str, ...], y: str, g: str)


class ErrorPair(NamedTuple):
    e_r: Number
    e_b: Number


@dataclass(frozen=True)
class Instance:
    """A finite joint distribution P(X, Y, G) with named covariate columns.

    ``mass`` maps ``(x, y, g)`` with ``x`` a tuple of string tokens to a
    nonnegative mass. Zero-mass cells are dropped. In exact mode every mass
    is a ``Fraction``; in float mode every mass is a ``float`` and equality
    tests use a tolerance of 1e-9.
    """

    covariate_names: tuple
    type_labels: tuple
    mass: Mapping
    numeric_mode: str = "exact"

    def __post_init__(self):
        names = tuple(self.covariate_names)
        if len(set(names)) != len(names):
            raise DomainError(f"duplicate covariate names in {names}")
        mode = self.numeric_mode
        if mode not in ("exact", "float"):
            raise DomainError(f"unknown numeric mode {mode!r}")
        exact = mode == "exact"
        cells = {}
        ys = list(self.type_labels)
        for key, m in dict(self.mass).items():
            x, y, g = key
            x = tuple(str(t) for t in x)
            if len(x) != len(names):
                raise DomainError(f"covariate tuple {x} does not match columns {names}")
            if g not in GROUPS:
                raise DomainError(f"group label must be 'r' or 'b', got {g!r}")
            m = convert(m, exact)
            if m < 0:
                raise NormalizationError(f"negative mass {m} at {key}")
            if str(y) not in ys:
                ys.append(str(y))
            if m == 0:
                continue
            k = (x, str(y), g)
            cells[k] = cells.get(k, 0) + m
        total = sum(cells.values(), Fraction(0) if exact else 0.0)
        if (exact and total != 1) or (not exact and abs(total - 1) > EPS):
            raise NormalizationError(f"masses sum to {total}, not 1")
        for g in GROUPS:
            if not any(k[2] == g for k in cells):
                raise NormalizationError(f"group {g} has zero probability")
        object.__setattr__(self, "covariate_names", names)
        object.__setattr__(self, "type_labels", tuple(str(y) for y in ys))
        object.__setattr__(self, "mass", MappingProxyType(dict(sorted(cells.items()))))

    # -- construction helpers -------------------------------------------
    @classmethod
    def from_conditionals(cls, names, group_probs: Mapping, conditionals: Mapping, type_labels=None,
                          numeric_mode="exact") -> "Instance":
        """Build from p_g and tables P(x, y | g) keyed by ``(x, y, g)``."""
        mass = {k: v * group_probs[k[2]] for k, v in conditionals.items()}
        return cls(tuple(names), tuple(type_labels or ()), mass, numeric_mode)

    def with_mode(self, mode: str) -> "Instance":
        if mode == self.numeric_mode:
            return self
        return Instance(self.covariate_names, self.type_labels, dict(self.mass), mode)

    # -- derived quantities ---------------------------------------------
    @property
    def exact(self) -> bool:
        return self.numeric_mode == "exact"

    @property
    def tol(self) -> float:
        return 0 if self.exact else EPS

    def zero(self):
        return Fraction(0) if self.exact else 0.0

    def one(self):
        return Fraction(1) if self.exact else 1.0

    @cached_property
    def covariate_alphabets(self) -> dict:
        return {n: tuple(sorted({k[0][i] for k in self.mass})) for i, n in enumerate(self.covariate_names)}

    @cached_property
    def realizations(self) -> tuple:
        """Covariate realizations with positive probability, in sorted order."""
        return tuple(sorted({k[0] for k in self.mass}))

    @cached_property
    def cells_by_x(self) -> dict:
        out: dict = {x: {} for x in self.realizations}
        for (x, y, g), m in self.mass.items():
            out[x][(y, g)] = m
        return out

    @cached_property
    def group_probs(self) -> dict:
        p = {g: self.zero() for g in GROUPS}
        for (_, _, g), m in self.mass.items():
            p[g] += m
        return p

    @cached_property
    def x_probs(self) -> dict:
        return {x: sum(c.values(), self.zero()) for x, c in self.cells_by_x.items()}

    def prob_xg(self, x, g):
        return sum((m for (y, gg), m in self.cells_by_x.get(tuple(x), {}).items() if gg == g), self.zero())

    def type_probs(self, g: str | None = None) -> dict:
        """P(Y=y) or P(Y=y | G=g)."""
        out = {y: self.zero() for y in self.type_labels}
        for (_, y, gg), m in self.mass.items():
            if g is None or gg == g:
                out[y] += m
        if g is not None:
            out = {y: v / self.group_probs[g] for y, v in out.items()}
        return out

    def swap_groups(self) -> "Instance":
        """The same distribution with labels r and b exchanged."""
        flip = {"r": "b", "b": "r"}
        return Instance(self.covariate_names, self.type_labels,
                        {(x, y, flip[g]): m for (x, y, g), m in self.mass.items()}, self.numeric_mode)


@dataclass(frozen=True)
class LossMatrix:
    """Loss ``values[(d, y)]`` for decisions d in {0, 1}."""

    values: Mapping

    def __post_init__(self):
        vals = {(int(d), str(y)): v for (d, y), v in dict(self.values).items()}
        if any(d not in (0, 1) for d, _ in vals):
            raise DomainError("decisions must be 0 or 1")
        object.__setattr__(self, "values", MappingProxyType(vals))

    def value(self, d: int, y: str, g: str | None = None):
        try:
            return self.values[(d, y)]
        except KeyError:
            raise DomainError(f"loss undefined at d={d}, y={y!r}") from None

    def check_types(self, type_labels: Iterable[str]) -> None:
        for y in type_labels:
            for d in (0, 1):
                self.value(d, y)

    def with_mode(self, exact: bool) -> "LossMatrix":
        return LossMatrix({k: convert(v, exact) for k, v in self.values.items()})

    @classmethod
    def misclassification(cls, type_labels=("0", "1")) -> "LossMatrix":
        """Loss 1{d != y} for binary types labelled '0' and '1'."""
        if set(type_labels) - {"0", "1"}:
            raise DomainError("misclassification loss needs types '0' and '1'")
        return cls({(d, y): Fraction(int(d != int(y))) for d in (0, 1) for y in ("0", "1")})

    @classmethod
    def constant(cls, c, type_labels) -> "LossMatrix":
        return cls({(d, y): c for d in (0, 1) for y in type_labels})


@dataclass(frozen=True)
class GroupLossMatrix:
    """Group-dependent loss ``values[(d, y, g)]``."""

    values: Mapping

    def __post_init__(self):
        vals = {(int(d), str(y), g): v for (d, y, g), v in dict(self.values).items()}
        if any(d not in (0, 1) for d, _, _ in vals) or any(g not in GROUPS for _, _, g in vals):
            raise DomainError("group loss keys must be (0|1, y, r|b)")
        object.__setattr__(self, "values", MappingProxyType(vals))

    def value(self, d: int, y: str, g: str | None = None):
        try:
            return self.values[(d, y, g)]
        except KeyError:
            raise DomainError(f"loss undefined at d={d}, y={y!r}, g={g!r}") from None

    def check_types(self, type_labels: Iterable[str]) -> None:
        for y in type_labels:
            for d in (0, 1):
                for g in GROUPS:
                    self.value(d, y, g)

    def with_mode(self, exact: bool) -> "GroupLossMatrix":
        return GroupLossMatrix({k: convert(v, exact) for k, v in self.values.items()})


Loss = Union[LossMatrix, GroupLossMatrix]


@dataclass(frozen=True)
class Algorithm:
    """Map from covariate realization to the probability of decision 1."""

    assign: Mapping = field(default_factory=dict)

    def __post_init__(self):
        vals = {tuple(x): p for x, p in dict(self.assign).items()}
        for x, p in vals.items():
            if p < 0 or p > 1:
                raise DomainError(f"probability {p} at {x} outside [0, 1]")
        object.__setattr__(self, "assign", MappingProxyType(vals))

    def __call__(self, x):
        try:
            return self.assign[tuple(x)]
        except KeyError:
            raise DomainError(f"algorithm undefined at realization {tuple(x)}") from None

    @classmethod
    def constant(cls, instance: Instance, c) -> "Algorithm":
        return cls({x: c for x in instance.realizations})

    @classmethod
    def from_function(cls, instance: Instance, f: Callable) -> "Algorithm":
        return cls({x: f(x) for x in instance.realizations})

    def mix(self, other: "Algorithm", lam) -> "Algorithm":
        return Algorithm({x: lam * p + (1 - lam) * other(x) for x, p in self.assign.items()})


@dataclass(frozen=True)
class StructureReport:
    reveals_g: bool
    conditional_independence: bool
    strong_independence: bool


def _close(a, b, tol) -> bool:
    return a == b if tol == 0 else abs(a - b) <= tol


def group_error(instance: Instance, loss: Loss, algorithm: Algorithm) -> ErrorPair:
    """Expected loss conditional on each group."""
    acc = {g: instance.zero() for g in GROUPS}
    for x, cells in instance.cells_by_x.items():
        a = algorithm(x)
        for (y, g), m in cells.items():
            acc[g] += m * (a * loss.value(1, y, g) + (1 - a) * loss.value(0, y, g))
    p = instance.group_probs
    return ErrorPair(acc["r"] / p["r"], acc["b"] / p["b"])


def conditional_expected_loss(instance: Instance, loss: Loss, x, g: str, d: int):
    """E[loss(d, Y) | X=x, G=g]."""
    x = tuple(x)
    cells = instance.cells_by_x.get(x, {})
    pxg = sum((m for (y, gg), m in cells.items() if gg == g), instance.zero())
    if pxg == 0:
        raise ConditioningError(f"P(X={x}, G={g}) = 0")
    return sum((m * loss.value(d, y, g) for (y, gg), m in cells.items() if gg == g), instance.zero()) / pxg


def project(instance: Instance, kept_covariate_names: Iterable[str], include_group: bool = False) -> Instance:
    """Marginalize onto ``kept_covariate_names`` (kept in the instance's column order).

    With ``include_group`` a synthetic column named ``G`` holding the group label
    is appended. The name ``G`` in ``kept_covariate_names`` also requests it
    when the instance has no column of that name.
    """
    kept = list(kept_covariate_names)
    names = instance.covariate_names
    if GROUP_COLUMN in kept and GROUP_COLUMN not in names:
        kept.remove(GROUP_COLUMN)
        include_group = True
    unknown = [n for n in kept if n not in names]
    if unknown:
        raise DomainError(f"unknown covariate names {unknown}")
    idx = [i for i, n in enumerate(names) if n in kept]
    new_names = tuple(names[i] for i in idx)
    add_group = include_group and GROUP_COLUMN not in new_names
    if add_group:
        new_names += (GROUP_COLUMN,)
    mass: dict = {}
    for (x, y, g), m in instance.mass.items():
        nx = tuple(x[i] for i in idx) + ((g,) if add_group else ())
        mass[(nx, y, g)] = mass.get((nx, y, g), 0) + m
    return Instance(new_names, instance.type_labels, mass, instance.numeric_mode)


def detect_structure(instance: Instance) -> StructureReport:
    tol = instance.tol
    p = instance.group_probs
    reveals = True
    ci = True
    si = True
    for x, cells in instance.cells_by_x.items():
        px = instance.x_probs[x]
        pxg = {g: sum((m for (_, gg), m in cells.items() if gg == g), instance.zero()) for g in GROUPS}
        if not (_close(pxg["r"], 0, tol) or _close(pxg["b"], 0, tol)):
            reveals = False
        for y in instance.type_labels:
            pxy = cells.get((y, "r"), 0) + cells.get((y, "b"), 0)
            for g in GROUPS:
                m = cells.get((y, g), 0)
                # P(y,g|x) = P(y|x) P(g|x), multiplied through by P(x)^2
                if not _close(m * px, pxy * pxg[g], tol):
                    ci = False
                if pxy > tol and not _close(m, p[g] * pxy, tol):
                    si = False
    return StructureReport(reveals, ci, si)
