"""Numeric helpers for the two arithmetic modes (exact rationals or floats)."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

Number = Union[int, Fraction, float]

EPS = 1e-9


def is_exact(x) -> bool:
    return isinstance(x, Rational)


def tol_for(values: Iterable) -> float:
    """Return 0 when every value is rational, else the float tolerance."""
    for x in values:
        if not isinstance(x, Rational):
            return EPS
    return 0


def tol_for_points(points: Iterable) -> float:
    for p in points:
        if not (isinstance(p[0], Rational) and isinstance(p[1], Rational)):
            return EPS
    return 0


def sign(x, tol: float = 0) -> int:
    if x > tol:
        return 1
    if x < -tol:
        return -1
    return 0


def parse_number(token: str, exact: bool = True) -> Number:
    """Parse a decimal or ``a/b`` token."""
    q = Fraction(token.strip())
    return q if exact else float(q)


def convert(x, exact: bool) -> Number:
    if exact:
        if isinstance(x, Rational):
            return Fraction(x)
        # floats given in exact mode: go through the shortest repr
        return Fraction(repr(float(x)))
    return float(x)


def format_number(x) -> str:
    if isinstance(x, Rational):
        q = Fraction(x)
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    s = f"{float(x):.12g}"
    return "0" if s == "-0" else s
