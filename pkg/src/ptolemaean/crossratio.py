"""Metric cross-ratios of quadruples of the closure.

The cross-ratio of ``(p1, p2, p3, p4)`` is

    rho(p2, p4) * rho(p1, p3) / (rho(p2, p3) * rho(p1, p4))

Each point occurs once upstairs and once downstairs, so when one point is
infinite exactly one infinite factor sits in each place. They are cancelled
symbolically before any division.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .core import INFINITY, ClosurePoint, DegenerateQuadruple, Quadruple, points_equal
from .cygan import rho


class CrossRatioPair(NamedTuple):
    x1: float
    x2: float


def cross_ratio(p1: ClosurePoint, p2: ClosurePoint, p3: ClosurePoint, p4: ClosurePoint) -> float:
    pts = (p1, p2, p3, p4)
    for i in range(4):
        for j in range(i + 1, 4):
            if points_equal(pts[i], pts[j]):
                raise DegenerateQuadruple(f"points {i + 1} and {j + 1} coincide")
    num = [rho(p2, p4), rho(p1, p3)]
    den = [rho(p2, p3), rho(p1, p4)]
    if INFINITY in pts:
        # one infinite factor on each side; (+inf):(+inf) = 1
        num = [d for d in num if d != math.inf]
        den = [d for d in den if d != math.inf]
    top, e_top = _product(num)
    bottom, e_bottom = _product(den)
    try:
        value = math.ldexp(top / bottom, e_top - e_bottom)
    except OverflowError:
        value = math.inf
    if not (0.0 < value < math.inf):
        raise ArithmeticError(f"cross-ratio out of range: {value!r}")
    return value


def _product(values):
    """Product as ``(mantissa, exponent)`` so huge or tiny distances cannot overflow."""
    mantissa, exponent = 1.0, 0
    for x in values:
        m, e = math.frexp(x)
        mantissa, exponent = mantissa * m, exponent + e
    return mantissa, exponent


def x1_x2(q: Quadruple) -> CrossRatioPair:
    p1, p2, p3, p4 = q
    return CrossRatioPair(cross_ratio(p1, p2, p3, p4), cross_ratio(p1, p3, p2, p4))
