"""R-circles as images of standard circles, separation, and Ptolemaeus' cases.

A circle is stored generatively: a height and a word of horosphere-preserving
generators (dilations allowed). Its points are images of the standard circle
``{(x, 0, u0)} + {infinity}`` where ``u0`` is picked so that the dilations in
the word land on the stored height. Parameters are floats, ``math.inf``
standing for the point at infinity of the circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .core import (
    INFINITY,
    ClosurePoint,
    DegenerateParams,
    Dilation,
    GeometryError,
    InversionClosure,
    InversionHoro,
    NoEqualityHolds,
    Point,
    Quadruple,
    UndefinedImage,
    make_quadruple,
)
from .crossratio import x1_x2
from .cygan import apply_generator, is_similarity

EQUALITY_TOL = 1e-9


def _is_inf(t: float) -> bool:
    return math.isinf(t)


@dataclass(frozen=True)
class RCircle:
    height: float = 0.0
    word: tuple = ()

    def __post_init__(self):
        if not (self.height >= 0 and math.isfinite(self.height)):
            raise GeometryError(f"height must be finite and nonnegative, got {self.height!r}")
        word = tuple(self.word)
        if any(isinstance(g, InversionClosure) for g in word):
            raise GeometryError("closure inversion does not preserve horospheres")
        object.__setattr__(self, "word", word)

    @property
    def base_height(self) -> float:
        """Height of the standard circle the word is applied to."""
        scale = 1.0
        for g in self.word:
            if isinstance(g, Dilation):
                scale *= g.delta
        return self.height / (scale * scale)


def standard_point(u: float, t: float) -> ClosurePoint:
    if _is_inf(t):
        return INFINITY
    return Point(complex(t, 0.0), 0.0, u)


def circle_point(c: RCircle, t: float) -> ClosurePoint:
    u0 = c.base_height
    p = standard_point(u0, t)
    for stage, g in enumerate(c.word):
        if p is INFINITY and u0 > 0 and isinstance(g, InversionHoro):
            # the image of infinity would be (0, 0, u), which depends on the horosphere
            raise UndefinedImage(f"stage {stage}: infinity on a positive-height circle",
                                 stage=stage)
        try:
            p = apply_generator(g, p)
        except UndefinedImage as exc:
            raise UndefinedImage(f"stage {stage}: {exc}", stage=stage) from None
    return p


def separates(a: float, c: float, b: float, d: float) -> bool:
    """True iff ``a`` and ``c`` separate ``b`` and ``d`` on the real projective line."""
    params = (a, c, b, d)
    for i in range(4):
        for j in range(i + 1, 4):
            pi, pj = params[i], params[j]
            if pi == pj or (_is_inf(pi) and _is_inf(pj)):
                raise DegenerateParams(f"coincident parameters {pi!r}")
    # ((b - a)(d - c)) / ((d - a)(b - c)), dropping the two factors holding infinity
    factors_num = [(b, a), (d, c)]
    factors_den = [(d, a), (b, c)]
    sign = 1.0
    for x, y in factors_num + factors_den:
        if _is_inf(x) or _is_inf(y):
            continue
        sign *= math.copysign(1.0, x - y)
    return sign < 0


class Pattern(Enum):
    """Which pair separates the other: the three Ptolemaeus cases."""

    P13_SEPARATES_24 = 1
    P12_SEPARATES_34 = 2
    P14_SEPARATES_23 = 3


def separation_pattern(t1: float, t2: float, t3: float, t4: float) -> Pattern:
    if separates(t1, t3, t2, t4):
        return Pattern.P13_SEPARATES_24
    if separates(t1, t2, t3, t4):
        return Pattern.P12_SEPARATES_34
    if separates(t1, t4, t2, t3):
        return Pattern.P14_SEPARATES_23
    raise AssertionError("four distinct points on a circle always have a separating pair")


class CircleQuadruple(NamedTuple):
    quadruple: Quadruple
    pattern: Pattern


def quadruple_on_circle(c: RCircle, t1: float, t2: float, t3: float, t4: float) -> CircleQuadruple:
    pattern = separation_pattern(t1, t2, t3, t4)
    points = [circle_point(c, t) for t in (t1, t2, t3, t4)]
    return CircleQuadruple(make_quadruple(*points), pattern)


class CaseResult(NamedTuple):
    case: Pattern
    expected: Optional[Pattern]
    x1: float
    x2: float
    residuals: tuple  # |x1-x2-1|, |x2-x1-1|, |x1+x2-1| over max(x1, x2, 1)

    @property
    def matches(self) -> bool:
        return self.expected is None or self.case is self.expected

    @property
    def margin(self) -> float:
        """Smallest scaled residual among the equalities that do not hold."""
        return min(r for k, r in enumerate(self.residuals) if k + 1 != self.case.value)


def case_residuals(x1: float, x2: float) -> tuple:
    scale = max(x1, x2, 1.0)
    return (abs(x1 - x2 - 1.0) / scale,
            abs(x2 - x1 - 1.0) / scale,
            abs(x1 + x2 - 1.0) / scale)


def ptolemaeus_case(q: Quadruple, pattern: Optional[Pattern] = None,
                    tol: float = EQUALITY_TOL) -> CaseResult:
    """Identify which Ptolemaeus equality holds for ``q``.

    Raises :class:`NoEqualityHolds` when none is satisfied within ``tol``.
    """
    x1, x2 = x1_x2(q)
    res = case_residuals(x1, x2)
    holding = [k for k, r in enumerate(res) if r <= tol]
    if not holding:
        raise NoEqualityHolds(
            f"no equality within {tol:g}: X1={x1!r} X2={x2!r} residuals={res!r}")
    best = min(holding, key=lambda k: res[k])
    return CaseResult(Pattern(best + 1), pattern, x1, x2, res)


def sample_parameters(n: int) -> list:
    """``n`` finite parameters, evenly spaced in angle around the circle."""
    if n < 1:
        raise ValueError("n must be positive")
    return [math.tan(math.pi * (k + 0.5) / n - math.pi / 2) for k in range(n)]


def is_straight(c: RCircle) -> bool:
    """Circles whose word has no horospherical inversion pass through infinity."""
    return is_similarity(c.word) is not None


def collinearity_defect(points: Sequence[ClosurePoint]) -> float:
    """Ratio of the second to the first singular value of the centred points.

    Points live in the Euclidean coordinates ``(Re z, Im z, v)``; the ratio is
    zero exactly when the finite points are collinear.
    """
    finite = [p for p in points if p is not INFINITY]
    xyz = np.array([[p.zeta.real, p.zeta.imag, p.v] for p in finite])
    if len(xyz) < 3:
        return 0.0
    center = xyz.mean(axis=0)
    _, s, _ = np.linalg.svd(xyz - center, full_matrices=False)
    return float(s[1] / s[0]) if s[0] > 0 else 0.0
