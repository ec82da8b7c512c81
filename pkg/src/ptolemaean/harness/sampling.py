"""Seeded samplers.

Every sample index draws from its own substream,
``numpy.random.default_rng([seed, stream, index])``, so results do not
depend on the order or the process in which samples are evaluated.
"""

from __future__ import annotations

import math

import numpy as np

from ..core import (
    INFINITY,
    ClosurePoint,
    Conjugation,
    Dilation,
    InversionClosure,
    InversionHoro,
    Point,
    Rotation,
    Translation,
)
from ..cygan import rho

INTERIOR = "interior"
BOUNDARY = "boundary"
CLOSURE = "closure"
REGIONS = (INTERIOR, BOUNDARY, CLOSURE)

#: Quadruples whose closest pair is nearer than this are resampled.
NEAR_DEGENERATE = 1e-8

#: Smallest allowed ratio of the closest-pair distance to the coordinate size.
#: Below it the cancellation in the distance costs more than 1e-10 relative.
MIN_CONDITION = 1e-3

SIMILARITY_KINDS = ("T", "R", "D", "J")


def substream(seed: int, stream: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, stream, index])


def _uniform(rng, lo, hi):
    return lo + (hi - lo) * rng.random()


def sample_point(rng: np.random.Generator, scale: float = 10.0,
                 region: str = INTERIOR) -> ClosurePoint:
    """Uniform point in the box ``[-scale, scale]^3``.

    Interior heights are uniform on ``(0, scale]``. The closure region returns
    infinity one time in ten and otherwise an interior or boundary point with
    equal odds.
    """
    if region == CLOSURE:
        r = rng.random()
        if r < 0.1:
            return INFINITY
        region = INTERIOR if r < 0.55 else BOUNDARY
    elif region not in REGIONS:
        raise ValueError(f"unknown region {region!r}")
    re, im, v = (_uniform(rng, -scale, scale) for _ in range(3))
    u = scale * (1.0 - rng.random()) if region == INTERIOR else 0.0
    return Point(complex(re, im), v, u)


def min_pairwise_distance(points) -> float:
    best = math.inf
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            best = min(best, rho(points[i], points[j]))
    return best


def is_near_degenerate(points) -> bool:
    """Coincident pairs, repeated infinities, or a pair closer than ``NEAR_DEGENERATE``."""
    return min_pairwise_distance(points) < NEAR_DEGENERATE


def coordinate_size(points) -> float:
    """Largest gauge-like coordinate magnitude among the finite points."""
    size = 0.0
    for p in points:
        if p is not INFINITY:
            size = max(size, abs(p.zeta), math.sqrt(abs(p.v)), math.sqrt(p.u))
    return size


def is_ill_conditioned(points, ratio: float = MIN_CONDITION) -> bool:
    """Near-degenerate, or so clustered relative to their size that float64 distances are unreliable."""
    d = min_pairwise_distance(points)
    return d < NEAR_DEGENERATE or d < ratio * coordinate_size(points)


def sample_quadruple(rng, scale: float, region: str = CLOSURE):
    """Four points from ``region``; returns ``(points, rejections)``."""
    rejections = 0
    while True:
        pts = tuple(sample_point(rng, scale, region) for _ in range(4))
        if not is_near_degenerate(pts):
            return pts, rejections
        rejections += 1


def sample_generator(rng, scale: float, kinds) -> object:
    kind = kinds[int(rng.integers(len(kinds)))]
    if kind == "T":
        re, im, v = (_uniform(rng, -scale, scale) for _ in range(3))
        return Translation(complex(re, im), v)
    if kind == "R":
        return Rotation(_uniform(rng, 0.0, 2.0 * math.pi))
    if kind == "D":
        return Dilation(math.exp(_uniform(rng, -1.0, 1.0)))
    if kind == "J":
        return Conjugation()
    if kind == "I":
        return InversionClosure()
    if kind == "Iu":
        return InversionHoro()
    raise ValueError(f"unknown generator kind {kind!r}")


def sample_word(rng, scale: float, kinds, max_length: int = 5, min_length: int = 1) -> tuple:
    n = int(rng.integers(min_length, max_length + 1))
    return tuple(sample_generator(rng, scale, kinds) for _ in range(n))
