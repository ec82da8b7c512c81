"""Reduction of a quadruple to one whose last point is infinity.

Points are first relabelled so that the chosen base point sits in the last
slot. Only the double transpositions ``(2,1,4,3)``, ``(3,4,1,2)`` and
``(4,3,2,1)`` are used; they fix both cross-ratio components, unlike a plain
swap. Then a Heisenberg translation (plus a uniform height shift for interior
quadruples) brings the base point to ``o`` and the closure inversion sends it
to infinity.
"""

from __future__ import annotations

from typing import NamedTuple

from .core import (
    INFINITY,
    ORIGIN,
    BadBasePoint,
    InversionClosure,
    NotInterior,
    Point,
    Quadruple,
    Translation,
    make_quadruple,
    points_equal,
)
from .cygan import apply_generator

# _RELABEL[k][i] is the old index placed at new position i; moves k to slot 3.
_RELABEL = {
    0: (3, 2, 1, 0),
    1: (2, 3, 0, 1),
    2: (1, 0, 3, 2),
    3: (0, 1, 2, 3),
}


class Reduction(NamedTuple):
    quadruple: Quadruple
    word: tuple
    permutation: tuple
    height_shift: float = 0.0


def relabel(q: Quadruple, k: int) -> tuple:
    """Move entry ``k`` to the last slot; returns ``(quadruple, permutation)``."""
    perm = _RELABEL[k]
    return Quadruple(*(q[i] for i in perm)), perm


def _lowest_point(q: Quadruple) -> int:
    heights = [p.u for p in q]
    return heights.index(min(heights))


def _translate_down(q: Quadruple) -> tuple:
    base = q[3]
    g = Translation(0.0 - base.zeta, 0.0 - base.v)
    moved = []
    for p in q:
        t = apply_generator(g, p)
        moved.append(Point(t.zeta, t.v, p.u - base.u))
    return Quadruple(*moved), g


def translate_min_height_to_origin(q: Quadruple) -> Quadruple:
    """Bring the lowest point (first one on ties) to ``o``, keeping all distances."""
    for p in q:
        if p is INFINITY or p.u <= 0:
            raise NotInterior("all four points must be interior")
    q, _ = relabel(q, _lowest_point(q))
    return _translate_down(q)[0]


def invert_to_infinity(q: Quadruple) -> Quadruple:
    if q[3] is INFINITY or not points_equal(q[3], ORIGIN):
        raise BadBasePoint("the fourth point must be o")
    if any(p is INFINITY for p in q[:3]):
        raise BadBasePoint("infinity may only appear as the image of o")
    inv = InversionClosure()
    return make_quadruple(*(apply_generator(inv, p) for p in q))


def reduce_to_infinity_form(q: Quadruple) -> Reduction:
    """Return an equivalent quadruple ending in infinity and how it was obtained."""
    for k, p in enumerate(q):
        if p is INFINITY:
            moved, perm = relabel(q, k)
            return Reduction(moved, (), perm)

    boundary = [k for k, p in enumerate(q) if p.u == 0.0]
    if boundary:
        k = 3 if 3 in boundary else boundary[0]
        q, perm = relabel(q, k)
        word = []
        shift = 0.0
        if not points_equal(q[3], ORIGIN):
            q, g = _translate_down(q)
            word.append(g)
    else:
        q, perm = relabel(q, _lowest_point(q))
        shift = q[3].u
        q, g = _translate_down(q)
        word = [g]
    word.append(InversionClosure())
    return Reduction(invert_to_infinity(q), tuple(word), perm, shift)
