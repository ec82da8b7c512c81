"""Heisenberg group arithmetic, the Koranyi gauge and the boundary metric.

The group law is ``(z, v) * (z', v') = (z + z', v + v' + 2 Im(conj(z') z))``.
The metric is computed two ways: from the gauge of ``p^-1 * q`` and from the
Hermitian pairing of standard lifts. The second is only used as an oracle.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .core import INFINITY, GeometryError, HeisenbergPoint

IDENTITY = HeisenbergPoint(0j, 0.0)
SQRT2 = math.sqrt(2.0)


class LiftVector(NamedTuple):
    """A vector of C^{2,1}; standard lifts have ``c3 == 1``."""

    c1: complex
    c2: complex
    c3: complex


def h_mul(p: HeisenbergPoint, q: HeisenbergPoint) -> HeisenbergPoint:
    cocycle = 2.0 * (q.zeta.conjugate() * p.zeta).imag
    return HeisenbergPoint(p.zeta + q.zeta, p.v + q.v + cocycle)


def h_inverse(p: HeisenbergPoint) -> HeisenbergPoint:
    return HeisenbergPoint(-p.zeta, -p.v)


def koranyi_gauge(p: HeisenbergPoint) -> float:
    """``(|z|^4 + v^2)^(1/4)``, i.e. ``sqrt(| -|z|^2 + i v |)``."""
    z = p.zeta
    return math.sqrt(abs(complex(z.real * z.real + z.imag * z.imag, p.v)))


def d_heis(p: HeisenbergPoint, q: HeisenbergPoint) -> float:
    return koranyi_gauge(h_mul(h_inverse(p), q))


def standard_lift_boundary(p: HeisenbergPoint) -> LiftVector:
    z = p.zeta
    return LiftVector(complex(-abs(z) ** 2, p.v), SQRT2 * z, 1 + 0j)


def hermitian_form(z: LiftVector, w: LiftVector) -> complex:
    """Signature (2,1) form ``conj(w3) z1 + conj(w2) z2 + conj(w1) z3``."""
    return (w.c3.conjugate() * z.c1 + w.c2.conjugate() * z.c2
            + w.c1.conjugate() * z.c3)


def d_heis_via_lift(p: HeisenbergPoint, q: HeisenbergPoint) -> float:
    pairing = hermitian_form(standard_lift_boundary(p), standard_lift_boundary(q))
    return math.sqrt(abs(pairing))


def inversion_coordinates(z: complex, v: float, u: float = 0.0):
    """``(z/D, -v/|D|^2, u/|D|^2)`` with ``D = -|z|^2 - u + iv``, or ``None`` at the origin.

    The coordinates are first scaled by a power of two so that ``|D|^2``
    cannot underflow; the scaling is exact.
    """
    size = max(abs(z.real), abs(z.imag), math.sqrt(abs(v)), math.sqrt(u))
    if size == 0:
        return None
    e = math.frexp(size)[1]
    zs = complex(math.ldexp(z.real, -e), math.ldexp(z.imag, -e))
    vs, us = math.ldexp(v, -2 * e), math.ldexp(u, -2 * e)
    d = complex(-(zs.real * zs.real + zs.imag * zs.imag) - us, vs)
    m = d.real * d.real + d.imag * d.imag
    w = zs / d
    try:
        return (complex(math.ldexp(w.real, -e), math.ldexp(w.imag, -e)),
                math.ldexp(-vs / m, -2 * e), math.ldexp(us / m, -2 * e))
    except OverflowError:
        raise GeometryError("the image is too far out to represent") from None


def boundary_inversion(p: HeisenbergPoint):
    """Inversion of the boundary; sends the identity to :data:`INFINITY`."""
    image = inversion_coordinates(p.zeta, p.v)
    if image is None:
        return INFINITY
    return HeisenbergPoint(image[0], image[1])


def translate(g: HeisenbergPoint, p: HeisenbergPoint) -> HeisenbergPoint:
    """Left translation ``T_g(p) = g * p``."""
    return h_mul(g, p)


def rotate(theta: float, p: HeisenbergPoint) -> HeisenbergPoint:
    return HeisenbergPoint(p.zeta * complex(math.cos(theta), math.sin(theta)), p.v)


def dilate(delta: float, p: HeisenbergPoint) -> HeisenbergPoint:
    return HeisenbergPoint(delta * p.zeta, delta * delta * p.v)


def conjugate(p: HeisenbergPoint) -> HeisenbergPoint:
    return HeisenbergPoint(p.zeta.conjugate(), -p.v)
