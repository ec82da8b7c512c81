"""The extended Cygan metric and the transformations acting on the closure."""

from __future__ import annotations

import math
from typing import Iterable, Optional

from .core import (
    INFINITY,
    ClosurePoint,
    Conjugation,
    Dilation,
    GeometryError,
    HeightMismatch,
    InversionClosure,
    InversionHoro,
    Point,
    Rotation,
    Translation,
    UndefinedImage,
    format_point,
)
from .heisenberg import SQRT2, LiftVector, d_heis, hermitian_form, inversion_coordinates


def rho(p: ClosurePoint, q: ClosurePoint) -> float:
    """Cygan distance; ``math.inf`` against infinity, ``0`` between two infinities."""
    if p is INFINITY or q is INFINITY:
        return 0.0 if p is q else math.inf
    r = _rho_scaled(p, q, 0)
    if math.isinf(r):
        # squares overflowed; work in units of 2**e where e is the coordinate size
        size = max(abs(p.zeta), abs(q.zeta), math.sqrt(abs(p.v)), math.sqrt(abs(q.v)),
                   math.sqrt(p.u), math.sqrt(q.u))
        r = _rho_scaled(p, q, math.frexp(size)[1])
        if math.isinf(r):
            raise GeometryError("distance exceeds the floating-point range")
    return r


def _rho_scaled(p: Point, q: Point, e: int) -> float:
    z1, z2 = p.zeta, q.zeta
    if e:
        z1 = complex(math.ldexp(z1.real, -e), math.ldexp(z1.imag, -e))
        z2 = complex(math.ldexp(z2.real, -e), math.ldexp(z2.imag, -e))
    dz = z1 - z2
    cross = z1.real * z2.imag - z1.imag * z2.real  # -Im(z1 * conj(z2))
    du = math.ldexp(abs(p.u - q.u), -2 * e)
    dv = math.ldexp(q.v, -2 * e) - math.ldexp(p.v, -2 * e)
    w = complex(dz.real * dz.real + dz.imag * dz.imag + du, dv + 2.0 * cross)
    if w == 0 and dz != 0:
        # |dz|^2 underflowed; only the horizontal part is left
        return math.ldexp(abs(dz), e)
    try:
        return math.ldexp(math.sqrt(abs(w)), e)
    except OverflowError:
        return math.inf


def rho_matches_d_heis(p: Point, q: Point) -> bool:
    """Check that on a common horosphere the metric is the Heisenberg one."""
    if p is INFINITY or q is INFINITY or p.u != q.u:
        raise HeightMismatch("both points must be finite and share a height")
    r = rho(p, q)
    return abs(r - d_heis(p.horizontal, q.horizontal)) <= 1e-12 * max(1.0, r)


def standard_lift(p: Point) -> LiftVector:
    """Lift ``(-|z|^2 - u + i v, sqrt(2) z, 1)``; null exactly on the boundary."""
    z = p.zeta
    return LiftVector(complex(-abs(z) ** 2 - p.u, p.v), SQRT2 * z, 1 + 0j)


def lift_pairing_modulus(p: Point, q: Point) -> float:
    """``|<lift p, lift q>|``; equals ``rho(p, q)**2`` when either point is on the boundary."""
    return abs(hermitian_form(standard_lift(p), standard_lift(q)))


def _translate(g: Translation, p: Point) -> Point:
    z, zp = p.zeta, g.zeta
    # 2 Im(zp * conj(z))
    cocycle = 2.0 * (zp.imag * z.real - zp.real * z.imag)
    return Point(z + zp, p.v + g.v + cocycle, p.u)


def _inversion_closure(p: ClosurePoint) -> ClosurePoint:
    if p is INFINITY:
        return Point(0j, 0.0, 0.0)
    image = inversion_coordinates(p.zeta, p.v, p.u)
    return INFINITY if image is None else Point(*image)


def _inversion_horo(p: ClosurePoint) -> ClosurePoint:
    if p is INFINITY:
        return Point(0j, 0.0, 0.0)
    image = inversion_coordinates(p.zeta, p.v)
    if image is None:
        if p.u == 0.0:
            return INFINITY
        raise UndefinedImage(f"horospherical inversion is undefined at {format_point(p)}")
    return Point(image[0], image[1], p.u)


def apply_generator(g, p: ClosurePoint) -> ClosurePoint:
    if isinstance(g, InversionClosure):
        return _inversion_closure(p)
    if isinstance(g, InversionHoro):
        return _inversion_horo(p)
    if p is INFINITY:
        return INFINITY
    if isinstance(g, Translation):
        return _translate(g, p)
    if isinstance(g, Rotation):
        return Point(p.zeta * complex(math.cos(g.theta), math.sin(g.theta)), p.v, p.u)
    if isinstance(g, Dilation):
        d2 = g.delta * g.delta
        return Point(g.delta * p.zeta, d2 * p.v, d2 * p.u)
    if isinstance(g, Conjugation):
        return Point(p.zeta.conjugate(), -p.v, p.u)
    raise TypeError(f"not a generator: {g!r}")


def apply_word(word: Iterable, p: ClosurePoint) -> ClosurePoint:
    """Apply generators left to right."""
    for stage, g in enumerate(word):
        try:
            p = apply_generator(g, p)
        except UndefinedImage as exc:
            raise UndefinedImage(f"stage {stage}: {exc}", stage=stage) from None
    return p


def is_similarity(word: Iterable) -> Optional[float]:
    """Scale factor of an inversion-free word, or ``None`` if it inverts."""
    factor = 1.0
    for g in word:
        if isinstance(g, (InversionClosure, InversionHoro)):
            return None
        if isinstance(g, Dilation):
            factor *= g.delta
    return factor
