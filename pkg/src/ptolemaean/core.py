"""Points, generators and text formats shared by every other module.

A point of the compactified space is either a :class:`Point` given by
horospherical coordinates ``(zeta, v, u)`` or the singleton :data:`INFINITY`.
Complex quantities are plain Python ``complex`` numbers and extended
nonnegative reals are plain ``float`` values where ``math.inf`` plays the
role of the point at infinity of the metric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

#: Coordinates above this magnitude are rejected; the metric squares and
#: fourth-powers them.
MAX_COORDINATE = 1e100


class GeometryError(ValueError):
    """Base class for all domain errors raised by the package."""


class DegenerateQuadruple(GeometryError):
    pass


class UndefinedImage(GeometryError):
    """A transformation has no image at the given point.

    ``stage`` is the index of the failing generator when raised from a word.
    """

    def __init__(self, message: str, stage: int | None = None):
        super().__init__(message)
        self.stage = stage


class HeightMismatch(GeometryError):
    pass


class NotInterior(GeometryError):
    pass


class BadBasePoint(GeometryError):
    pass


class DegenerateParams(GeometryError):
    pass


class NoEqualityHolds(GeometryError):
    pass


class ParseError(GeometryError):
    pass


def _check_real(name: str, x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise GeometryError(f"{name} must be finite, got {x!r}")
    return x


@dataclass(frozen=True)
class HeisenbergPoint:
    """A boundary point ``(zeta, v)`` of the Heisenberg group."""

    zeta: complex
    v: float

    def __post_init__(self):
        z = complex(self.zeta)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise GeometryError(f"zeta must be finite, got {z!r}")
        object.__setattr__(self, "zeta", z)
        object.__setattr__(self, "v", _check_real("v", self.v))


@dataclass(frozen=True)
class Point:
    """A finite point ``(zeta, v, u)``; ``u == 0`` on the boundary."""

    zeta: complex
    v: float
    u: float = 0.0

    def __post_init__(self):
        z = complex(self.zeta)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise GeometryError(f"zeta must be finite, got {z!r}")
        object.__setattr__(self, "zeta", z)
        object.__setattr__(self, "v", _check_real("v", self.v))
        u = _check_real("u", self.u)
        if u < 0:
            raise GeometryError(f"height u must be nonnegative, got {u!r}")
        object.__setattr__(self, "u", u)

    @property
    def is_boundary(self) -> bool:
        return self.u == 0.0

    @property
    def horizontal(self) -> HeisenbergPoint:
        """Projection to the Heisenberg group, forgetting the height."""
        return HeisenbergPoint(self.zeta, self.v)

    def __str__(self):
        return format_point(self)


class _Infinity:
    """The distinguished point at infinity. Use the :data:`INFINITY` singleton."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

ClosurePoint = Union[Point, _Infinity]

#: The origin ``o`` of the boundary.
ORIGIN = Point(0j, 0.0, 0.0)


def is_infinity(p) -> bool:
    return p is INFINITY


def points_equal(p: ClosurePoint, q: ClosurePoint) -> bool:
    """Exact equality: both infinite, or finite with identical coordinates."""
    if p is INFINITY or q is INFINITY:
        return p is q
    return p.zeta == q.zeta and p.v == q.v and p.u == q.u


class Quadruple(NamedTuple):
    """Four pairwise distinct points. Build with :func:`make_quadruple`."""

    p1: ClosurePoint
    p2: ClosurePoint
    p3: ClosurePoint
    p4: ClosurePoint


def make_quadruple(p1, p2, p3, p4) -> Quadruple:
    pts = (p1, p2, p3, p4)
    for i in range(4):
        for j in range(i + 1, 4):
            if points_equal(pts[i], pts[j]):
                raise DegenerateQuadruple(
                    f"points {i + 1} and {j + 1} coincide: {format_point(pts[i])}"
                )
    return Quadruple(*pts)


# Generators -----------------------------------------------------------------

@dataclass(frozen=True)
class Translation:
    """Left Heisenberg translation by ``(zeta, v)``."""

    zeta: complex
    v: float

    def __post_init__(self):
        object.__setattr__(self, "zeta", complex(self.zeta))
        object.__setattr__(self, "v", float(self.v))


@dataclass(frozen=True)
class Rotation:
    theta: float


@dataclass(frozen=True)
class Dilation:
    delta: float

    def __post_init__(self):
        if not (self.delta > 0 and math.isfinite(self.delta)):
            raise GeometryError(f"dilation factor must be positive, got {self.delta!r}")


@dataclass(frozen=True)
class Conjugation:
    pass


@dataclass(frozen=True)
class InversionClosure:
    """Inversion of the whole closure, exchanging ``o`` and infinity."""


@dataclass(frozen=True)
class InversionHoro:
    """Boundary inversion applied to ``(zeta, v)`` at fixed height."""


Generator = Union[Translation, Rotation, Dilation, Conjugation, InversionClosure, InversionHoro]
GeneratorWord = tuple


# Text formats ---------------------------------------------------------------

def format_real(x: float) -> str:
    """Shortest decimal that round-trips to ``x`` exactly.

    Integral values print without a trailing ``.0`` and ``-0.0`` keeps its sign.
    """
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0.0:
        return "-0" if math.copysign(1.0, x) < 0 else "0"
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def _parse_real(text: str, what: str) -> float:
    if text != text.strip() or not text:
        raise ParseError(f"bad {what}: {text!r}")
    try:
        x = float(text)
    except ValueError:
        raise ParseError(f"bad {what}: {text!r}") from None
    if not math.isfinite(x) or abs(x) > MAX_COORDINATE:
        raise ParseError(f"{what} out of range: {text!r}")
    return x


def format_point(p: ClosurePoint) -> str:
    if p is INFINITY:
        return "inf"
    return ",".join(format_real(c) for c in (p.zeta.real, p.zeta.imag, p.v, p.u))


def parse_point(text: str) -> ClosurePoint:
    """Parse ``inf`` or ``re,im,v,u``."""
    if text == "inf":
        return INFINITY
    parts = text.split(",")
    if len(parts) != 4:
        raise ParseError(f"expected 'inf' or four comma-separated numbers, got {text!r}")
    re, im, v, u = (_parse_real(s, "coordinate") for s in parts)
    if u < 0:
        raise ParseError(f"height must be nonnegative: {text!r}")
    return Point(complex(re, im), v, u)


def format_generator(g: Generator) -> str:
    if isinstance(g, Translation):
        return "T:" + ",".join(format_real(c) for c in (g.zeta.real, g.zeta.imag, g.v))
    if isinstance(g, Rotation):
        return "R:" + format_real(g.theta)
    if isinstance(g, Dilation):
        return "D:" + format_real(g.delta)
    if isinstance(g, Conjugation):
        return "J"
    if isinstance(g, InversionClosure):
        return "I"
    if isinstance(g, InversionHoro):
        return "Iu"
    raise TypeError(f"not a generator: {g!r}")


def format_word(word: Sequence[Generator]) -> str:
    return ";".join(format_generator(g) for g in word)


def parse_generator(text: str) -> Generator:
    head, sep, args = text.partition(":")
    if not sep:
        if head == "J":
            return Conjugation()
        if head == "I":
            return InversionClosure()
        if head == "Iu":
            return InversionHoro()
        raise ParseError(f"unknown generator {text!r}")
    nums = [_parse_real(a, "generator argument") for a in args.split(",")]
    if head == "T" and len(nums) == 3:
        return Translation(complex(nums[0], nums[1]), nums[2])
    if head == "R" and len(nums) == 1:
        return Rotation(nums[0])
    if head == "D" and len(nums) == 1:
        if nums[0] <= 0:
            raise ParseError(f"dilation factor must be positive: {text!r}")
        return Dilation(nums[0])
    raise ParseError(f"bad generator {text!r}")


def parse_word(text: str) -> tuple:
    """Parse ``T:re,im,v;R:theta;D:delta;J;I;Iu``. The empty string is the identity."""
    if text == "":
        return ()
    return tuple(parse_generator(item) for item in text.split(";"))
