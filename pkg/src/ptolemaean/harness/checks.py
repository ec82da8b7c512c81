"""Single-instance checks used by the campaigns."""

from __future__ import annotations

from typing import NamedTuple

from ..core import INFINITY, ORIGIN, GeometryError, InversionClosure, Point, Quadruple
from ..crossratio import x1_x2
from ..cygan import apply_generator, rho

#: Tolerances that do not follow the campaign tolerance.
TRIANGLE_SLACK = 1e-12
TRIANGLE_EQUALITY_TOL = 1e-10
STRICT_MARGIN = 1e-12
ORACLE_TOL = 1e-12


class InequalityCheck(NamedTuple):
    passed: bool
    x1: float
    x2: float
    lower_slack: float  # x1 + x2 - 1
    upper_slack: float  # |x1 - x2| - 1


def check_ptolemaean_inequality(q: Quadruple, tol: float = 1e-9) -> InequalityCheck:
    x1, x2 = x1_x2(q)
    lower = x1 + x2 - 1.0
    upper = abs(x1 - x2) - 1.0
    return InequalityCheck(lower >= -tol and upper <= tol, x1, x2, lower, upper)


class ProductFormCheck(NamedTuple):
    passed: bool
    slacks: tuple  # sum of the other two products minus this one, scaled


def check_equivalent_ptolemaean_form(q: Quadruple, tol: float = 1e-9) -> ProductFormCheck:
    """Six-distance form ``rho13 rho24 <= rho12 rho34 + rho14 rho23`` and its two rotations."""
    if any(p is INFINITY for p in q):
        raise GeometryError("the product form needs four finite points")
    p1, p2, p3, p4 = q
    a = rho(p1, p2) * rho(p3, p4)
    b = rho(p1, p3) * rho(p2, p4)
    c = rho(p1, p4) * rho(p2, p3)
    scale = max(a, b, c)
    slacks = ((b + c - a) / scale, (a + c - b) / scale, (a + b - c) / scale)
    return ProductFormCheck(min(slacks) >= -tol, slacks)


def triangle_slack(p1, p2, p3) -> float:
    """Smallest of the three triangle slacks of a triple."""
    d12, d13, d23 = rho(p1, p2), rho(p1, p3), rho(p2, p3)
    return min(d13 + d23 - d12, d12 + d23 - d13, d12 + d13 - d23)


def triangle_defect(p1, p2, p3) -> float:
    """``rho(p1, p3) + rho(p3, p2) - rho(p1, p2)``, zero on the equality locus."""
    return rho(p1, p3) + rho(p3, p2) - rho(p1, p2)


def equality_configuration(a: float, c: float, u: float) -> tuple:
    """Triple ``(a, 0, u), (-c, 0, u), (0, 0, u)`` with ``a, c >= 0``; the triangle is flat."""
    return (Point(complex(a, 0.0), 0.0, u), Point(complex(-c, 0.0), 0.0, u),
            Point(0j, 0.0, u))


def perturbations(a: float, c: float, u: float, eps: float) -> dict:
    """The flat triple with one of its four defining conditions broken by ``eps``."""
    p1, p2, p3 = equality_configuration(a, c, u)
    return {
        "vertical": (Point(p1.zeta, eps, u), p2, p3),
        "height": (Point(p1.zeta, 0.0, u + eps), p2, p3),
        "non_real": (Point(complex(a, eps), 0.0, u), p2, p3),
        "same_sign": (p1, Point(complex(eps, 0.0), 0.0, u), p3),
    }


def inversion_defects(p, q) -> tuple:
    """Relative defects of the two closure-inversion distance identities."""
    inv = InversionClosure()
    ip, iq = apply_generator(inv, p), apply_generator(inv, q)
    rp, rq = rho(p, ORIGIN), rho(q, ORIGIN)
    first = abs(rho(ip, ORIGIN) * rp - 1.0)
    r = rho(p, q)
    second = abs(rho(ip, iq) * rp * rq - r) / r
    return first, second


def relative_change(before, after) -> float:
    return max(abs(b - a) / abs(b) for b, a in zip(before, after))
