"""Cygan metric geometry on the closure of the complex hyperbolic plane."""

from .core import (
    INFINITY,
    ORIGIN,
    BadBasePoint,
    Conjugation,
    DegenerateParams,
    DegenerateQuadruple,
    Dilation,
    GeometryError,
    HeightMismatch,
    HeisenbergPoint,
    InversionClosure,
    InversionHoro,
    NoEqualityHolds,
    NotInterior,
    ParseError,
    Point,
    Quadruple,
    Rotation,
    Translation,
    UndefinedImage,
    format_point,
    format_word,
    make_quadruple,
    parse_point,
    parse_word,
    points_equal,
)
from .crossratio import CrossRatioPair, cross_ratio, x1_x2
from .cygan import apply_generator, apply_word, is_similarity, rho
from .normalize import reduce_to_infinity_form

__version__ = "0.1.0"

__all__ = [
    "INFINITY",
    "ORIGIN",
    "BadBasePoint",
    "Conjugation",
    "DegenerateParams",
    "DegenerateQuadruple",
    "Dilation",
    "GeometryError",
    "HeightMismatch",
    "HeisenbergPoint",
    "InversionClosure",
    "InversionHoro",
    "NoEqualityHolds",
    "NotInterior",
    "ParseError",
    "Point",
    "Quadruple",
    "Rotation",
    "Translation",
    "UndefinedImage",
    "format_point",
    "format_word",
    "make_quadruple",
    "parse_point",
    "parse_word",
    "points_equal",
    "CrossRatioPair",
    "cross_ratio",
    "x1_x2",
    "apply_generator",
    "apply_word",
    "is_similarity",
    "rho",
    "reduce_to_infinity_form",
]
