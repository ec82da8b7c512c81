import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ptolemaean import (
    INFINITY,
    Conjugation,
    DegenerateQuadruple,
    Dilation,
    GeometryError,
    InversionClosure,
    InversionHoro,
    ParseError,
    Point,
    Rotation,
    Translation,
    format_point,
    format_word,
    make_quadruple,
    parse_point,
    parse_word,
    points_equal,
)
from ptolemaean.core import format_real

from conftest import closure_points, similarity_generators


def P(a, b, v, u):
    return Point(complex(a, b), v, u)


class TestPointsEqual:
    def test_infinity_equals_itself(self):
        assert points_equal(INFINITY, INFINITY)

    def test_identical_coordinates(self):
        assert points_equal(P(1, 0, 0, 0), P(1, 0, 0, 0))

    def test_equality_is_exact(self):
        assert not points_equal(P(1, 0, 0, 0), P(1, 0, 0, 1e-12))

    def test_infinity_differs_from_finite(self):
        assert not points_equal(INFINITY, P(0, 0, 0, 0))


class TestMakeQuadruple:
    def test_with_infinity(self):
        q = make_quadruple(INFINITY, P(2, 0, 0, 0), P(1, 0, 0, 0), P(0, 0, 0, 0))
        assert q.p1 is INFINITY

    def test_two_infinities(self):
        with pytest.raises(DegenerateQuadruple):
            make_quadruple(INFINITY, INFINITY, P(1, 0, 0, 0), P(0, 0, 0, 0))

    def test_distinct_heights(self):
        make_quadruple(*(P(0, 0, 0, u) for u in (1, 2, 3, 4)))

    @given(st.lists(closure_points, min_size=4, max_size=4))
    def test_rejects_exactly_the_coincident_pairs(self, pts):
        coincident = any(points_equal(pts[i], pts[j])
                         for i in range(4) for j in range(i + 1, 4))
        if coincident:
            with pytest.raises(DegenerateQuadruple):
                make_quadruple(*pts)
        else:
            assert tuple(make_quadruple(*pts)) == tuple(pts)


class TestPointValidation:
    @pytest.mark.parametrize("bad", [
        dict(zeta=0j, v=0.0, u=-1.0),
        dict(zeta=0j, v=math.nan, u=0.0),
        dict(zeta=complex(math.inf, 0), v=0.0, u=0.0),
        dict(zeta=0j, v=0.0, u=math.inf),
    ])
    def test_rejects(self, bad):
        with pytest.raises(GeometryError):
            Point(**bad)

    def test_infinity_is_a_singleton(self):
        assert type(INFINITY)() is INFINITY
        assert str(INFINITY) == "inf"

    def test_dilation_must_be_positive(self):
        for bad in (0.0, -1.0, math.nan):
            with pytest.raises(GeometryError):
                Dilation(bad)

    def test_extended_reals_are_totally_ordered(self):
        assert 1e300 < math.inf and not math.inf < math.inf
        assert sorted([math.inf, 2.0, 0.0]) == [0.0, 2.0, math.inf]


class TestText:
    @pytest.mark.parametrize("x, text", [
        (2.0, "2"), (-0.0, "-0"), (0.1, "0.1"), (1e20, "1e+20"),
        (math.inf, "inf"), (1 / 3, "0.3333333333333333"),
    ])
    def test_format_real(self, x, text):
        assert format_real(x) == text

    @given(closure_points)
    def test_point_round_trip(self, p):
        q = parse_point(format_point(p))
        assert points_equal(p, q)
        if p is not INFINITY:
            for a, b in ((p.zeta.real, q.zeta.real), (p.zeta.imag, q.zeta.imag), (p.v, q.v)):
                assert math.copysign(1, a) == math.copysign(1, b)

    @given(st.floats(allow_nan=False, allow_infinity=False, min_value=-1e100, max_value=1e100))
    def test_every_double_round_trips(self, x):
        p = parse_point(f"{format_real(x)},0,{format_real(x)},{format_real(abs(x))}")
        assert p.zeta.real == x and p.v == x and p.u == abs(x)

    @pytest.mark.parametrize("text", [
        "1,0,0", "1,0,0,0,0", " 1,0,0,0", "1, 0,0,0", "a,0,0,0", "nan,0,0,0",
        "inf,0,0,0", "1e101,0,0,0", "0,0,0,-1", "", "INF",
    ])
    def test_parse_rejects(self, text):
        with pytest.raises(ParseError):
            parse_point(text)

    def test_parse_accepts_the_magnitude_limit(self):
        assert parse_point("1e100,0,0,0").zeta.real == 1e100

    @given(st.lists(st.one_of(similarity_generators,
                              st.sampled_from([InversionClosure(), InversionHoro()])),
                    max_size=6))
    def test_word_round_trip(self, word):
        assert parse_word(format_word(word)) == tuple(word)

    def test_word_text(self):
        word = (Translation(1 + 2j, 3), Rotation(0.5), Dilation(2), Conjugation(),
                InversionClosure(), InversionHoro())
        assert format_word(word) == "T:1,2,3;R:0.5;D:2;J;I;Iu"
        assert parse_word("") == ()

    @pytest.mark.parametrize("text", ["X", "T:1,2", "D:0", "D:-1", "R:", "T:1,2,3;", "i"])
    def test_word_parse_rejects(self, text):
        with pytest.raises(ParseError):
            parse_word(text)
