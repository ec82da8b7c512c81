import math

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from ptolemaean import (
    INFINITY,
    DegenerateParams,
    Dilation,
    GeometryError,
    InversionClosure,
    InversionHoro,
    NoEqualityHolds,
    Point,
    Translation,
    UndefinedImage,
    make_quadruple,
)
from ptolemaean.harness.sampling import is_ill_conditioned
from ptolemaean.rcircles import (
    Pattern,
    RCircle,
    circle_point,
    collinearity_defect,
    is_straight,
    ptolemaeus_case,
    quadruple_on_circle,
    sample_parameters,
    separates,
    separation_pattern,
    standard_point,
)

from conftest import horosphere_generators, rel, similarity_generators

params = st.one_of(st.floats(-10, 10, allow_nan=False), st.just(math.inf))


def P(a, b, v, u):
    return Point(complex(a, b), v, u)


def distinct(ts):
    return len(set(ts)) == len(ts)


class TestStandardCircle:
    def test_points(self):
        assert standard_point(0, 1) == P(1, 0, 0, 0)
        assert standard_point(1, math.inf) is INFINITY
        assert standard_point(2, -3) == P(-3, 0, 0, 2)

    def test_circle_points(self):
        assert circle_point(RCircle(0, ()), 2) == P(2, 0, 0, 0)
        assert circle_point(RCircle(0, (Translation(1, 0),)), 0) == P(1, 0, 0, 0)

    def test_translated_then_inverted(self):
        c = RCircle(0, (Translation(1j, 0), InversionHoro()))
        p = circle_point(c, 0)
        # (i, 0) has denominator -1, so it goes to (-i, 0)
        assert p == P(0, -1, 0, 0)

    def test_base_height_undoes_dilations(self):
        c = RCircle(8, (Dilation(2),))
        assert c.base_height == 2
        assert circle_point(c, 1).u == 8

    def test_rejects_closure_inversion(self):
        with pytest.raises(GeometryError):
            RCircle(0, (InversionClosure(),))

    def test_infinity_on_a_raised_finite_circle_is_undefined(self):
        with pytest.raises(UndefinedImage):
            circle_point(RCircle(1, (InversionHoro(),)), math.inf)
        assert circle_point(RCircle(0, (InversionHoro(),)), math.inf) == P(0, 0, 0, 0)


class TestSeparation:
    def test_examples(self):
        assert separates(math.inf, 1, 2, 0)
        assert not separates(0, 1, 2, 3)
        assert separates(0, 2, 1, math.inf)

    def test_repeated(self):
        with pytest.raises(DegenerateParams):
            separates(1, 1, 2, 3)
        with pytest.raises(DegenerateParams):
            separates(math.inf, 1, math.inf, 3)

    @given(st.lists(params, min_size=4, max_size=4))
    def test_symmetries(self, ts):
        assume(distinct(ts))
        a, c, b, d = ts
        s = separates(a, c, b, d)
        assert s == separates(c, a, b, d) == separates(a, c, d, b) == separates(b, d, a, c)

    @given(st.lists(params, min_size=4, max_size=4))
    def test_exactly_one_pattern(self, ts):
        assume(distinct(ts))
        t1, t2, t3, t4 = ts
        hits = [separates(t1, t3, t2, t4), separates(t1, t2, t3, t4), separates(t1, t4, t2, t3)]
        assert sum(hits) == 1
        assert separation_pattern(*ts).value == hits.index(True) + 1

    @given(st.lists(st.floats(-10, 10, allow_nan=False), min_size=4, max_size=4))
    def test_against_interval_membership(self, ts):
        assume(distinct(ts))
        lo, hi = sorted((ts[0], ts[2]))
        inside = [lo < ts[k] < hi for k in (1, 3)]
        assert separates(ts[0], ts[2], ts[1], ts[3]) == (inside[0] != inside[1])


class TestPtolemaeus:
    def test_standard_quadruple(self, standard_quadruple):
        cq = quadruple_on_circle(RCircle(0, ()), math.inf, 2, 1, 0)
        assert cq.quadruple == standard_quadruple
        assert cq.pattern is Pattern.P13_SEPARATES_24
        res = ptolemaeus_case(cq.quadruple, cq.pattern)
        assert res.case is Pattern.P13_SEPARATES_24 and res.matches
        assert res.x1 - res.x2 == 1 and res.residuals[0] == 0

    def test_raised_standard_quadruple(self):
        cq = quadruple_on_circle(RCircle(1, ()), math.inf, 2, 1, 0)
        assert cq.quadruple[1] == P(2, 0, 0, 1)

    def test_relabeled_to_the_sum_case(self, standard_quadruple):
        p1, p2, p3, p4 = standard_quadruple
        q = make_quadruple(p1, p2, p4, p3)
        res = ptolemaeus_case(q)
        assert res.case is Pattern.P14_SEPARATES_23
        assert res.x1 + res.x2 == pytest.approx(1, rel=1e-15)

    def test_repeated_parameter(self):
        with pytest.raises(DegenerateParams):
            quadruple_on_circle(RCircle(0, ()), 0, 1, 1, 2)

    def test_off_circle(self):
        q = make_quadruple(P(0, 0, 0, 0), P(1, 0, 0, 0), P(0, 1, 0, 0), INFINITY)
        with pytest.raises(NoEqualityHolds):
            ptolemaeus_case(q)

    @given(st.floats(0.1, 10), st.floats(0.1, 10), st.sampled_from([0.0, 1.0]))
    def test_closed_form(self, x2, x3, u):
        assume(x2 > x3 * (1 + 1e-6))
        cq = quadruple_on_circle(RCircle(u, ()), math.inf, x2, x3, 0)
        res = ptolemaeus_case(cq.quadruple, cq.pattern)
        assert rel(res.x1, x2 / (x2 - x3)) <= 1e-12
        assert rel(res.x2, x3 / (x2 - x3)) <= 1e-12

    @settings(suppress_health_check=[HealthCheck.filter_too_much])
    @given(st.floats(0, 10), st.lists(horosphere_generators, max_size=5),
           st.lists(params, min_size=4, max_size=4))
    def test_random_circles(self, height, word, ts):
        assume(distinct(ts))
        try:
            cq = quadruple_on_circle(RCircle(height, word), *ts)
        except (UndefinedImage, GeometryError):
            assume(False)
        assume(not is_ill_conditioned(cq.quadruple))
        res = ptolemaeus_case(cq.quadruple, cq.pattern)
        assert res.matches
        assert res.margin > 1e-9


class TestStraightLines:
    @given(st.floats(0, 10), st.lists(similarity_generators, max_size=5))
    def test_similarity_images_are_collinear(self, height, word):
        c = RCircle(height, word)
        assert is_straight(c)
        pts = [circle_point(c, t) for t in sample_parameters(50)]
        assert collinearity_defect(pts) <= 1e-9
        assert len({p.u for p in pts}) == 1

    def test_finite_circle_is_not_straight(self):
        c = RCircle(0, (Translation(1j, 0), InversionHoro()))
        assert not is_straight(c)
        pts = [circle_point(c, t) for t in sample_parameters(50)]
        assert collinearity_defect(pts) > 1e-2

    def test_sample_parameters(self):
        ts = sample_parameters(4)
        assert len(ts) == 4 and ts == sorted(ts) and all(math.isfinite(t) for t in ts)
        with pytest.raises(ValueError):
            sample_parameters(0)
