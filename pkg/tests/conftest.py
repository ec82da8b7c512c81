import math

import pytest
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from ptolemaean import (
    INFINITY,
    Conjugation,
    Dilation,
    HeisenbergPoint,
    InversionClosure,
    InversionHoro,
    Point,
    Rotation,
    Translation,
)
from ptolemaean.harness.sampling import min_pairwise_distance

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

coords = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
heights = st.floats(0.01, 10, allow_nan=False)
angles = st.floats(0, 2 * math.pi, allow_nan=False)
factors = st.floats(0.1, 10, allow_nan=False)


@st.composite
def heisenberg_points(draw):
    return HeisenbergPoint(complex(draw(coords), draw(coords)), draw(coords))


@st.composite
def interior_points(draw, height=heights):
    return Point(complex(draw(coords), draw(coords)), draw(coords), draw(height))


@st.composite
def boundary_points(draw):
    return Point(complex(draw(coords), draw(coords)), draw(coords), 0.0)


finite_points = st.one_of(interior_points(), boundary_points())
closure_points = st.one_of(finite_points, st.just(INFINITY))


def well_separated(points, gap=1e-3):
    return min_pairwise_distance(points) > gap


@st.composite
def quadruples(draw, points=closure_points, gap=1e-3):
    pts = draw(st.lists(points, min_size=4, max_size=4))
    assume(well_separated(pts, gap))
    return tuple(pts)


@st.composite
def at_most_one_interior(draw):
    pts = draw(st.lists(boundary_points(), min_size=3, max_size=3)) + [draw(closure_points)]
    pts = draw(st.permutations(pts))
    assume(well_separated(pts))
    return tuple(pts)


translations = st.builds(lambda a, b, v: Translation(complex(a, b), v), coords, coords, coords)
similarity_generators = st.one_of(
    translations,
    st.builds(Rotation, angles),
    st.builds(Dilation, factors),
    st.just(Conjugation()),
)
horosphere_generators = st.one_of(similarity_generators, st.just(InversionHoro()))
closure_generators = st.one_of(similarity_generators, st.just(InversionClosure()))


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


@pytest.fixture
def standard_quadruple():
    return (INFINITY, Point(2 + 0j, 0, 0), Point(1 + 0j, 0, 0), Point(0j, 0, 0))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
