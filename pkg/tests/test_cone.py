import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rectloci.cone import (
    HRCone,
    LinePair,
    Slab,
    cone_from_angles,
    cone_through_ellipse,
    generating_lines,
    level_curve,
    midpoint_chord,
    pair_angles,
    surface_from_pair,
    surface_height_sq,
)
from rectloci.errors import BadAngle, BadAxes, IdenticalLines, NonPositiveHeight, NotPositiveDefinite, ParallelPair
from rectloci.geom import Line, Point2, SymMat2, eig_sym2

from conftest import angle, points, spd_det1

S3 = 1.0 / math.sqrt(3.0)


def _pair(*slopes_intercepts):
    return LinePair(*(Line.from_slope_intercept(m, b) for m, b in slopes_intercepts))


def test_linepair_rejects_identical():
    with pytest.raises(IdenticalLines):
        LinePair(Line.horizontal(1.0), Line((0.0, -2.0), -2.0))


def test_linepair_kinds():
    p = _pair((1, 0), (-1, 2))
    assert p.kind == "intersecting" and p.crossing.close_to((1, 1))
    q = LinePair(Line.horizontal(0), Line.horizontal(2))
    assert q.kind == "parallel" and q.halfgap == 1.0 and q.midline.same_as(Line.horizontal(1))
    with pytest.raises(ParallelPair):
        q.crossing


def test_hrcone_validation():
    with pytest.raises(NotPositiveDefinite):
        HRCone(SymMat2.diag(2.0, 2.0), (0, 0))
    with pytest.raises(NotPositiveDefinite):
        HRCone(SymMat2.diag(-1.0, -1.0), (0, 0))


@pytest.mark.parametrize(
    "pair, p, e1, e2, h",
    [
        (_pair((1, 0), (-1, 0)), (0, 1), (1, 1), (-1, 1), 1.0),
        (_pair((2, 0), (-1, 0)), (1, 1), (4 / 3, 8 / 3), (2 / 3, -2 / 3), None),
        (_pair((1, 0), (-1, 0)), (0, 0), (0, 0), (0, 0), 0.0),
    ],
)
def test_midpoint_chord_examples(pair, p, e1, e2, h):
    c = midpoint_chord(pair, p)
    assert c.p1.close_to(e1, 1e-12) and c.p2.close_to(e2, 1e-12)
    assert c.midpoint.close_to(p)
    if h is not None:
        assert c.halflength == pytest.approx(h)


def _slope_formula_chord(m1, b1, m2, b2, x, y):
    """Endpoints from the slope-intercept elimination, for non-vertical lines."""
    x1 = (2 * y - b1 - b2 - 2 * m2 * x) / (m1 - m2)
    x2 = 2 * x - x1
    return (x1, m1 * x1 + b1), (x2, m2 * x2 + b2)


@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3), points)
def test_midpoint_chord_matches_slope_formulas(m1, b1, m2, b2, p):
    if abs(m1 - m2) < 0.1:
        return
    c = midpoint_chord(_pair((m1, b1), (m2, b2)), p)
    e1, e2 = _slope_formula_chord(m1, b1, m2, b2, *p)
    assert c.p1.close_to(e1, 1e-9 * (1 + abs(e1[0]) + abs(e1[1])))
    assert c.p2.close_to(e2, 1e-9 * (1 + abs(e2[0]) + abs(e2[1])))


def test_surface_examples():
    s = surface_from_pair(_pair((1, 0), (-1, 0)))
    assert isinstance(s, HRCone) and s.A.close_to(SymMat2.identity(), 1e-15) and s.apex.close_to((0, 0))
    s = surface_from_pair(_pair((S3, 0), (-S3, 0)))
    assert s.A.close_to(SymMat2.diag(1 / 3, 3), 1e-12)
    s = surface_from_pair(LinePair(Line.horizontal(0), Line.horizontal(2)))
    assert isinstance(s, Slab) and s.halfgap == 1.0 and s.midline.same_as(Line.horizontal(1))


def test_cone_from_angles_examples():
    assert cone_from_angles(0, math.pi / 4).A.close_to(SymMat2.identity(), 1e-15)
    assert cone_from_angles(0, math.pi / 6).A.close_to(SymMat2.diag(1 / 3, 3), 1e-12)
    assert cone_from_angles(math.pi / 2, math.pi / 6).A.close_to(SymMat2.diag(3, 1 / 3), 1e-12)
    for bad in (0.0, math.pi / 2, -0.1):
        with pytest.raises(BadAngle):
            cone_from_angles(0, bad)


def test_generating_lines_examples():
    g = generating_lines(HRCone(SymMat2.diag(2, 0.5), (0, 0)))
    r2 = math.sqrt(2)
    assert g.unique and g.pair.same_as(_pair((r2, 0), (-r2, 0)))
    g = generating_lines(HRCone(SymMat2.identity(), (3, 4)))
    assert not g.unique and g.family_apex == Point2(3, 4)
    assert g.pair.same_as(LinePair(Line.vertical(3), Line.horizontal(4)))
    g = generating_lines(Slab(Line.horizontal(1), 1.0))
    assert g.pair.same_as(LinePair(Line.horizontal(0), Line.horizontal(2)))


def test_near_unit_cone_flagged():
    g = generating_lines(cone_from_angles(0.3, math.pi / 4 - 1e-8, (1, 1)))
    assert g.unique and g.low_confidence


def test_height_examples():
    assert surface_height_sq(HRCone(SymMat2.identity(), (0, 0)), (3, 4)).value == pytest.approx(25)
    c = HRCone(SymMat2.diag(0.25, 4), (0, 0))
    assert surface_height_sq(c, (2, 0)).value == pytest.approx(1)
    assert midpoint_chord(_pair((0.5, 0), (-0.5, 0)), (2, 0)).halflength ** 2 == pytest.approx(1)
    slab = Slab(Line.horizontal(1), 1.0)
    h = surface_height_sq(slab, (5, 1))
    assert h.kind == "at_least" and h.value == 1.0
    assert surface_height_sq(slab, (5, 2)).kind == "undefined"


def test_level_curve_examples():
    e = level_curve(HRCone(SymMat2.identity(), (0, 0)), 1.0)
    assert e.major == e.minor == pytest.approx(1) and e.area == pytest.approx(math.pi)
    e = level_curve(HRCone(SymMat2.diag(0.25, 4), (0, 0)), 1.0)
    assert (e.major, e.minor) == pytest.approx((2, 0.5)) and e.area == pytest.approx(math.pi)
    with pytest.raises(NonPositiveHeight):
        level_curve(HRCone(SymMat2.identity(), (0, 0)), 0.0)


@given(spd_det1(), st.floats(0.1, 10))
def test_level_curve_area_law(a, h):
    e = level_curve(HRCone(a, (0, 0)), h)
    assert e.major * e.minor == pytest.approx(h * h, rel=1e-10)
    # the ellipse really is the level set
    for t in np.linspace(0, 2 * math.pi, 7):
        d = np.array([math.cos(e.angle), math.sin(e.angle)])
        n = np.array([-d[1], d[0]])
        p = e.major * math.cos(t) * d + e.minor * math.sin(t) * n
        assert a.quad(p) == pytest.approx(h * h, rel=1e-9)


def test_cone_through_ellipse_examples():
    c, h = cone_through_ellipse(2, 2)
    assert c.A.close_to(SymMat2.identity(), 1e-15) and h == 2
    c, h = cone_through_ellipse(2, 0.5)
    assert c.A.close_to(SymMat2.diag(0.25, 4), 1e-15) and h == 1
    with pytest.raises(BadAxes):
        cone_through_ellipse(1, 2)
    with pytest.raises(BadAxes):
        cone_through_ellipse(1, 0)


@given(st.floats(0.1, 5), st.floats(1, 4), points, angle)
def test_cone_through_ellipse_roundtrip(m, ratio, center, phi):
    c, h = cone_through_ellipse(m * ratio, m, center, phi)
    e = level_curve(c, h)
    assert e.center.close_to(center)
    assert (e.major, e.minor) == pytest.approx((m * ratio, m), rel=1e-9)
    if ratio > 1.01:
        assert abs(math.sin(e.angle - phi)) < 1e-9


@given(points, angle, st.floats(0.05, math.pi / 2 - 0.05))
def test_roundtrip_intersecting(p, a, t):
    pair = LinePair(
        Line.from_point_direction(p, (math.cos(a), math.sin(a))),
        Line.from_point_direction(p, (math.cos(a + t), math.sin(a + t))),
    )
    g = generating_lines(surface_from_pair(pair))
    assert g.pair.same_as(pair, 1e-8)


@given(points, angle, st.floats(0.01, 5))
def test_roundtrip_parallel(p, a, d):
    n = (-math.sin(a), math.cos(a))
    u = (math.cos(a), math.sin(a))
    pair = LinePair(
        Line.from_point_direction((p[0] + d * n[0], p[1] + d * n[1]), u),
        Line.from_point_direction((p[0] - d * n[0], p[1] - d * n[1]), u),
    )
    assert generating_lines(surface_from_pair(pair)).pair.same_as(pair, 1e-8)


@given(points, angle, angle)
def test_orthogonal_pairs_same_unit_cone(p, a, b):
    def ortho(t):
        return LinePair(
            Line.from_point_direction(p, (math.cos(t), math.sin(t))),
            Line.from_point_direction(p, (-math.sin(t), math.cos(t))),
        )

    s1, s2 = surface_from_pair(ortho(a)), surface_from_pair(ortho(b))
    assert s1.A.close_to(SymMat2.identity(), 1e-12) and s2.A.close_to(SymMat2.identity(), 1e-12)
    assert s1.apex.close_to(s2.apex, 1e-9)


@given(points, angle, st.floats(0.05, math.pi / 2 - 0.05), points)
def test_height_is_half_chord_squared(p, a, t, q):
    pair = LinePair(
        Line.from_point_direction(p, (math.cos(a), math.sin(a))),
        Line.from_point_direction(p, (math.cos(a + t), math.sin(a + t))),
    )
    h2 = surface_height_sq(surface_from_pair(pair), q).value
    assert h2 == pytest.approx(midpoint_chord(pair, q).halflength ** 2, rel=1e-9, abs=1e-12)


@given(points, angle, st.floats(0.05, math.pi / 2 - 0.05))
def test_eigenvectors_bisect_generating_lines(p, a, t):
    pair = LinePair(
        Line.from_point_direction(p, (math.cos(a), math.sin(a))),
        Line.from_point_direction(p, (math.cos(a + t), math.sin(a + t))),
    )
    s = surface_from_pair(pair)
    _, _, phi = eig_sym2(s.A)
    # reflecting one line's direction in an eigen-axis gives the other's
    d1, d2 = pair.l1.angle, pair.l2.angle
    assert abs(math.sin(2 * phi - d1 - d2)) < 1e-8


def test_pair_angles_canonical_theta():
    phi, theta = pair_angles(_pair((S3, 0), (-S3, 0)))
    assert theta == pytest.approx(math.pi / 6) and phi == pytest.approx(0.0, abs=1e-15)
    # the obtuse description of the same pair gives the same canonical angles
    phi, theta = pair_angles(_pair((math.sqrt(3), 0), (-math.sqrt(3), 0)))
    assert theta == pytest.approx(math.pi / 6) and phi == pytest.approx(math.pi / 2)


@given(spd_det1(), points, spd_det1(), points)
def test_representation_uniqueness(a, pa, b, pb):
    """Two cones agree on sampled points of one surface iff (A, apex) agree."""
    c1, c2 = HRCone(a, pa), HRCone(b, pb)
    same = c1.A.close_to(c2.A, 1e-9) and c1.apex.close_to(c2.apex, 1e-9)
    rng = np.random.default_rng(0)
    pts = rng.uniform(-5, 5, (10, 2))
    agree = all(abs(c1.height_sq(p) - c2.height_sq(p)) < 1e-8 for p in pts)
    assert agree == same
