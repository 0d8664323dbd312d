import math

import numpy as np
import pytest
from hypothesis import given

from rectloci.cone import HRCone, LinePair, generating_lines, midpoint_chord, surface_from_pair
from rectloci.errors import (
    EqualConeMatrices,
    InvalidFamilyParam,
    MissingFamilyParam,
    NotHyperbolic,
    NotOnLocus,
)
from rectloci.fixtures import FOUR_BRANCH_POINTS, four_branch_pairs, stratified_corpus
from rectloci.geom import Line, Point2, RigidMotion, SymMat2, apply_motion
from rectloci.locus import (
    DifferenceForm,
    EmptySet,
    FullPlane,
    Hyperbola,
    LineMinusOpenSegment,
    SinglePoint,
    WholeLine,
    asymptotes,
    compute_locus,
    difference_form,
    locus_equal,
    locus_from_dict,
    membership_residual,
    membership_residuals,
    rectangle_at,
    sample_locus,
    transform_locus,
)

from conftest import angle, points

A1 = SymMat2(5 / 8, 1 / 2, 2.0)
B1 = SymMat2(2.0, 1.0, 1.0)
A2 = SymMat2.identity()
B2 = SymMat2(13 / 8, 3 / 2, 2.0)


def slope_pair(*mb):
    return LinePair(*(Line.from_slope_intercept(m, b) for m, b in mb))


def cross(p, a, t):
    return LinePair(
        Line.from_point_direction(p, (math.cos(a), math.sin(a))),
        Line.from_point_direction(p, (math.cos(a + t), math.sin(a + t))),
    )


def test_difference_form_four_branch_cones():
    d = difference_form(HRCone(SymMat2.identity(), (1, 0)), HRCone(SymMat2.diag(2, 0.5), (0, 0)))
    assert d.C.close_to(SymMat2.diag(-1, 0.5), 1e-15)
    assert d.c.close_to((1, 0), 1e-15)
    assert d.center.close_to((-1, 0), 1e-15)
    assert d.k == pytest.approx(-2.0, abs=1e-14)


def test_difference_form_both_at_origin_is_homogeneous():
    d = difference_form(HRCone(B2, (0, 0)), HRCone(SymMat2.diag(2, 0.5), (0, 0)))
    assert d.c == Point2(0, 0) and d.center.close_to((0, 0)) and d.k == 0.0 and d.k_is_zero


def test_difference_form_zero_set_matches_cone_difference(rng):
    s1, s2 = HRCone(B1, (0.3, -1)), HRCone(B2, (2, 0.5))
    d = difference_form(s1, s2)
    for p in rng.uniform(-5, 5, (50, 2)):
        lhs = s1.height_sq(p) - s2.height_sq(p)
        assert lhs == pytest.approx(d.C.quad(Point2(*p) - d.center) - d.k, abs=1e-10)


def test_example_matrices_have_det_one_and_equal_differences():
    for m in (A1, B1, A2, B2):
        assert m.det() == pytest.approx(1.0, abs=1e-15)
    assert (A1 - B2).close_to(A2 - B1, 0.0)
    d1 = difference_form(HRCone(A1, (0, 0)), HRCone(B2, (0, 0)))
    d2 = difference_form(HRCone(A2, (0, 0)), HRCone(B1, (0, 0)))
    assert d1 == d2


def test_difference_form_rejects_equal_matrices():
    with pytest.raises(EqualConeMatrices):
        difference_form(HRCone(B1, (0, 0)), HRCone(B1, (1, 1)))


def test_asymptote_examples():
    def form(C, center):
        return DifferenceForm(C, Point2(0, 0), 1.0, Point2(*center), 0.0)

    lines = asymptotes(form(SymMat2.diag(1, -1), (0, 0)))
    assert LinePair(*lines).same_as(slope_pair((1, 0), (-1, 0)))
    r2 = math.sqrt(2)
    lines = asymptotes(form(SymMat2.diag(-1, 0.5), (-1, 0)))
    assert LinePair(*lines).same_as(slope_pair((r2, r2), (-r2, -r2)), 1e-12)
    with pytest.raises(NotHyperbolic):
        asymptotes(form(SymMat2.diag(1, 1), (0, 0)))


def test_asymptotes_follow_common_translation():
    p1, p2 = cross((0, 0), 0.2, 0.7), cross((1, 2), 1.1, 0.4)
    h = compute_locus(p1, p2)
    g = RigidMotion(0.0, Point2(3, -1))
    moved = compute_locus(
        LinePair(apply_motion(g, p1.l1), apply_motion(g, p1.l2)),
        LinePair(apply_motion(g, p2.l1), apply_motion(g, p2.l2)),
    )
    expect = [apply_motion(g, l) for l in h.asymptotes]
    assert LinePair(*moved.asymptotes).same_as(LinePair(*expect), 1e-9)


def test_locus_two_unit_cones():
    loc = compute_locus(slope_pair((1, 0), (-1, 0)), slope_pair((1, -2), (-1, 2)))
    assert isinstance(loc, WholeLine) and loc.line.same_as(Line.vertical(1.0), 1e-12)


def test_locus_four_branch_hyperbola():
    loc = compute_locus(*four_branch_pairs())
    assert isinstance(loc, Hyperbola)
    assert loc.center.close_to((-1, 0), 1e-12)
    assert loc.normalized().close_to(SymMat2.diag(0.5, -0.25), 1e-12)
    for p in FOUR_BRANCH_POINTS:
        assert abs(loc.conic()(*p)) / loc.conic().scale() < 1e-12


def test_same_parallel_pair_twice():
    p = LinePair(Line.horizontal(0), Line.horizontal(2))
    loc = compute_locus(p, LinePair(Line.horizontal(2), Line.horizontal(0)))
    assert isinstance(loc, WholeLine) and loc.line.same_as(Line.horizontal(1))


def test_parallel_cases():
    h = LinePair(Line.horizontal(0), Line.horizontal(2))
    assert isinstance(compute_locus(h, LinePair(Line.horizontal(5), Line.horizontal(9))), EmptySet)
    loc = compute_locus(h, LinePair(Line.vertical(0), Line.vertical(4)))
    assert isinstance(loc, SinglePoint) and loc.point.close_to((2, 1))


def test_slab_and_cone():
    slab = LinePair(Line.horizontal(-1), Line.horizontal(1))
    # crossing on the midline: chords near it are too short
    loc = compute_locus(slab, slope_pair((0.5, 0), (-0.5, 0)))
    assert isinstance(loc, LineMinusOpenSegment)
    # half-chord along y = 0 is |x| / 2 for the pair y = +-x/2
    gap = sorted((loc.q1.x, loc.q2.x))
    assert gap == pytest.approx([-2, 2])
    inside = np.array([[0.0, 0.0], [1.9, 0.0], [-1.0, 0.0]])
    assert np.all(membership_residuals(slab, slope_pair((0.5, 0), (-0.5, 0)), inside) < 0)
    # crossing far from the midline: every point of it works
    loc = compute_locus(slab, slope_pair((0.5, 10), (-0.5, 10)))
    assert isinstance(loc, WholeLine)


def test_identical_pairs():
    ortho = slope_pair((1, 0), (-1, 0))
    assert isinstance(compute_locus(ortho, ortho), FullPlane)
    oblique = slope_pair((2, 1), (-1, 0))
    loc = compute_locus(oblique, oblique)
    assert isinstance(loc, SinglePoint) and loc.point.close_to(oblique.crossing)
    assert isinstance(compute_locus(oblique, oblique, count_degenerate=True), FullPlane)


def test_membership_examples():
    p1, p2 = four_branch_pairs()
    assert abs(membership_residual(p1, p2, (1, 2))) < 1e-9
    a = slope_pair((1, 0), (-1, 0))
    assert membership_residual(a, slope_pair((3, 0), (0.2, 0)), (0, 0)) == 0.0
    assert membership_residual(slope_pair((1, 1), (-1, 1)), slope_pair((1, -1), (-1, -1)), (0, 0)) == pytest.approx(0, abs=1e-15)


def _check_rectangle(r, tol=1e-9):
    v = [np.array(tuple(x)) for x in r.vertices]
    c = np.array(tuple(r.center))
    assert np.allclose((v[0] + v[2]) / 2, c, atol=tol) and np.allclose((v[1] + v[3]) / 2, c, atol=tol)
    assert abs(np.linalg.norm(v[0] - v[2]) - np.linalg.norm(v[1] - v[3])) < tol * max(1, r.diag_halflength)
    for p, l in zip(r.vertices, r.assignment):
        assert l.contains(p, tol * max(1.0, p.norm()))


def test_rectangle_examples():
    r = rectangle_at(slope_pair((1, 0), (-1, 0)), slope_pair((2, 0), (-2, 0)), (0, 0))
    assert all(v.close_to((0, 0)) for v in r.vertices)
    r = rectangle_at(*four_branch_pairs(), (1, 2))
    assert r.diag_halflength == pytest.approx(2.0)
    _check_rectangle(r)
    sq = rectangle_at(LinePair(Line.horizontal(0), Line.horizontal(2)), LinePair(Line.vertical(0), Line.vertical(2)), (1, 1), math.pi / 4)
    got = sorted((round(v.x, 12), round(v.y, 12)) for v in sq.vertices)
    assert got == [(0, 0), (0, 2), (2, 0), (2, 2)]
    _check_rectangle(sq)


def test_rectangle_errors():
    p1, p2 = four_branch_pairs()
    with pytest.raises(NotOnLocus):
        rectangle_at(p1, p2, (0.5, 0.5))
    h, v = LinePair(Line.horizontal(0), Line.horizontal(2)), LinePair(Line.vertical(0), Line.vertical(2))
    with pytest.raises(MissingFamilyParam):
        rectangle_at(h, v, (1, 1))
    with pytest.raises(InvalidFamilyParam):
        rectangle_at(h, v, (1, 1), 0.0)
    slab = LinePair(Line.horizontal(-1), Line.horizontal(1))
    cone = slope_pair((0.5, 0), (-0.5, 0))
    with pytest.raises(MissingFamilyParam):
        rectangle_at(slab, cone, (4, 0))
    with pytest.raises(InvalidFamilyParam):
        rectangle_at(slab, cone, (4, 0), 1.0)


def test_rectangle_slab_cone_choices():
    slab = LinePair(Line.horizontal(-1), Line.horizontal(1))
    cone = slope_pair((0.5, 0), (-0.5, 0))
    # half-chord 2 at x = 4 across a gap of half-width 1: directions at 30 and 150 degrees
    for a in (math.pi / 6, 5 * math.pi / 6):
        _check_rectangle(rectangle_at(slab, cone, (4, 0), a))
    # at a gap endpoint the chord is forced
    _check_rectangle(rectangle_at(slab, cone, (2, 0)))


def _family_angle(cfg, p):
    """A valid chord direction across the first parallel pair."""
    first = cfg.p1 if cfg.p1.is_parallel else cfg.p2
    other = cfg.p2 if cfg.p1.is_parallel else cfg.p1
    h = other.halfgap if other.is_parallel else midpoint_chord(other, p).halflength
    return first.l1.angle + math.asin(min(1.0, first.halfgap / h))


@pytest.mark.parametrize("cfg", stratified_corpus(seed=7, mix={
    "hyperbola": 4, "degenerate-hyperbola": 3, "line": 4, "line-minus-segment": 3, "point": 2, "plane": 2}),
    ids=lambda c: c.name)
def test_rectangles_along_loci(cfg):
    loc = compute_locus(cfg.p1, cfg.p2)
    for p in sample_locus(loc, (-8, -8), (8, 8), 12, np.random.default_rng(1)):
        param = _family_angle(cfg, p) if cfg.p1.is_parallel or cfg.p2.is_parallel else None
        _check_rectangle(rectangle_at(cfg.p1, cfg.p2, p, param), 1e-7)


def test_symmetry_on_corpus():
    for cfg in stratified_corpus(seed=3):
        assert locus_equal(compute_locus(cfg.p1, cfg.p2), compute_locus(cfg.p2, cfg.p1), 1e-8), cfg.name


@given(angle, points)
def test_euclidean_invariance(phi, t):
    g = RigidMotion(phi, Point2(*t))

    def move(p):
        return LinePair(apply_motion(g, p.l1), apply_motion(g, p.l2))

    for cfg in stratified_corpus(seed=11, mix={k: 1 for k in (
            "hyperbola", "degenerate-hyperbola", "line", "line-minus-segment", "point", "empty", "plane")}):
        moved = compute_locus(move(cfg.p1), move(cfg.p2))
        assert locus_equal(moved, transform_locus(g, compute_locus(cfg.p1, cfg.p2)), 1e-7), cfg.name


def test_bridge_soundness():
    for cfg in stratified_corpus(seed=5):
        loc = compute_locus(cfg.p1, cfg.p2)
        pts = sample_locus(loc, (-10, -10), (10, 10), 200)
        scale = max(1.0, *(abs(l.offset) for l in cfg.p1.lines() + cfg.p2.lines()))
        if len(pts):
            assert np.abs(membership_residuals(cfg.p1, cfg.p2, pts)).max() < 1e-8 * scale ** 2, cfg.name


def test_hyperbola_criterion_random(rng):
    """Hyperbola iff no parallel pair, at most one orthogonal pair, not translates
    (shared-line pairings and other k = 0 cases aside)."""
    n_hyp = 0
    for _ in range(10_000):
        kind = rng.integers(4)
        p = [rng.uniform(-3, 3, 2) for _ in range(2)]
        a = rng.uniform(0, math.pi, 2)
        t = rng.uniform(0.05, math.pi / 2 - 0.05, 2)
        if kind == 1:
            t[0] = math.pi / 2
        if kind == 2:
            t[:] = math.pi / 2
        if kind == 3:
            a[1], t[1] = a[0], t[0]
        p1, p2 = cross(p[0], a[0], t[0]), cross(p[1], a[1], t[1])
        loc = compute_locus(p1, p2)
        s1, s2 = surface_from_pair(p1), surface_from_pair(p2)
        translates = (s1.A - s2.A).max_abs() <= 1e-9
        both_orthogonal = p1.is_orthogonal and p2.is_orthogonal
        predicted = not translates and not both_orthogonal
        if predicted and difference_form(s1, s2).k_is_zero:
            predicted = False
        assert (loc.kind == "hyperbola") == predicted
        n_hyp += predicted
    assert n_hyp > 4000


@given(angle, angle, points)
def test_rotating_orthogonal_pair_keeps_locus(a, b, p):
    other = cross((1.0, -2.0), 0.4, 0.9)
    l1 = compute_locus(cross(p, a, math.pi / 2), other)
    l2 = compute_locus(cross(p, b, math.pi / 2), other)
    assert locus_equal(l1, l2, 1e-7)


def test_example_5_2_loci_match():
    def pair(m):
        return generating_lines(HRCone(m, (0, 0))).pair

    l1 = compute_locus(pair(A1), pair(B2))
    l2 = compute_locus(pair(A2), pair(B1))
    assert l1.kind == l2.kind and locus_equal(l1, l2, 1e-9)


def test_locus_dict_roundtrip():
    for cfg in stratified_corpus(seed=9, mix={k: 2 for k in (
            "hyperbola", "degenerate-hyperbola", "line", "line-minus-segment", "point", "empty", "plane")}):
        loc = compute_locus(cfg.p1, cfg.p2)
        assert locus_equal(locus_from_dict(loc.to_dict()), loc, 1e-12)
    with pytest.raises(ValueError):
        locus_from_dict({"kind": "circle"})
