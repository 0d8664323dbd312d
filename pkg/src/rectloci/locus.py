"""Rectangle loci of two pairs of lines.

A point is on the rectangle locus when it is the common midpoint of two
segments of equal length, one joining the lines of each pair. Lifting each
pair to its generated surface turns this into intersecting two surfaces and
projecting to the plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .cone import (
    HRCone,
    LinePair,
    Slab,
    chord_offsets,
    midpoint_chord,
    surface_from_pair,
)
from .constants import EPS_DET, EPS_GEOM, EPS_K
from .errors import (
    EqualConeMatrices,
    InvalidFamilyParam,
    MissingFamilyParam,
    NotHyperbolic,
    NotOnLocus,
)
from .geom import (
    Affine,
    ConicCoeffs,
    Line,
    Point2,
    PointLike,
    RigidMotion,
    SymMat2,
    apply_affine,
    as_point,
    clip_line,
    eig_sym2,
    split_indefinite,
)

# ---------------------------------------------------------------------------
# Locus shapes


@dataclass(frozen=True)
class EmptySet:
    kind = "empty"

    def to_dict(self):
        return {"kind": self.kind}


@dataclass(frozen=True)
class SinglePoint:
    point: Point2
    kind = "point"

    def to_dict(self):
        return {"kind": self.kind, "point": list(self.point)}


@dataclass(frozen=True)
class FullPlane:
    kind = "plane"

    def to_dict(self):
        return {"kind": self.kind}


@dataclass(frozen=True)
class WholeLine:
    line: Line
    kind = "line"

    def to_dict(self):
        return {"kind": self.kind, "line": line_to_dict(self.line)}


@dataclass(frozen=True)
class LineMinusOpenSegment:
    """``line`` without the open segment between ``q1`` and ``q2``."""

    line: Line
    q1: Point2
    q2: Point2
    kind = "line-minus-segment"

    def to_dict(self):
        return {
            "kind": self.kind,
            "line": line_to_dict(self.line),
            "gap": [list(self.q1), list(self.q2)],
        }


@dataclass(frozen=True)
class DegenerateHyperbola:
    lines: tuple[Line, Line]
    center: Point2
    kind = "degenerate-hyperbola"

    def to_dict(self):
        return {
            "kind": self.kind,
            "center": list(self.center),
            "lines": [line_to_dict(l) for l in self.lines],
        }


@dataclass(frozen=True)
class Hyperbola:
    """``(x - center)^T C (x - center) = k`` with ``det C < 0`` and ``k != 0``."""

    center: Point2
    C: SymMat2
    k: float
    asymptotes: tuple[Line, Line]
    kind = "hyperbola"

    def normalized(self) -> SymMat2:
        """``C / k``: the form equal to 1 on the curve."""
        return self.C * (1.0 / self.k)

    def axes(self) -> tuple[np.ndarray, float, np.ndarray, float]:
        """Unit transverse direction, semi-transverse axis, unit conjugate
        direction, semi-conjugate axis."""
        mu1, mu2, phi = eig_sym2(self.normalized())
        e1 = np.array([math.cos(phi), math.sin(phi)])
        e2 = np.array([-e1[1], e1[0]])
        return e1, 1.0 / math.sqrt(mu1), e2, 1.0 / math.sqrt(-mu2)

    def branch_points(self, t, sign: int = 1) -> np.ndarray:
        """Points ``center + sign cosh(t) a e1 + sinh(t) b e2`` as an ``(n, 2)`` array."""
        e1, a, e2, b = self.axes()
        t = np.atleast_1d(np.asarray(t, dtype=float))
        c = np.array(tuple(self.center))
        return c + sign * np.cosh(t)[:, None] * (a * e1) + np.sinh(t)[:, None] * (b * e2)

    def conic(self) -> ConicCoeffs:
        return ConicCoeffs.from_center_form(self.C, self.center, self.k)

    def to_dict(self):
        n = self.normalized()
        return {
            "kind": self.kind,
            "center": list(self.center),
            "C": [[self.C.a11, self.C.a12], [self.C.a12, self.C.a22]],
            "k": self.k,
            "normalized": [[n.a11, n.a12], [n.a12, n.a22]],
            "coefficients": list(self.conic().coefficients()),
            "asymptotes": [line_to_dict(l) for l in self.asymptotes],
        }


LocusClass = Union[
    EmptySet, SinglePoint, FullPlane, WholeLine, LineMinusOpenSegment, DegenerateHyperbola, Hyperbola
]

LOCUS_KINDS = ("empty", "point", "line", "line-minus-segment", "degenerate-hyperbola", "hyperbola", "plane")


def line_to_dict(line: Line):
    return {"normal": list(line.normal), "offset": line.offset}


def line_from_dict(d) -> Line:
    return Line(tuple(d["normal"]), d["offset"])


def locus_from_dict(d) -> LocusClass:
    """Inverse of ``to_dict``; hyperbola asymptotes are recomputed when absent."""
    kind = d.get("kind")
    if kind == "empty":
        return EmptySet()
    if kind == "plane":
        return FullPlane()
    if kind == "point":
        return SinglePoint(as_point(d["point"]))
    if kind == "line":
        return WholeLine(line_from_dict(d["line"]))
    if kind == "line-minus-segment":
        q1, q2 = d["gap"]
        return LineMinusOpenSegment(line_from_dict(d["line"]), as_point(q1), as_point(q2))
    if kind == "degenerate-hyperbola":
        l1, l2 = (line_from_dict(l) for l in d["lines"])
        return DegenerateHyperbola((l1, l2), as_point(d["center"]))
    if kind == "hyperbola":
        C = SymMat2.from_array(d["C"])
        center = as_point(d["center"])
        if "asymptotes" in d:
            lines = tuple(line_from_dict(l) for l in d["asymptotes"])
        else:
            lines = split_indefinite(C, center)
        return Hyperbola(center, C, float(d["k"]), lines)
    raise ValueError(f"unknown locus kind {kind!r}")


# ---------------------------------------------------------------------------
# Difference of two cone equations


@dataclass(frozen=True)
class DifferenceForm:
    """``(x-a)^T A (x-a) - (x-b)^T B (x-b)`` rewritten as
    ``(x - center)^T C (x - center) - k`` with ``C = A - B``,
    ``c = A a - B b`` and ``center = C^-1 c``.

    ``k_tol`` is the magnitude below which ``k`` counts as zero.
    """

    C: SymMat2
    c: Point2
    k: float
    center: Point2
    k_tol: float

    @property
    def k_is_zero(self) -> bool:
        return abs(self.k) <= self.k_tol


def difference_form(s1: HRCone, s2: HRCone) -> DifferenceForm:
    A, a, B, b = s1.A, s1.apex, s2.A, s2.apex
    C = A - B
    if C.max_abs() <= EPS_GEOM:
        raise EqualConeMatrices("cone matrices coincide; the locus is a line, the plane or a point")
    Aa, Bb = A.apply(a), B.apply(b)
    c = Aa - Bb
    Cinv = C.inv()
    center = Cinv.apply(c)
    cCc = c.dot(center)
    aAa, bBb = a.dot(Aa), b.dot(Bb)
    k = cCc - aAa + bBb
    scale = max(1.0, a.norm(), b.norm())
    k_tol = EPS_K * (C.max_abs() * scale * scale + abs(cCc) + aAa + bBb)
    return DifferenceForm(C, c, k, center, k_tol)


def asymptotes(d: DifferenceForm) -> tuple[Line, Line]:
    if d.C.det() >= -EPS_DET * d.C.max_abs() ** 2:
        raise NotHyperbolic(f"det(C) = {d.C.det()} is not negative")
    return split_indefinite(d.C, d.center)


# ---------------------------------------------------------------------------
# Case analysis


def _slab_cone_locus(slab: Slab, cone: HRCone) -> Union[WholeLine, LineMinusOpenSegment]:
    line, d2 = slab.midline, slab.halfgap ** 2
    f = line.foot - cone.apex
    u = line.direction
    A = cone.A
    # q(t) = alpha t^2 + beta t + gamma along the midline
    alpha = A.quad(u)
    beta = 2.0 * A.apply(u).dot(f)
    gamma = A.quad(f) - d2
    disc = beta * beta - 4.0 * alpha * gamma
    if disc <= EPS_GEOM * max(beta * beta, abs(4.0 * alpha * gamma), alpha * d2):
        return WholeLine(line)
    sq = math.sqrt(disc)
    # stable quadratic roots
    qq = -0.5 * (beta + math.copysign(sq, beta))
    t1, t2 = sorted((qq / alpha, gamma / qq if qq != 0.0 else -qq / alpha))
    return LineMinusOpenSegment(line, line.point_at(t1), line.point_at(t2))


def compute_locus(p1: LinePair, p2: LinePair, count_degenerate: bool = False) -> LocusClass:
    """Classify and compute the rectangle locus of two line pairs.

    ``count_degenerate`` only matters when both pairs are the same
    non-orthogonal crossing pair: every chord then pairs with itself, so
    the locus is the plane if collapsed rectangles count and the crossing
    point otherwise.
    """
    s1, s2 = surface_from_pair(p1), surface_from_pair(p2)
    if isinstance(s1, Slab) and isinstance(s2, Slab):
        m1, m2 = s1.midline, s2.midline
        if m1.is_parallel(m2):
            return WholeLine(m1) if m1.same_as(m2) else EmptySet()
        return SinglePoint(m1.intersect(m2))
    if isinstance(s1, Slab):
        return _slab_cone_locus(s1, s2)
    if isinstance(s2, Slab):
        return _slab_cone_locus(s2, s1)

    A, a, B, b = s1.A, s1.apex, s2.A, s2.apex
    if (A - B).max_abs() <= EPS_GEOM:
        if (a - b).norm() <= EPS_GEOM * max(1.0, a.norm()):
            if s1.is_unit or count_degenerate:
                return FullPlane()
            return SinglePoint(a)
        # the quadratic terms cancel: 2 x^T A (b - a) = b^T A b - a^T A a
        n = A.apply(b - a)
        return WholeLine(Line(tuple(n), 0.5 * (A.quad(b) - A.quad(a))))

    d = difference_form(s1, s2)
    lines = asymptotes(d)
    if d.k_is_zero:
        return DegenerateHyperbola(lines, d.center)
    return Hyperbola(d.center, d.C, d.k, lines)


# ---------------------------------------------------------------------------
# Membership without cone theory


def _halflength_sq(pair: LinePair, pts: np.ndarray) -> np.ndarray:
    w = chord_offsets(pair, pts)
    return np.einsum("ij,ij->i", w, w)


def _signed_midline_distance(pair: LinePair, pts: np.ndarray) -> np.ndarray:
    m = pair.midline
    return pts @ np.array(m.normal) - m.offset


def membership_residuals(p1: LinePair, p2: LinePair, points) -> np.ndarray:
    """Vectorized ``membership_residual`` over an ``(n, 2)`` array."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    par1, par2 = p1.is_parallel, p2.is_parallel
    if not par1 and not par2:
        return _halflength_sq(p1, pts) - _halflength_sq(p2, pts)
    if par1 and par2:
        e1 = _signed_midline_distance(p1, pts)
        e2 = _signed_midline_distance(p2, pts)
        return np.where(np.abs(e1) >= np.abs(e2), e1, e2)
    slab, cone = (p1, p2) if par1 else (p2, p1)
    e = _signed_midline_distance(slab, pts)
    shortfall = np.maximum(0.0, slab.halfgap ** 2 - _halflength_sq(cone, pts))
    return np.where(np.abs(e) >= shortfall, e, -shortfall)


def membership_residual(p1: LinePair, p2: LinePair, p: PointLike) -> float:
    """Zero exactly on the rectangle locus.

    For two crossing pairs this is the difference of squared half-chord
    lengths. With a parallel pair it is the signed distance to that pair's
    midline, or minus the shortfall of the other half-chord below the half
    gap, whichever is larger in magnitude.
    """
    return float(membership_residuals(p1, p2, [tuple(as_point(p))])[0])


# ---------------------------------------------------------------------------
# Rectangles


@dataclass(frozen=True)
class InscribedRectangle:
    """Vertices in cyclic order; ``v1 v3`` and ``v2 v4`` are the diagonals."""

    vertices: tuple[Point2, Point2, Point2, Point2]
    center: Point2
    diag_halflength: float
    assignment: tuple[Line, Line, Line, Line]

    def to_dict(self):
        return {
            "vertices": [list(v) for v in self.vertices],
            "center": list(self.center),
            "diag_halflength": self.diag_halflength,
            "assignment": [line_to_dict(l) for l in self.assignment],
        }


def _chord_at_angle(pair: LinePair, p: Point2, alpha: float) -> tuple[Point2, Point2]:
    """Endpoints on ``l1`` and ``l2`` of the segment through ``p`` in direction ``alpha``."""
    u = np.array([math.cos(alpha), math.sin(alpha)])
    pts = []
    for line in pair.lines():
        n = np.array(line.normal)
        denom = n @ u
        t = (line.offset - n @ np.array(tuple(p))) / denom
        pts.append(Point2(p.x + t * u[0], p.y + t * u[1]))
    return pts[0], pts[1]


def _slab_angles(pair: LinePair, h: float) -> list[float]:
    """Directions in ``[0, pi)`` of chords of half-length ``h`` across a parallel pair."""
    d, beta = pair.halfgap, pair.l1.angle
    ratio = d / h
    if ratio >= 1.0 - 1e-12:
        return [(beta + 0.5 * math.pi) % math.pi]
    s = math.asin(ratio)
    return [(beta + s) % math.pi, (beta - s) % math.pi]


def _angle_gap(a: float, b: float) -> float:
    return abs(math.sin(a - b))


def rectangle_at(
    p1: LinePair,
    p2: LinePair,
    p: PointLike,
    family_param: Optional[float] = None,
    tol: float = 1e-8,
) -> InscribedRectangle:
    """Rebuild the rectangle centred at a locus point ``p``.

    ``family_param`` is the direction angle (radians) of the chord across the
    first parallel pair. It is needed whenever that chord is not determined:
    always for two parallel pairs, and for one parallel pair unless the
    other chord is exactly as long as the gap. For one parallel pair it must
    be one of the two admissible directions (within 1e-6 rad).
    """
    p = as_point(p)
    par1, par2 = p1.is_parallel, p2.is_parallel
    if not par1 and not par2:
        c1, c2 = midpoint_chord(p1, p), midpoint_chord(p2, p)
        h1, h2 = c1.halflength, c2.halflength
        if abs(h1 * h1 - h2 * h2) > tol * max(1.0, h1 * h1 + h2 * h2):
            raise NotOnLocus(f"half-chords differ: {h1} vs {h2}")
        chords = [(c1.p1, c1.p2), (c2.p1, c2.p2)]
        h = 0.5 * (h1 + h2)
    elif par1 != par2:
        slab, cone = (p1, p2) if par1 else (p2, p1)
        dist = slab.midline.signed_distance(p)
        cc = midpoint_chord(cone, p)
        h = cc.halflength
        if abs(dist) > tol * max(1.0, p.norm()) or h < slab.halfgap * (1.0 - tol):
            raise NotOnLocus("point is off the midline or inside the gap")
        options = _slab_angles(slab, max(h, slab.halfgap))
        if len(options) == 1:
            alpha = options[0]
        elif family_param is None:
            raise MissingFamilyParam(f"two chord directions possible: {options}")
        else:
            best = min(options, key=lambda o: _angle_gap(o, family_param))
            if _angle_gap(best, family_param) > 1e-6:
                raise InvalidFamilyParam(f"chord direction must be one of {options}")
            alpha = best
        slab_chord = _chord_at_angle(slab, p, alpha)
        cone_chord = (cc.p1, cc.p2)
        chords = [slab_chord, cone_chord] if par1 else [cone_chord, slab_chord]
    else:
        e1 = p1.midline.signed_distance(p)
        e2 = p2.midline.signed_distance(p)
        if max(abs(e1), abs(e2)) > tol * max(1.0, p.norm()):
            raise NotOnLocus("point is not on both midlines")
        if family_param is None:
            raise MissingFamilyParam("two parallel pairs need the first chord direction")
        alpha = family_param
        s = _angle_gap(alpha, p1.l1.angle)
        if s <= EPS_GEOM:
            raise InvalidFamilyParam("chord direction is parallel to the first pair")
        h = p1.halfgap / s
        if h < p2.halfgap * (1.0 - 1e-12):
            raise InvalidFamilyParam(f"half-chord {h} is shorter than the second half-gap {p2.halfgap}")
        options = _slab_angles(p2, h)
        # prefer the direction that keeps the rectangle from collapsing
        beta = max(options, key=lambda o: _angle_gap(o, alpha))
        chords = [_chord_at_angle(p1, p, alpha), _chord_at_angle(p2, p, beta)]

    (e1p, e2p), (f1, f2) = chords
    cross = (e1p.x - p.x) * (f1.y - p.y) - (e1p.y - p.y) * (f1.x - p.x)
    if cross < 0:
        verts = (e1p, f2, e2p, f1)
        assign = (p1.l1, p2.l2, p1.l2, p2.l1)
    else:
        verts = (e1p, f1, e2p, f2)
        assign = (p1.l1, p2.l1, p1.l2, p2.l2)
    return InscribedRectangle(verts, p, h, assign)


# ---------------------------------------------------------------------------
# Geometry of locus values


def transform_locus(g: Union[Affine, RigidMotion], locus: LocusClass) -> LocusClass:
    """Image of a locus under an affine map (hyperbola forms by congruence)."""
    if isinstance(g, RigidMotion):
        g = g.as_affine()
    if isinstance(locus, (EmptySet, FullPlane)):
        return locus
    if isinstance(locus, SinglePoint):
        return SinglePoint(apply_affine(g, locus.point))
    if isinstance(locus, WholeLine):
        return WholeLine(apply_affine(g, locus.line))
    if isinstance(locus, LineMinusOpenSegment):
        return LineMinusOpenSegment(
            apply_affine(g, locus.line), apply_affine(g, locus.q1), apply_affine(g, locus.q2)
        )
    lines = tuple(apply_affine(g, l) for l in (locus.lines if isinstance(locus, DegenerateHyperbola) else locus.asymptotes))
    center = apply_affine(g, locus.center)
    if isinstance(locus, DegenerateHyperbola):
        return DegenerateHyperbola(lines, center)
    ninv = np.linalg.inv(g.matrix)
    return Hyperbola(center, locus.C.congruence(ninv), locus.k, lines)


def _same_line_set(a: Sequence[Line], b: Sequence[Line], tol: float) -> bool:
    return (a[0].same_as(b[0], tol) and a[1].same_as(b[1], tol)) or (
        a[0].same_as(b[1], tol) and a[1].same_as(b[0], tol)
    )


def locus_equal(x: LocusClass, y: LocusClass, tol: float = 1e-8) -> bool:
    """Geometric equality of two locus values up to ``tol`` (relative where it matters)."""
    if x.kind != y.kind:
        return False
    if isinstance(x, (EmptySet, FullPlane)):
        return True
    if isinstance(x, SinglePoint):
        return x.point.close_to(y.point, tol * max(1.0, x.point.norm()))
    if isinstance(x, WholeLine):
        return x.line.same_as(y.line, tol)
    if isinstance(x, LineMinusOpenSegment):
        if not x.line.same_as(y.line, tol):
            return False
        s = tol * max(1.0, x.q1.norm(), x.q2.norm())
        return (x.q1.close_to(y.q1, s) and x.q2.close_to(y.q2, s)) or (
            x.q1.close_to(y.q2, s) and x.q2.close_to(y.q1, s)
        )
    if not x.center.close_to(y.center, tol * max(1.0, x.center.norm())):
        return False
    if isinstance(x, DegenerateHyperbola):
        return _same_line_set(x.lines, y.lines, tol)
    nx, ny = x.normalized(), y.normalized()
    return (nx - ny).max_abs() <= tol * max(1.0, nx.max_abs())


def sample_locus(
    locus: LocusClass,
    lo: PointLike,
    hi: PointLike,
    n: int = 200,
    rng: Optional[np.random.Generator] = None,
) -> np.ndarray:
    """Up to ``n`` points of the locus inside the box ``[lo, hi]`` as an ``(m, 2)`` array."""
    lo, hi = tuple(lo), tuple(hi)
    empty = np.empty((0, 2))
    if isinstance(locus, EmptySet):
        return empty
    if isinstance(locus, SinglePoint):
        q = locus.point
        inside = lo[0] <= q.x <= hi[0] and lo[1] <= q.y <= hi[1]
        return np.array([[q.x, q.y]]) if inside else empty
    if isinstance(locus, FullPlane):
        rng = rng if rng is not None else np.random.default_rng(0)
        return rng.uniform(lo, hi, size=(n, 2))
    if isinstance(locus, (WholeLine, LineMinusOpenSegment, DegenerateHyperbola)):
        pieces = []
        for line in locus.lines if isinstance(locus, DegenerateHyperbola) else (locus.line,):
            span = clip_line(line, lo, hi)
            if span is None:
                continue
            if isinstance(locus, LineMinusOpenSegment):
                g1, g2 = sorted((line.param_of(locus.q1), line.param_of(locus.q2)))
                pieces += [(line, a, b) for a, b in ((span[0], min(g1, span[1])), (max(g2, span[0]), span[1])) if a <= b]
            else:
                pieces.append((line, span[0], span[1]))
        return _spread(pieces, n)
    # hyperbola: trace both branches far enough to leave the box
    reach = max(abs(lo[0]), abs(lo[1]), abs(hi[0]), abs(hi[1])) + locus.center.norm()
    _, a, _, b = locus.axes()
    tmax = math.asinh(2.0 * reach / min(a, b)) + 1.0
    t = np.linspace(-tmax, tmax, 8 * n)
    pts = np.vstack([locus.branch_points(t, 1), locus.branch_points(t, -1)])
    inside = (pts[:, 0] >= lo[0]) & (pts[:, 0] <= hi[0]) & (pts[:, 1] >= lo[1]) & (pts[:, 1] <= hi[1])
    pts = pts[inside]
    if len(pts) > n:
        pts = pts[np.linspace(0, len(pts) - 1, n).round().astype(int)]
    return pts


def _spread(pieces, n: int) -> np.ndarray:
    """``n`` points over closed segments ``(line, t0, t1)``, split by length."""
    if not pieces:
        return np.empty((0, 2))
    lengths = np.array([b - a for _, a, b in pieces])
    share = lengths / lengths.sum() if lengths.sum() > 0 else np.full(len(pieces), 1.0 / len(pieces))
    counts = np.maximum(1, np.floor(share * n).astype(int))
    # hand the remainder to the longest pieces
    for i in np.argsort(-lengths)[: max(0, n - counts.sum())]:
        counts[i] += 1
    return np.vstack([_line_points(l, np.linspace(a, b, k)) for (l, a, b), k in zip(pieces, counts)])


def _line_points(line: Line, t: np.ndarray) -> np.ndarray:
    f, d = line.foot, line.direction
    return np.column_stack([f.x + t * d[0], f.y + t * d[1]])
