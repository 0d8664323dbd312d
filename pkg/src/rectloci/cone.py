"""Surfaces generated by a pair of lines, and the way back.

A pair of crossing lines generates the cone ``z^2 = (x - a)^T A (x - a)``
with ``det A = 1``: ``z`` is half the length of the unique segment joining
the two lines with midpoint ``x``. A parallel pair generates a vertical
plane over its midline with the strip ``|z| < d`` removed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .constants import EPS_GEOM, NEAR_UNIT_CONE
from .errors import (
    BadAngle,
    BadAxes,
    IdenticalLines,
    NonPositiveHeight,
    NotPositiveDefinite,
    ParallelPair,
)
from .geom import Line, Point2, PointLike, SymMat2, as_point, eig_sym2, rotation, split_indefinite


@dataclass(frozen=True)
class LinePair:
    """Two distinct lines. ``kind`` is ``"intersecting"`` or ``"parallel"``."""

    l1: Line
    l2: Line

    def __post_init__(self):
        if self.l1.same_as(self.l2):
            raise IdenticalLines("a line pair needs two distinct lines")

    @property
    def is_parallel(self) -> bool:
        return self.l1.is_parallel(self.l2)

    @property
    def kind(self) -> str:
        return "parallel" if self.is_parallel else "intersecting"

    @property
    def is_orthogonal(self) -> bool:
        return self.l1.is_orthogonal(self.l2)

    @property
    def crossing(self) -> Point2:
        if self.is_parallel:
            raise ParallelPair("parallel lines do not cross")
        return self.l1.intersect(self.l2)

    def _aligned_offsets(self) -> tuple[float, float]:
        n1, n2 = self.l1.normal, self.l2.normal
        s = 1.0 if n1[0] * n2[0] + n1[1] * n2[1] >= 0 else -1.0
        return self.l1.offset, s * self.l2.offset

    @property
    def midline(self) -> Line:
        if not self.is_parallel:
            raise ValueError("only parallel pairs have a midline")
        c1, c2 = self._aligned_offsets()
        return Line(self.l1.normal, 0.5 * (c1 + c2))

    @property
    def halfgap(self) -> float:
        if not self.is_parallel:
            raise ValueError("only parallel pairs have a gap")
        c1, c2 = self._aligned_offsets()
        return 0.5 * abs(c1 - c2)

    def lines(self) -> tuple[Line, Line]:
        return (self.l1, self.l2)

    def same_as(self, other: LinePair, tol: float = EPS_GEOM) -> bool:
        """Equality as an unordered pair of lines."""
        a, b = self.l1, self.l2
        c, d = other.l1, other.l2
        return (a.same_as(c, tol) and b.same_as(d, tol)) or (a.same_as(d, tol) and b.same_as(c, tol))

    def swapped(self) -> LinePair:
        return LinePair(self.l2, self.l1)


@dataclass(frozen=True)
class HRCone:
    """``z^2 = (x - apex)^T A (x - apex)`` with ``A`` SPD and ``det A = 1``."""

    A: SymMat2
    apex: Point2

    def __post_init__(self):
        object.__setattr__(self, "apex", as_point(self.apex))
        if not self.A.is_spd(0.0):
            raise NotPositiveDefinite("cone matrix must be positive definite")
        if abs(self.A.det() - 1.0) > EPS_GEOM * max(1.0, self.A.max_abs() ** 2):
            raise NotPositiveDefinite(f"cone matrix must have determinant 1, got {self.A.det()}")

    @property
    def is_unit(self) -> bool:
        return (self.A - SymMat2.identity()).max_abs() <= EPS_GEOM

    def height_sq(self, p: PointLike) -> float:
        return self.A.quad(as_point(p) - self.apex)


@dataclass(frozen=True)
class Slab:
    """Vertical plane over ``midline`` minus the strip ``|z| < halfgap``."""

    midline: Line
    halfgap: float

    def __post_init__(self):
        if not self.halfgap > EPS_GEOM:
            raise ValueError(f"slab half-gap must be positive, got {self.halfgap}")


GeneratedSurface = Union[HRCone, Slab]


@dataclass(frozen=True)
class Chord:
    p1: Point2
    p2: Point2
    midpoint: Point2
    halflength: float


def chord_offsets(pair: LinePair, points) -> np.ndarray:
    """Half-chord vectors ``w`` with ``p + w`` on ``l1`` and ``p - w`` on ``l2``.

    ``points`` is an ``(n, 2)`` array; the pair must intersect. Solves
    ``n1 . w = c1 - n1 . p`` and ``n2 . w = n2 . p - c2``.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    n1, n2 = np.array(pair.l1.normal), np.array(pair.l2.normal)
    c1, c2 = pair.l1.offset, pair.l2.offset
    det = n1[0] * n2[1] - n1[1] * n2[0]
    r1 = c1 - pts @ n1
    r2 = pts @ n2 - c2
    wx = (r1 * n2[1] - n1[1] * r2) / det
    wy = (n1[0] * r2 - r1 * n2[0]) / det
    return np.column_stack([wx, wy])


def midpoint_chord(pair: LinePair, p: PointLike) -> Chord:
    """The unique segment from ``l1`` to ``l2`` whose midpoint is ``p``."""
    if pair.is_parallel:
        raise ParallelPair("a parallel pair has no unique chord through a point")
    p = as_point(p)
    w = chord_offsets(pair, [tuple(p)])[0]
    return Chord(
        p1=Point2(p.x + w[0], p.y + w[1]),
        p2=Point2(p.x - w[0], p.y - w[1]),
        midpoint=p,
        halflength=float(math.hypot(w[0], w[1])),
    )


def squeeze(theta: float) -> SymMat2:
    t2 = math.tan(theta) ** 2
    return SymMat2.diag(t2, 1.0 / t2)


def cone_from_angles(phi: float, theta: float, apex: PointLike = (0.0, 0.0)) -> HRCone:
    """Cone matrix ``R(phi) diag(tan^2 theta, cot^2 theta) R(-phi)``."""
    if not 0.0 < theta < 0.5 * math.pi:
        raise BadAngle(f"theta must lie in (0, pi/2), got {theta}")
    r = rotation(phi)
    A = SymMat2.from_array(r @ squeeze(theta).array() @ r.T)
    return HRCone(A, as_point(apex))


def pair_angles(pair: LinePair) -> tuple[float, float]:
    """``(phi, theta)``: bisector angle of the smaller angle between the
    lines in ``[0, pi)``, and half that smaller angle in ``(0, pi/4]``."""
    d1 = np.array(pair.l1.direction)
    d2 = np.array(pair.l2.direction)
    if d1 @ d2 < 0:
        d2 = -d2
    cos2t = min(1.0, float(d1 @ d2))
    theta = 0.5 * math.acos(cos2t)
    b = d1 + d2
    phi = math.atan2(b[1], b[0]) % math.pi
    return phi, theta


def surface_from_pair(pair: LinePair) -> GeneratedSurface:
    if pair.is_parallel:
        return Slab(pair.midline, pair.halfgap)
    phi, theta = pair_angles(pair)
    return cone_from_angles(phi, theta, pair.crossing)


@dataclass(frozen=True)
class GeneratingLines:
    """Generating lines of a surface.

    ``family_apex`` is set for unit cones, where every orthogonal pair through
    that point generates the cone; ``pair`` is then the axis-aligned one.
    ``low_confidence`` flags near-unit cones whose factorization is
    ill-conditioned.
    """

    pair: LinePair
    family_apex: Optional[Point2] = None
    low_confidence: bool = False

    @property
    def unique(self) -> bool:
        return self.family_apex is None


def generating_lines(s: GeneratedSurface) -> GeneratingLines:
    if isinstance(s, Slab):
        n, c, d = s.midline.normal, s.midline.offset, s.halfgap
        return GeneratingLines(LinePair(Line(n, c - d), Line(n, c + d)))
    a = s.apex
    dev = s.A - SymMat2.identity()
    if dev.max_abs() <= EPS_GEOM:
        return GeneratingLines(LinePair(Line.vertical(a.x), Line.horizontal(a.y)), family_apex=a)
    # (x - a)^T (A - I) (x - a) = 0 is a degenerate hyperbola through a
    l1, l2 = split_indefinite(dev, a)
    return GeneratingLines(LinePair(l1, l2), low_confidence=dev.max_abs() < NEAR_UNIT_CONE)


@dataclass(frozen=True)
class HeightSq:
    """Squared half-chord length over a point.

    ``kind`` is ``"value"`` (exact), ``"at_least"`` (slab midline: every
    value ``>= value`` occurs) or ``"undefined"``.
    """

    kind: str
    value: float = math.nan


def surface_height_sq(s: GeneratedSurface, p: PointLike) -> HeightSq:
    p = as_point(p)
    if isinstance(s, HRCone):
        return HeightSq("value", s.height_sq(p))
    if s.midline.contains(p):
        return HeightSq("at_least", s.halfgap ** 2)
    return HeightSq("undefined")


@dataclass(frozen=True)
class Ellipse:
    """``angle`` is the direction of the major axis, in ``[0, pi)``."""

    center: Point2
    major: float
    minor: float
    angle: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if not (self.minor > 0 and self.major >= self.minor):
            raise BadAxes(f"need major >= minor > 0, got ({self.major}, {self.minor})")

    @property
    def area(self) -> float:
        return math.pi * self.major * self.minor

    def matrix(self) -> SymMat2:
        """``Q`` with ``(x - center)^T Q (x - center) = 1`` on the ellipse."""
        r = rotation(self.angle)
        d = np.diag([self.major ** -2, self.minor ** -2])
        return SymMat2.from_array(r @ d @ r.T)


def level_curve(c: HRCone, h: float) -> Ellipse:
    if not h > 0:
        raise NonPositiveHeight(f"height must be positive, got {h}")
    l1, _, phi = eig_sym2(c.A)
    l1 = max(l1, 1.0)
    # det A = 1, so the small eigenvalue is 1 / l1; the direct one loses
    # relative accuracy for strongly squeezed cones
    return Ellipse(c.apex, h * math.sqrt(l1), h / math.sqrt(l1), (phi + 0.5 * math.pi) % math.pi)


def cone_through_ellipse(
    major: float, minor: float, center: PointLike = (0.0, 0.0), angle: float = 0.0
) -> tuple[HRCone, float]:
    """An HR-cone and a height ``h`` whose level curve is the given ellipse."""
    if not (minor > 0 and major >= minor):
        raise BadAxes(f"need major >= minor > 0, got ({major}, {minor})")
    r = rotation(angle)
    d = np.diag([minor / major, major / minor])
    A = SymMat2.from_array(r @ d @ r.T)
    return HRCone(A, as_point(center)), math.sqrt(major * minor)
