"""Plane primitives: points, implicit lines, symmetric 2x2 matrices,
rigid motions and conic classification.

Everything here is an immutable value. Lines are stored in normal form
``n . p = c`` so vertical lines need no special casing.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union

import numpy as np

from .constants import EPS_GEOM
from .errors import DegenerateLine, NotPositiveDefinite


@dataclass(frozen=True, slots=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        x, y = float(self.x), float(self.y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValueError(f"non-finite point ({x}, {y})")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y

    def __add__(self, other: PointLike) -> Point2:
        ox, oy = other
        return Point2(self.x + ox, self.y + oy)

    def __sub__(self, other: PointLike) -> Point2:
        ox, oy = other
        return Point2(self.x - ox, self.y - oy)

    def __mul__(self, s: float) -> Point2:
        return Point2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def __neg__(self) -> Point2:
        return Point2(-self.x, -self.y)

    def dot(self, other: PointLike) -> float:
        ox, oy = other
        return self.x * ox + self.y * oy

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def array(self) -> np.ndarray:
        return np.array([self.x, self.y])

    def close_to(self, other: PointLike, tol: float = EPS_GEOM) -> bool:
        ox, oy = other
        return math.hypot(self.x - ox, self.y - oy) <= tol


PointLike = Union[Point2, Sequence[float], np.ndarray]


def as_point(p: PointLike) -> Point2:
    if isinstance(p, Point2):
        return p
    x, y = p
    return Point2(x, y)


ORIGIN = Point2(0.0, 0.0)


def rotation(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s], [s, c]])


@dataclass(frozen=True, slots=True)
class SymMat2:
    """Symmetric 2x2 matrix ``[[a11, a12], [a12, a22]]``."""

    a11: float
    a12: float
    a22: float

    def __post_init__(self):
        for name in ("a11", "a12", "a22"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @classmethod
    def from_array(cls, m) -> SymMat2:
        m = np.asarray(m, dtype=float)
        return cls(m[0, 0], 0.5 * (m[0, 1] + m[1, 0]), m[1, 1])

    @classmethod
    def identity(cls) -> SymMat2:
        return cls(1.0, 0.0, 1.0)

    @classmethod
    def diag(cls, d1: float, d2: float) -> SymMat2:
        return cls(d1, 0.0, d2)

    def array(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a12, self.a22]])

    def __add__(self, other: SymMat2) -> SymMat2:
        return SymMat2(self.a11 + other.a11, self.a12 + other.a12, self.a22 + other.a22)

    def __sub__(self, other: SymMat2) -> SymMat2:
        return SymMat2(self.a11 - other.a11, self.a12 - other.a12, self.a22 - other.a22)

    def __mul__(self, s: float) -> SymMat2:
        return SymMat2(self.a11 * s, self.a12 * s, self.a22 * s)

    __rmul__ = __mul__

    def __neg__(self) -> SymMat2:
        return SymMat2(-self.a11, -self.a12, -self.a22)

    def det(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a12

    def trace(self) -> float:
        return self.a11 + self.a22

    def max_abs(self) -> float:
        return max(abs(self.a11), abs(self.a12), abs(self.a22))

    def inv(self) -> SymMat2:
        d = self.det()
        if d == 0.0:
            raise ZeroDivisionError("singular matrix")
        return SymMat2(self.a22 / d, -self.a12 / d, self.a11 / d)

    def apply(self, v: PointLike) -> Point2:
        x, y = v
        return Point2(self.a11 * x + self.a12 * y, self.a12 * x + self.a22 * y)

    def quad(self, v: PointLike) -> float:
        x, y = v
        return self.a11 * x * x + 2.0 * self.a12 * x * y + self.a22 * y * y

    def congruence(self, m) -> SymMat2:
        """``m^T S m`` for an arbitrary 2x2 array ``m``."""
        m = np.asarray(m, dtype=float)
        return SymMat2.from_array(m.T @ self.array() @ m)

    def close_to(self, other: SymMat2, tol: float = EPS_GEOM) -> bool:
        return (self - other).max_abs() <= tol

    def is_spd(self, eps: float = EPS_GEOM) -> bool:
        return eig_sym2(self)[1] > eps


def eig_sym2(a: SymMat2) -> tuple[float, float, float]:
    """Eigenvalues ``l1 >= l2`` and the angle ``phi`` in ``[0, pi)`` of the
    eigenvector belonging to ``l1``, so that ``A = R(phi) diag(l1, l2) R(-phi)``.

    Scalar matrices return ``phi = 0``.
    """
    half_diff = 0.5 * (a.a11 - a.a22)
    mean = 0.5 * (a.a11 + a.a22)
    r = math.hypot(half_diff, a.a12)
    l1, l2 = mean + r, mean - r
    # recover the smaller-magnitude root from the determinant to avoid cancellation
    d = a.det()
    if abs(l1) >= abs(l2) and l1 != 0.0:
        l2 = d / l1
    elif l2 != 0.0:
        l1 = d / l2
    l2 = min(l1, l2)
    if r == 0.0:
        return l1, l2, 0.0
    phi = 0.5 * math.atan2(a.a12, half_diff)
    if phi < 0.0:
        phi += math.pi
    if phi >= math.pi:
        phi -= math.pi
    return l1, l2, phi


def sqrt_spd(a: SymMat2) -> SymMat2:
    """Symmetric positive definite square root."""
    l1, l2, _ = eig_sym2(a)
    if l2 <= EPS_GEOM:
        raise NotPositiveDefinite(f"eigenvalues ({l1}, {l2}) not both positive")
    # closed form for 2x2: S = (A + sqrt(det) I) / sqrt(tr + 2 sqrt(det))
    s = math.sqrt(a.det())
    t = math.sqrt(a.trace() + 2.0 * s)
    return SymMat2((a.a11 + s) / t, a.a12 / t, (a.a22 + s) / t)


@dataclass(frozen=True, slots=True)
class Line:
    """The line ``{p : normal . p = offset}`` with a unit, sign-canonical normal.

    The first normal component exceeding ``EPS_GEOM`` in magnitude is positive,
    so two constructions of the same geometric line compare equal.
    """

    normal: tuple[float, float]
    offset: float

    def __post_init__(self):
        nx, ny = (float(v) for v in self.normal)
        c = float(self.offset)
        length = math.hypot(nx, ny)
        if not math.isfinite(length) or length <= EPS_GEOM or not math.isfinite(c):
            raise DegenerateLine(f"cannot build a line from normal ({nx}, {ny})")
        # already unit up to rounding: leave it, so normalizing is idempotent
        if abs(length - 1.0) > 4e-16:
            nx, ny, c = nx / length, ny / length, c / length
        lead = nx if abs(nx) > EPS_GEOM else ny
        if lead < 0:
            nx, ny, c = -nx, -ny, -c
        object.__setattr__(self, "normal", (nx + 0.0, ny + 0.0))
        object.__setattr__(self, "offset", c + 0.0)

    @classmethod
    def through(cls, p: PointLike, q: PointLike) -> Line:
        px, py = p
        qx, qy = q
        dx, dy = qx - px, qy - py
        return cls((-dy, dx), -dy * px + dx * py)

    @classmethod
    def from_point_direction(cls, p: PointLike, d: PointLike) -> Line:
        px, py = p
        dx, dy = d
        return cls((-dy, dx), -dy * px + dx * py)

    @classmethod
    def from_slope_intercept(cls, m: float, b: float) -> Line:
        # y = m x + b  <=>  -m x + y = b
        return cls((-m, 1.0), b)

    @classmethod
    def vertical(cls, x: float) -> Line:
        return cls((1.0, 0.0), x)

    @classmethod
    def horizontal(cls, y: float) -> Line:
        return cls((0.0, 1.0), y)

    @property
    def direction(self) -> tuple[float, float]:
        nx, ny = self.normal
        return (-ny, nx)

    @property
    def angle(self) -> float:
        """Direction angle in ``[0, pi)``."""
        dx, dy = self.direction
        a = math.atan2(dy, dx) % math.pi
        return 0.0 if a >= math.pi else a

    @property
    def foot(self) -> Point2:
        """Point of the line closest to the origin."""
        nx, ny = self.normal
        return Point2(nx * self.offset, ny * self.offset)

    def signed_distance(self, p: PointLike) -> float:
        x, y = p
        return self.normal[0] * x + self.normal[1] * y - self.offset

    def contains(self, p: PointLike, tol: float = EPS_GEOM) -> bool:
        return abs(self.signed_distance(p)) <= tol

    def point_at(self, t: float) -> Point2:
        dx, dy = self.direction
        f = self.foot
        return Point2(f.x + t * dx, f.y + t * dy)

    def param_of(self, p: PointLike) -> float:
        x, y = p
        dx, dy = self.direction
        return x * dx + y * dy

    def cross_normals(self, other: Line) -> float:
        return self.normal[0] * other.normal[1] - self.normal[1] * other.normal[0]

    def is_parallel(self, other: Line, tol: float = EPS_GEOM) -> bool:
        return abs(self.cross_normals(other)) <= tol

    def is_orthogonal(self, other: Line, tol: float = EPS_GEOM) -> bool:
        n, m = self.normal, other.normal
        return abs(n[0] * m[0] + n[1] * m[1]) <= tol

    def intersect(self, other: Line) -> Point2:
        det = self.cross_normals(other)
        if abs(det) <= EPS_GEOM:
            raise ValueError("parallel lines have no crossing point")
        (a, b), (c, d) = self.normal, other.normal
        e, f = self.offset, other.offset
        return Point2((e * d - b * f) / det, (a * f - e * c) / det)

    def same_as(self, other: Line, tol: float = EPS_GEOM) -> bool:
        # either sign: the canonical sign flips for normals near (0, +-1)
        def close(s: float) -> bool:
            return (
                abs(self.normal[0] - s * other.normal[0]) <= tol
                and abs(self.normal[1] - s * other.normal[1]) <= tol
                and abs(self.offset - s * other.offset) <= tol * max(1.0, abs(self.offset))
            )

        return close(1.0) or close(-1.0)

    def sort_key(self) -> tuple[float, float, float]:
        return (round(self.normal[0], 9), round(self.normal[1], 9), round(self.offset, 9))


def split_indefinite(m: SymMat2, point: PointLike) -> tuple[Line, Line]:
    """The two lines through ``point`` on which ``(x - point)^T m (x - point)``
    vanishes; ``m`` must be indefinite."""
    mu1, mu2, phi = eig_sym2(m)
    if not (mu1 > 0.0 > mu2):
        raise ValueError(f"matrix with eigenvalues ({mu1}, {mu2}) is not indefinite")
    e1 = np.array([math.cos(phi), math.sin(phi)])
    e2 = np.array([-e1[1], e1[0]])
    # mu1 s^2 + mu2 t^2 = 0  along  s e1 + t e2
    u, v = math.sqrt(-mu2), math.sqrt(mu1)
    return (
        Line.from_point_direction(point, u * e1 + v * e2),
        Line.from_point_direction(point, u * e1 - v * e2),
    )


def clip_line(line: Line, lo: PointLike, hi: PointLike) -> tuple[float, float] | None:
    """Parameter interval (see ``Line.point_at``) of the part of ``line``
    inside the box ``[lo, hi]``, or None when it misses the box."""
    f = line.foot
    d = line.direction
    t0, t1 = -math.inf, math.inf
    for axis in (0, 1):
        p, dv = (f.x, f.y)[axis], d[axis]
        a, b = lo[axis], hi[axis]
        if abs(dv) < 1e-15:
            if p < a or p > b:
                return None
            continue
        s0, s1 = (a - p) / dv, (b - p) / dv
        if s0 > s1:
            s0, s1 = s1, s0
        t0, t1 = max(t0, s0), min(t1, s1)
    if t0 > t1:
        return None
    return t0, t1


class ConicKind(str, enum.Enum):
    ELLIPSE = "ellipse"
    PARABOLA = "parabola"
    HYPERBOLA = "hyperbola"
    DEGENERATE_HYPERBOLA = "degenerate-hyperbola"
    PARALLEL_LINES = "parallel-lines"
    LINE = "line"
    POINT = "point"
    EMPTY = "empty"
    PLANE = "plane"


@dataclass(frozen=True, slots=True)
class ConicCoeffs:
    """The zero set of ``x^T Q x + L . x + k0``."""

    Q: SymMat2
    L: tuple[float, float] = (0.0, 0.0)
    k0: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "L", (float(self.L[0]), float(self.L[1])))
        object.__setattr__(self, "k0", float(self.k0))

    @classmethod
    def from_coefficients(cls, a, b, c, d, e, f) -> ConicCoeffs:
        """``a x^2 + b xy + c y^2 + d x + e y + f = 0``."""
        return cls(SymMat2(a, 0.5 * b, c), (d, e), f)

    @classmethod
    def from_center_form(cls, C: SymMat2, center: PointLike, k: float) -> ConicCoeffs:
        """``(x - center)^T C (x - center) = k``."""
        ctr = as_point(center)
        Cc = C.apply(ctr)
        return cls(C, (-2.0 * Cc.x, -2.0 * Cc.y), C.quad(ctr) - k)

    def coefficients(self) -> tuple[float, float, float, float, float, float]:
        q = self.Q
        return (q.a11, 2.0 * q.a12, q.a22, self.L[0], self.L[1], self.k0)

    def scale(self) -> float:
        return max(abs(v) for v in self.coefficients())

    def __call__(self, x, y):
        q = self.Q
        return q.a11 * x * x + 2.0 * q.a12 * x * y + q.a22 * y * y + self.L[0] * x + self.L[1] * y + self.k0

    def scaled(self, s: float) -> ConicCoeffs:
        return ConicCoeffs(self.Q * s, (self.L[0] * s, self.L[1] * s), self.k0 * s)


def classify_conic(c: ConicCoeffs, eps: float = EPS_GEOM) -> ConicKind:
    """Classify by the sign of ``det(Q)`` and the completed-square constant.

    Quantities within ``eps`` times the coefficient scale count as zero.
    """
    scale = c.scale()
    if scale == 0.0:
        return ConicKind.PLANE
    c = c.scaled(1.0 / scale)
    q = c.Q
    qs = q.max_abs()
    lx, ly = c.L
    if qs <= eps:
        if math.hypot(lx, ly) <= eps:
            return ConicKind.EMPTY if abs(c.k0) > eps else ConicKind.PLANE
        return ConicKind.LINE
    det = q.det()
    if abs(det) > eps * qs * qs:
        # (x - ctr)^T Q (x - ctr) + kk = 0
        inv = q.inv()
        ctr = inv.apply((-0.5 * lx, -0.5 * ly))
        cqc = q.quad(ctr)
        kk = c.k0 - cqc
        zero = abs(kk) <= eps * max(1.0, abs(cqc), abs(c.k0))
        if det < 0:
            return ConicKind.DEGENERATE_HYPERBOLA if zero else ConicKind.HYPERBOLA
        if q.trace() < 0:
            kk = -kk
        if zero:
            return ConicKind.POINT
        return ConicKind.ELLIPSE if kk < 0 else ConicKind.EMPTY
    # rank one: Q ~ mu e e^T
    mu = q.trace()
    _, _, phi = eig_sym2(q if mu > 0 else -q)
    e = (math.cos(phi), math.sin(phi))
    f = (-e[1], e[0])
    le = lx * e[0] + ly * e[1]
    lf = lx * f[0] + ly * f[1]
    if abs(lf) > eps:
        return ConicKind.PARABOLA
    disc = le * le - 4.0 * mu * c.k0
    if abs(disc) <= eps * max(1.0, le * le, abs(4.0 * mu * c.k0)):
        return ConicKind.LINE
    return ConicKind.PARALLEL_LINES if disc > 0 else ConicKind.EMPTY


@dataclass(frozen=True, slots=True, eq=False)
class Affine:
    """``x -> M x + t`` with ``M`` invertible."""

    matrix: np.ndarray = field(default_factory=lambda: np.eye(2))
    translation: Point2 = ORIGIN

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float).reshape(2, 2)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "translation", as_point(self.translation))

    def inverse(self) -> Affine:
        n = np.linalg.inv(self.matrix)
        return Affine(n, Point2(*(-(n @ self.translation.array()))))

    def __call__(self, obj):
        return apply_affine(self, obj)


@dataclass(frozen=True, slots=True)
class RigidMotion:
    """Rotation by ``angle`` about the origin followed by ``translation``."""

    angle: float = 0.0
    translation: Point2 = ORIGIN

    def __post_init__(self):
        object.__setattr__(self, "angle", float(self.angle))
        object.__setattr__(self, "translation", as_point(self.translation))

    def as_affine(self) -> Affine:
        return Affine(rotation(self.angle), self.translation)

    def inverse(self) -> RigidMotion:
        r = rotation(-self.angle)
        return RigidMotion(-self.angle, Point2(*(-(r @ self.translation.array()))))

    def then(self, other: RigidMotion) -> RigidMotion:
        """Apply ``self`` first, ``other`` second."""
        r = rotation(other.angle)
        t = r @ self.translation.array() + other.translation.array()
        return RigidMotion(self.angle + other.angle, Point2(*t))

    def __call__(self, obj):
        return apply_motion(self, obj)


def apply_affine(g: Affine, obj):
    """Image of a point, line or conic under the affine map ``g``."""
    m, t = g.matrix, g.translation.array()
    if isinstance(obj, Line):
        # n . x = c  ->  (M^-T n) . x' = c + n . M^-1 t
        ninv = np.linalg.inv(m)
        n = np.array(obj.normal)
        return Line(tuple(ninv.T @ n), obj.offset + n @ (ninv @ t))
    if isinstance(obj, ConicCoeffs):
        ninv = np.linalg.inv(m)
        qa = obj.Q.array()
        qn = ninv.T @ qa @ ninv
        la = np.array(obj.L)
        nt = ninv @ t
        lnew = -2.0 * qn @ t + ninv.T @ la
        k0 = t @ qn @ t - la @ nt + obj.k0
        return ConicCoeffs(SymMat2.from_array(qn), (lnew[0], lnew[1]), k0)
    p = np.asarray(tuple(obj), dtype=float)
    return Point2(*(m @ p + t))


def apply_motion(g: RigidMotion, obj):
    return apply_affine(g.as_affine(), obj)
