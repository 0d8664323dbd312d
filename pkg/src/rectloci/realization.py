"""Pairs of HR-cones whose intersection projects onto a given hyperbola.

After a rigid motion the hyperbola reads ``x^T diag(l1, l2) x = 1`` with
``l1 > 0 > l2``. Every cone pair realizing it has ``B = [[u, v], [v, (1 + v^2)/u]]``
with ``(u, v)`` on the conic ``f(u, v) = 0``, ``A = B + C``, ``b`` on the conic
``x^T C A^-1 B x = 1`` and ``a = A^-1 B b``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cone import HRCone, LinePair, generating_lines
from .constants import EPS_GEOM
from .errors import ConstraintViolated, NotAHyperbola, OutOfRange
from .geom import (
    ConicCoeffs,
    ConicKind,
    Point2,
    PointLike,
    RigidMotion,
    SymMat2,
    apply_motion,
    as_point,
    classify_conic,
    eig_sym2,
    rotation,
)


@dataclass(frozen=True)
class HyperbolaSpec:
    """The hyperbola ``(x - center)^T C (x - center) = 1``."""

    center: Point2
    C: SymMat2

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if not self.C.det() < -EPS_GEOM * self.C.max_abs() ** 2:
            raise NotAHyperbola(f"det(C) = {self.C.det()} must be negative")

    @classmethod
    def from_conic(cls, c: ConicCoeffs) -> HyperbolaSpec:
        if classify_conic(c) is not ConicKind.HYPERBOLA:
            raise NotAHyperbola(f"conic is a {classify_conic(c).value}")
        q = c.Q
        center = q.inv().apply((-0.5 * c.L[0], -0.5 * c.L[1]))
        k = q.quad(center) - c.k0
        return cls(center, q * (1.0 / k))

    @classmethod
    def from_locus(cls, h) -> HyperbolaSpec:
        return cls(h.center, h.normalized())

    def conic(self) -> ConicCoeffs:
        return ConicCoeffs.from_center_form(self.C, self.center, 1.0)


def normalize_hyperbola(c) -> tuple[RigidMotion, float, float]:
    """Rigid motion taking the hyperbola to ``l1 x^2 + l2 y^2 = 1`` with ``l1 > 0 > l2``.

    Accepts a ``ConicCoeffs`` or a ``HyperbolaSpec``.
    """
    spec = c if isinstance(c, HyperbolaSpec) else HyperbolaSpec.from_conic(c)
    l1, l2, phi = eig_sym2(spec.C)
    # x' = R(-phi) (x - center)
    r = rotation(-phi)
    t = -(r @ spec.center.array())
    return RigidMotion(-phi, Point2(*t)), l1, l2


def constraint_value(l1: float, l2: float, u: float, v: float) -> float:
    """``f(u, v) = v^2 + (l2/l1) u^2 + l2 u + 1``."""
    return v * v + (l2 / l1) * u * u + l2 * u + 1.0


def admissible_u(l1: float, l2: float) -> float:
    """Smallest admissible ``u``: the ``u``-range is ``[u_min, inf)``."""
    if not l1 > 0 > l2:
        raise ValueError("expected l1 > 0 > l2")
    # v^2 = r u^2 + s u - 1 with r, s > 0
    r, s = -l2 / l1, -l2
    return 2.0 / (s + math.sqrt(s * s + 4.0 * r))


def params_on_constraint(l1: float, l2: float, u: float, sign: int = 1) -> tuple[float, float]:
    """``(u, v)`` on ``f = 0``; ``sign`` picks the branch ``v = +-sqrt(...)``."""
    lo = max(0.0, -l1)
    v2 = -1.0 - (l2 / l1) * u * u - l2 * u
    if v2 < 0 and v2 > -EPS_GEOM * max(1.0, u * u):
        v2 = 0.0
    if not (u > lo and v2 >= 0.0):
        interval = (admissible_u(l1, l2), math.inf) if l1 > 0 > l2 else None
        raise OutOfRange(f"u = {u} gives v^2 = {v2}; admissible u in {interval}", interval)
    return u, math.copysign(math.sqrt(v2), sign)


@dataclass(frozen=True)
class RealizationParams:
    """First row ``(u, v)`` of ``B`` and the apex ``b = (bx, by)``, in the normalized frame."""

    u: float
    v: float
    bx: float
    by: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.u, self.v, self.bx, self.by)


@dataclass(frozen=True)
class ConePairRealization:
    coneA: HRCone
    coneB: HRCone
    linePairA: LinePair
    linePairB: LinePair
    source: RealizationParams
    condition: tuple[float, float]

    def to_dict(self):
        def cone(c: HRCone):
            return {"A": [[c.A.a11, c.A.a12], [c.A.a12, c.A.a22]], "apex": list(c.apex)}

        def pair(p: LinePair):
            return [{"normal": list(l.normal), "offset": l.offset} for l in p.lines()]

        return {
            "coneA": cone(self.coneA),
            "coneB": cone(self.coneB),
            "linePairA": pair(self.linePairA),
            "linePairB": pair(self.linePairB),
            "params": dict(zip(("u", "v", "bx", "by"), self.source.as_tuple())),
            "condition": list(self.condition),
        }


def matrices_from_params(l1: float, l2: float, u: float, v: float) -> tuple[SymMat2, SymMat2]:
    B = SymMat2(u, v, (1.0 + v * v) / u)
    return B + SymMat2.diag(l1, l2), B


def apex_conic(l1: float, l2: float, u: float, v: float) -> SymMat2:
    """``C A^-1 B`` expanded on ``f = 0``; ``b`` must satisfy ``b^T (.) b = 1``."""
    return SymMat2(
        l1 * l2 * u + l1,
        l1 * l2 * v,
        -(l2 * l2 * u + l1 * l2 * l2 - l2),
    )


def build_cone_pair(l1: float, l2: float, params: RealizationParams, tol: float = 1e-9) -> ConePairRealization:
    """Cones ``(A, a)`` and ``(B, b)`` in the normalized frame, with their line pairs."""
    u, v, bx, by = params.as_tuple()
    scale = max(1.0, abs(u), abs(v), abs(l1), abs(l2))
    if not u > max(0.0, -l1):
        raise ConstraintViolated(f"u = {u} must exceed max(0, -l1)", "u-range")
    if abs(constraint_value(l1, l2, u, v)) > tol * scale * scale:
        raise ConstraintViolated(f"f(u, v) = {constraint_value(l1, l2, u, v)}", "f(u,v)=0")
    A, B = matrices_from_params(l1, l2, u, v)
    b = Point2(bx, by)
    n2 = apex_conic(l1, l2, u, v).quad(b)
    if abs(n2 - 1.0) > tol * max(1.0, apex_conic(l1, l2, u, v).max_abs() * (bx * bx + by * by)):
        raise ConstraintViolated(f"b^T C A^-1 B b = {n2}, expected 1", "apex-conic")
    for name, m in (("A", A), ("B", B)):
        if abs(m.det() - 1.0) > tol * max(1.0, m.max_abs() ** 2) or not m.is_spd(0.0):
            raise ConstraintViolated(f"{name} is not SPD with determinant 1", f"det({name})=1")
    a = A.inv().apply(B.apply(b))
    coneA, coneB = HRCone(A, a), HRCone(B, b)
    return ConePairRealization(
        coneA,
        coneB,
        generating_lines(coneA).pair,
        generating_lines(coneB).pair,
        params,
        (_cond(A), _cond(B)),
    )


def _cond(m: SymMat2) -> float:
    l1, l2, _ = eig_sym2(m)
    return l1 / l2


def _move(motion: RigidMotion, r: ConePairRealization) -> ConePairRealization:
    """Carry a realization from the normalized frame back through ``motion^-1``."""
    inv = motion.inverse()
    rot = rotation(motion.angle)

    def cone(c: HRCone) -> HRCone:
        return HRCone(c.A.congruence(rot), apply_motion(inv, c.apex))

    def pair(p: LinePair) -> LinePair:
        return LinePair(apply_motion(inv, p.l1), apply_motion(inv, p.l2))

    return ConePairRealization(
        cone(r.coneA), cone(r.coneB), pair(r.linePairA), pair(r.linePairB), r.source, r.condition
    )


def apex_point(l1: float, l2: float, u: float, v: float, t: float, sign: int = 1) -> Point2:
    """Point ``t`` on branch ``sign`` of the apex conic for ``(u, v)``."""
    n = apex_conic(l1, l2, u, v)
    m1, m2, phi = eig_sym2(n)
    e1 = np.array([math.cos(phi), math.sin(phi)])
    e2 = np.array([-e1[1], e1[0]])
    p = sign * math.cosh(t) / math.sqrt(m1) * e1 + math.sinh(t) / math.sqrt(-m2) * e2
    return Point2(*p)


def realize(
    h,
    u: Optional[float] = None,
    v_sign: int = 1,
    b_sign: int = 1,
    t: float = 0.0,
    b: Optional[PointLike] = None,
) -> ConePairRealization:
    """Realize a hyperbola (``HyperbolaSpec`` or ``ConicCoeffs``) by two line pairs.

    ``u`` defaults to twice the smallest admissible value. The apex ``b`` is
    the point ``t`` on branch ``b_sign`` of the apex conic unless given
    explicitly (in normalized coordinates).
    """
    spec = h if isinstance(h, HyperbolaSpec) else HyperbolaSpec.from_conic(h)
    motion, l1, l2 = normalize_hyperbola(spec)
    if u is None:
        u = 2.0 * admissible_u(l1, l2)
    u, v = params_on_constraint(l1, l2, u, v_sign)
    bp = as_point(b) if b is not None else apex_point(l1, l2, u, v, t, b_sign)
    r = build_cone_pair(l1, l2, RealizationParams(u, v, bp.x, bp.y))
    return _move(motion, r)


def realize_params(h, params: RealizationParams) -> ConePairRealization:
    spec = h if isinstance(h, HyperbolaSpec) else HyperbolaSpec.from_conic(h)
    motion, l1, l2 = normalize_hyperbola(spec)
    return _move(motion, build_cone_pair(l1, l2, params))


def _arclength_params(l1, l2, u, v, count: int, span: float = 1.5) -> np.ndarray:
    """``count`` values of ``t`` in ``[-span, span]`` evenly spaced in arclength."""
    n = apex_conic(l1, l2, u, v)
    m1, m2, _ = eig_sym2(n)
    a, b = 1.0 / math.sqrt(m1), 1.0 / math.sqrt(-m2)
    t = np.linspace(-span, span, 2001)
    speed = np.hypot(a * np.sinh(t), b * np.cosh(t))
    s = np.concatenate([[0.0], np.cumsum(0.5 * (speed[1:] + speed[:-1]) * np.diff(t))])
    targets = (np.arange(count) + 0.5) / count * s[-1]
    return np.interp(targets, s, t)


def sample_parameter_surface(h, n: int) -> list[RealizationParams]:
    """``n`` distinct points of the realization surface (normalized frame).

    ``u`` is stratified over ``[u_min, inf)`` with atanh spacing; every
    ``u`` is combined with both ``v`` branches and both apex-conic branches,
    the apex placed by arclength along the branch.
    """
    if n < 1:
        raise ValueError("n must be positive")
    spec = h if isinstance(h, HyperbolaSpec) else HyperbolaSpec.from_conic(h)
    _, l1, l2 = normalize_hyperbola(spec)
    umin = admissible_u(l1, l2)
    n_u = math.ceil(n / 4)
    tau = (np.arange(n_u) + 0.5) / n_u * 0.95
    us = umin * (1.0 + 1e-6) + max(umin, 1.0) * np.arctanh(tau)
    out: list[RealizationParams] = []
    for i, u in enumerate(us):
        for j, (vs, bs) in enumerate(((1, 1), (-1, 1), (1, -1), (-1, -1))):
            if len(out) == n:
                break
            uu, vv = params_on_constraint(l1, l2, float(u), vs)
            tt = float(_arclength_params(l1, l2, uu, vv, 4)[(i + j) % 4])
            p = apex_point(l1, l2, uu, vv, tt, bs)
            out.append(RealizationParams(uu, vv, p.x, p.y))
    return out
