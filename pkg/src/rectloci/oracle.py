"""Brute-force checks of rectangle loci from first principles.

Nothing here uses the cone equations or the difference form. The scanner
finds sign changes of the half-chord residual on a grid; the rectangle
search sweeps chord directions through a candidate center and measures
diagonal mismatch directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .cone import LinePair
from .constants import BISECT_TOL
from .geom import Point2, PointLike, SymMat2, as_point
from .locus import (
    DegenerateHyperbola,
    EmptySet,
    FullPlane,
    Hyperbola,
    InscribedRectangle,
    LineMinusOpenSegment,
    LocusClass,
    SinglePoint,
    WholeLine,
    _halflength_sq,
    _signed_midline_distance,
    membership_residuals,
    sample_locus,
)


@dataclass(frozen=True)
class ScanWindow:
    lo: Point2
    hi: Point2
    resolution: int = 400

    def __post_init__(self):
        object.__setattr__(self, "lo", as_point(self.lo))
        object.__setattr__(self, "hi", as_point(self.hi))
        if not (self.hi.x > self.lo.x and self.hi.y > self.lo.y):
            raise ValueError("upper-right corner must dominate lower-left")
        if self.resolution < 2:
            raise ValueError("resolution must be at least 2")

    @classmethod
    def square(cls, half: float, resolution: int = 400) -> ScanWindow:
        return cls(Point2(-half, -half), Point2(half, half), resolution)

    @property
    def cell(self) -> float:
        return max(self.hi.x - self.lo.x, self.hi.y - self.lo.y) / (self.resolution - 1)


@dataclass
class OracleReport:
    scanned: np.ndarray
    max_scan_distance: float
    max_claim_residual: float
    n_claim_samples: int
    tol: float
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = bool(self.max_scan_distance <= self.tol and self.max_claim_residual <= self.tol)

    def to_dict(self):
        return {
            "verdict": "pass" if self.passed else "fail",
            "tolerance": self.tol,
            "n_scanned": int(len(self.scanned)),
            "n_claim_samples": self.n_claim_samples,
            "max_scan_distance": _finite_or_str(self.max_scan_distance),
            "max_claim_residual": _finite_or_str(self.max_claim_residual),
        }


def _finite_or_str(v: float):
    return v if math.isfinite(v) else str(v)


# ---------------------------------------------------------------------------
# Zero-set scanning

Field = Callable[[np.ndarray], np.ndarray]


def _scan_problem(p1: LinePair, p2: LinePair):
    """Scanned function, extra equalities, and an inequality that must stay >= 0."""
    par1, par2 = p1.is_parallel, p2.is_parallel
    if not par1 and not par2:
        return (lambda pts: _halflength_sq(p1, pts) - _halflength_sq(p2, pts)), [], None
    if par1 and par2:
        return (lambda pts: _signed_midline_distance(p1, pts)), [lambda pts: _signed_midline_distance(p2, pts)], None
    slab, cone = (p1, p2) if par1 else (p2, p1)
    d2 = slab.halfgap ** 2
    return (
        (lambda pts: _signed_midline_distance(slab, pts)),
        [],
        (lambda pts: (_halflength_sq(cone, pts) - d2) / max(1.0, d2)),
    )


def _bisect(g: Field, a: np.ndarray, b: np.ndarray, ga: np.ndarray) -> np.ndarray:
    for _ in range(200):
        if len(a) == 0 or np.max(np.hypot(*(b - a).T)) <= BISECT_TOL:
            break
        m = 0.5 * (a + b)
        gm = g(m)
        left = np.sign(gm) == np.sign(ga)
        a = np.where(left[:, None], m, a)
        ga = np.where(left, gm, ga)
        b = np.where(left[:, None], b, m)
    return 0.5 * (a + b)


def _grad(f: Field, pts: np.ndarray, h: float) -> np.ndarray:
    ex, ey = np.array([h, 0.0]), np.array([0.0, h])
    return np.column_stack([(f(pts + ex) - f(pts - ex)) / (2 * h), (f(pts + ey) - f(pts - ey)) / (2 * h)])


def _project_onto(g: Field, eq: Field, pts: np.ndarray, reach: float) -> np.ndarray:
    """Newton steps onto ``g = eq = 0``; points that cannot get there are dropped."""
    keep = np.ones(len(pts), dtype=bool)
    start = pts.copy()
    for _ in range(4):
        r = np.column_stack([g(pts), eq(pts)])
        jg, je = _grad(g, pts, 1e-6), _grad(eq, pts, 1e-6)
        det = jg[:, 0] * je[:, 1] - jg[:, 1] * je[:, 0]
        solvable = np.abs(det) > 1e-12
        small = np.abs(r[:, 1]) <= 1e-13 * (1.0 + np.abs(pts).max(axis=1))
        # equal midlines: already on the joint zero set
        keep &= solvable | small
        safe = np.where(solvable, det, 1.0)
        dx = (-r[:, 0] * je[:, 1] + jg[:, 1] * r[:, 1]) / safe
        dy = (-jg[:, 0] * r[:, 1] + r[:, 0] * je[:, 0]) / safe
        step = np.where(solvable[:, None] & ~small[:, None], np.column_stack([dx, dy]), 0.0)
        pts = pts + step
    keep &= np.hypot(*(pts - start).T) <= reach
    keep &= np.abs(eq(pts)) <= 1e-10 * (1.0 + np.abs(pts).max(axis=1))
    return pts[keep]


def scan_zero_set(p1: LinePair, p2: LinePair, w: ScanWindow) -> np.ndarray:
    """Points of the rectangle locus found by grid sign changes, as ``(n, 2)``.

    Every grid edge whose endpoints straddle zero is bisected to width
    ``BISECT_TOL``. With one parallel pair the roots are kept only where the
    other pair's chord is at least as long as the gap; with two parallel
    pairs they are pushed onto the second midline or dropped. Output order
    follows the grid (horizontal edges, then vertical), duplicates removed.
    """
    g, eqs, ineq = _scan_problem(p1, p2)
    xs = np.linspace(w.lo.x, w.hi.x, w.resolution)
    ys = np.linspace(w.lo.y, w.hi.y, w.resolution)
    X, Y = np.meshgrid(xs, ys)
    nodes = np.column_stack([X.ravel(), Y.ravel()])
    G = g(nodes).reshape(X.shape)
    S = np.sign(G)

    found = [nodes[(S == 0).ravel()]]
    for axis in (1, 0):
        if axis == 1:
            sa, sb = S[:, :-1], S[:, 1:]
            ia, ib = (X[:, :-1], Y[:, :-1]), (X[:, 1:], Y[:, 1:])
            ga = G[:, :-1]
        else:
            sa, sb = S[:-1, :], S[1:, :]
            ia, ib = (X[:-1, :], Y[:-1, :]), (X[1:, :], Y[1:, :])
            ga = G[:-1, :]
        mask = sa * sb < 0
        a = np.column_stack([ia[0][mask], ia[1][mask]])
        b = np.column_stack([ib[0][mask], ib[1][mask]])
        found.append(_bisect(g, a, b, ga[mask]))
    pts = np.vstack(found)

    for eq in eqs:
        pts = _project_onto(g, eq, pts, reach=2.0 * w.cell)
    if ineq is not None and len(pts):
        pts = pts[ineq(pts) >= -1e-9]
    if len(pts) == 0:
        return np.empty((0, 2))
    _, first = np.unique(np.round(pts, 9), axis=0, return_index=True)
    return pts[np.sort(first)]


# ---------------------------------------------------------------------------
# Distances to a claimed locus


def _line_distance(line, pts: np.ndarray) -> np.ndarray:
    return np.abs(pts @ np.array(line.normal) - line.offset)


def _hyperbola_distance(h: Hyperbola, pts: np.ndarray) -> np.ndarray:
    e1, a, e2, b = h.axes()
    rel = pts - np.array(tuple(h.center))
    # by symmetry the nearest point is on the branch facing the query
    u = np.abs(rel @ e1)
    v = rel @ e2
    tmax = math.asinh(4.0 * (np.max(np.hypot(u, v), initial=1.0) + a + b) / min(a, b)) + 1.0
    grid = np.linspace(-tmax, tmax, 801)

    def dist2(t):
        return (a * np.cosh(t) - u) ** 2 + (b * np.sinh(t) - v) ** 2

    d_grid = (a * np.cosh(grid)[None, :] - u[:, None]) ** 2 + (b * np.sinh(grid)[None, :] - v[:, None]) ** 2
    t = grid[np.argmin(d_grid, axis=1)]
    best = dist2(t)
    for _ in range(30):
        ch, sh = np.cosh(t), np.sinh(t)
        f1 = (a * ch - u) * a * sh + (b * sh - v) * b * ch
        f2 = (a * sh) ** 2 + (a * ch - u) * a * ch + (b * ch) ** 2 + (b * sh - v) * b * sh
        step = np.where(f2 > 0, -f1 / np.where(f2 > 0, f2, 1.0), 0.0)
        step = np.clip(step, -0.5, 0.5)
        cand = t + step
        dc = dist2(cand)
        better = dc < best
        t = np.where(better, cand, t)
        best = np.where(better, dc, best)
    return np.sqrt(best)


def distance_to_locus(locus: LocusClass, points) -> np.ndarray:
    pts = np.atleast_2d(np.asarray(points, dtype=float)).reshape(-1, 2)
    if isinstance(locus, EmptySet):
        return np.full(len(pts), np.inf)
    if isinstance(locus, FullPlane):
        return np.zeros(len(pts))
    if isinstance(locus, SinglePoint):
        return np.hypot(*(pts - np.array(tuple(locus.point))).T)
    if isinstance(locus, WholeLine):
        return _line_distance(locus.line, pts)
    if isinstance(locus, LineMinusOpenSegment):
        line = locus.line
        d = line.direction
        t = pts @ np.array(d)
        g1, g2 = sorted((line.param_of(locus.q1), line.param_of(locus.q2)))
        off = _line_distance(line, pts)
        to_ends = np.minimum(
            np.hypot(*(pts - np.array(tuple(locus.q1))).T), np.hypot(*(pts - np.array(tuple(locus.q2))).T)
        )
        return np.where((t <= g1) | (t >= g2), off, to_ends)
    if isinstance(locus, DegenerateHyperbola):
        return np.minimum(_line_distance(locus.lines[0], pts), _line_distance(locus.lines[1], pts))
    return _hyperbola_distance(locus, pts)


def verify_locus(
    p1: LinePair,
    p2: LinePair,
    claimed: LocusClass,
    w: Optional[ScanWindow] = None,
    tol: float = 1e-6,
    n_samples: int = 200,
) -> OracleReport:
    """Check a claimed locus both ways inside the window.

    Scanned zeros must lie within ``tol`` of the claim, and points sampled
    from the claim must have ``|membership residual| <= tol``. A full-plane
    claim is checked on 1000 random points instead of scanning.
    """
    w = w if w is not None else ScanWindow.square(10.0)
    lo, hi = tuple(w.lo), tuple(w.hi)
    if isinstance(claimed, FullPlane):
        pts = np.random.default_rng(0).uniform(lo, hi, size=(1000, 2))
        res = np.abs(membership_residuals(p1, p2, pts))
        return OracleReport(np.empty((0, 2)), 0.0, float(res.max()), len(pts), tol)
    scanned = scan_zero_set(p1, p2, w)
    dist = distance_to_locus(claimed, scanned)
    samples = sample_locus(claimed, lo, hi, n_samples)
    res = np.abs(membership_residuals(p1, p2, samples)) if len(samples) else np.zeros(0)
    return OracleReport(
        scanned,
        float(dist.max()) if len(dist) else 0.0,
        float(res.max()) if len(res) else 0.0,
        len(samples),
        tol,
    )


# ---------------------------------------------------------------------------
# Direct rectangle search


def _mnorm(m: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.sqrt(np.einsum("...i,ij,...j->...", v, m, v))


class _ChordSweep:
    """Chords through a fixed center, parameterized by direction angle."""

    def __init__(self, pair: LinePair, center: np.ndarray, metric: np.ndarray):
        self.pair = pair
        self.c = center
        self.m = metric
        self.normals = [np.array(l.normal) for l in pair.lines()]
        self.offsets = [l.offset for l in pair.lines()]

    def ends(self, alpha):
        alpha = np.asarray(alpha, dtype=float)
        u = np.stack([np.cos(alpha), np.sin(alpha)], axis=-1)
        out = []
        for n, off in zip(self.normals, self.offsets):
            den = u @ n
            with np.errstate(divide="ignore", invalid="ignore"):
                t = (off - self.c @ n) / den
            out.append(self.c + t[..., None] * u)
        return out, u

    def mismatch(self, alpha):
        """Signed offset of the chord midpoint from the center, along the chord."""
        (q1, q2), u = self.ends(alpha)
        return np.einsum("...i,...i->...", 0.5 * (q1 + q2) - self.c, u)

    def halflength(self, alpha):
        (q1, q2), _ = self.ends(alpha)
        h = 0.5 * _mnorm(self.m, q1 - q2)
        # 0/0 when the center lies on a line and the chord runs along it
        return np.where(np.isnan(h), np.inf, h)


def _admissible(sweep: _ChordSweep, scale: float):
    """``("all", None)`` when every direction works, else ``("finite", angles)``.

    For a crossing pair the chord bisected at the center is the solution of a
    2x2 linear system; for a parallel pair the center must lie on the midline.
    """
    pair, c = sweep.pair, sweep.c
    (n1, n2), (o1, o2) = sweep.normals, sweep.offsets
    if pair.is_parallel:
        s = 1.0 if n1 @ n2 >= 0 else -1.0
        return ("all", None) if abs(c @ n1 - 0.5 * (o1 + s * o2)) <= 1e-9 * scale else ("finite", [])
    # c + w on l1, c - w on l2
    w = np.linalg.solve(np.array([n1, n2]), np.array([o1 - c @ n1, c @ n2 - o2]))
    if np.hypot(*w) <= 1e-12 * scale:
        return "all", None
    return "finite", [math.atan2(w[1], w[0]) % math.pi]


def _solve_length(sweep: _ChordSweep, target: float, scale: float) -> Optional[float]:
    """A direction whose chord has the given half-length, if any."""
    res = minimize_scalar(
        lambda a: float(sweep.halflength(a)),
        bounds=_min_bracket(sweep),
        method="bounded",
        options={"xatol": 1e-13},
    )
    amin, hmin = res.x, float(res.fun)
    if abs(target - hmin) <= 1e-12 * max(1.0, target):
        return amin
    if target < hmin or hmin <= 1e-12 * scale:
        # zero minimum: the center is the crossing and every chord is degenerate
        return None
    # the half-length grows without bound as the chord turns towards the lines
    lo, hi = amin, _min_bracket(sweep)[1]
    f = lambda a: float(sweep.halflength(a)) - target
    b = lo + 0.5 * (hi - lo)
    while f(b) < 0 and hi - b > 1e-15:
        b = b + 0.5 * (hi - b)
    return brentq(f, lo, b, xtol=1e-15, rtol=1e-15, maxiter=200)


def _min_bracket(sweep: _ChordSweep) -> tuple[float, float]:
    beta = sweep.pair.l1.angle
    return beta + 1e-9, beta + math.pi - 1e-9


def brute_rectangle_search(
    p1: LinePair,
    p2: LinePair,
    center: PointLike,
    metric: Optional[SymMat2] = None,
) -> tuple[Optional[InscribedRectangle], float]:
    """Best rectangle (w.r.t. ``metric``) centred at ``center`` with one
    diagonal across each pair, and its residual.

    The residual is the half-diagonal length mismatch in the metric plus the
    midpoint mismatch of both chords; ``inf`` when a pair has no chord
    through ``center`` at all.
    """
    m = (metric if metric is not None else SymMat2.identity()).array()
    c = np.array(tuple(as_point(center)))
    scale = max(1.0, float(np.abs(c).max()))
    sweeps = [_ChordSweep(p, c, m) for p in (p1, p2)]
    kinds = [_admissible(s, scale) for s in sweeps]
    if any(k == "finite" and not roots for k, roots in kinds):
        return None, math.inf

    chosen: list[float]
    if kinds[0][0] == "finite" and kinds[1][0] == "finite":
        chosen, best = None, math.inf
        for a1 in kinds[0][1]:
            for a2 in kinds[1][1]:
                gap = abs(float(sweeps[0].halflength(a1)) - float(sweeps[1].halflength(a2)))
                if gap < best:
                    chosen, best = [a1, a2], gap
    elif kinds[0][0] == "all" and kinds[1][0] == "all":
        mins = [
            minimize_scalar(lambda a, s=s: float(s.halflength(a)), bounds=_min_bracket(s), method="bounded",
                            options={"xatol": 1e-13})
            for s in sweeps
        ]
        hi_idx = 0 if mins[0].fun >= mins[1].fun else 1
        target = float(mins[hi_idx].fun)
        other = _solve_length(sweeps[1 - hi_idx], target, scale)
        chosen = [0.0, 0.0]
        chosen[hi_idx] = float(mins[hi_idx].x)
        if other is None:
            return None, math.inf
        chosen[1 - hi_idx] = other
    else:
        fixed = 0 if kinds[0][0] == "finite" else 1
        best_rect = (None, math.inf)
        for a in kinds[fixed][1]:
            target = float(sweeps[fixed].halflength(a))
            if not math.isfinite(target):
                # the chord runs along one of its own lines
                continue
            other = _solve_length(sweeps[1 - fixed], target, scale)
            if other is None:
                continue
            pair_angles = [0.0, 0.0]
            pair_angles[fixed], pair_angles[1 - fixed] = a, other
            cand = _assemble(sweeps, pair_angles, c)
            if cand[1] < best_rect[1]:
                best_rect = cand
        if best_rect[0] is None:
            # report how far the free chord's reachable lengths fall from the target
            free = sweeps[1 - fixed]
            hmin = minimize_scalar(
                lambda x: float(free.halflength(x)), bounds=_min_bracket(free), method="bounded",
                options={"xatol": 1e-13},
            ).fun
            gaps = [abs(hmin - float(sweeps[fixed].halflength(a))) for a in kinds[fixed][1]]
            return None, min(gaps + [math.inf])
        return best_rect
    return _assemble(sweeps, chosen, c)


def _assemble(sweeps, angles, c) -> tuple[InscribedRectangle, float]:
    (e1, e2), _ = sweeps[0].ends(angles[0])
    (f1, f2), _ = sweeps[1].ends(angles[1])
    h1 = float(sweeps[0].halflength(angles[0]))
    h2 = float(sweeps[1].halflength(angles[1]))
    resid = abs(h1 - h2) + abs(float(sweeps[0].mismatch(angles[0]))) + abs(float(sweeps[1].mismatch(angles[1])))
    center = Point2(*c)
    lines = (sweeps[0].pair.l1, sweeps[1].pair.l1, sweeps[0].pair.l2, sweeps[1].pair.l2)
    rect = InscribedRectangle(
        (Point2(*e1), Point2(*f1), Point2(*e2), Point2(*f2)), center, 0.5 * (h1 + h2), lines
    )
    return rect, resid


def _distinct_equal_chords(sweep: _ChordSweep, scale: float) -> bool:
    """Whether two different chords bisected at the center have equal length."""
    kind, roots = _admissible(sweep, scale)
    if kind == "all":
        return True
    hs = [float(sweep.halflength(r)) for r in roots]
    return any(abs(hs[i] - hs[j]) <= 1e-9 * scale for i in range(len(hs)) for j in range(i))


def verify_single_pair(
    pair: LinePair,
    claimed: LocusClass,
    w: Optional[ScanWindow] = None,
    tol: float = 1e-6,
    n_samples: int = 50,
    n_grid: int = 41,
) -> OracleReport:
    """Check the locus of rectangles with all four vertices on one line pair.

    Two vertices sit on each line. Either both diagonals join the lines
    (found by sweeping chords through the center) or each diagonal lies
    along one line, which puts the center at the crossing.
    """
    w = w if w is not None else ScanWindow.square(10.0)
    lo, hi = tuple(w.lo), tuple(w.hi)
    xs = np.linspace(lo[0], hi[0], n_grid)
    ys = np.linspace(lo[1], hi[1], n_grid)
    nodes = np.array([(x, y) for y in ys for x in xs])
    hits = []
    for p in nodes:
        sweep = _ChordSweep(pair, p, np.eye(2))
        if _distinct_equal_chords(sweep, max(1.0, float(np.abs(p).max()))):
            hits.append(p)
    if not pair.is_parallel:
        hits.append(np.array(tuple(pair.crossing)))
    scanned = np.array(hits).reshape(-1, 2)
    dist = distance_to_locus(claimed, scanned)

    samples = sample_locus(claimed, lo, hi, n_samples)
    res = []
    for p in samples:
        if not pair.is_parallel:
            res.append(float(np.hypot(*(p - np.array(tuple(pair.crossing))))))
            continue
        sweep = _ChordSweep(pair, p, np.eye(2))
        beta = pair.l1.angle + 0.5 * math.pi
        _, r = _assemble([sweep, sweep], [beta - 0.3, beta + 0.3], p)
        res.append(r)
    res = np.array(res)
    return OracleReport(
        scanned,
        float(dist.max()) if len(dist) else 0.0,
        float(res.max()) if len(res) else 0.0,
        len(samples),
        tol,
    )
