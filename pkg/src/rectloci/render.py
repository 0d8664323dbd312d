"""Static SVG figures of lines, loci, marked points and rectangles.

Output is plain SVG 1.1 with fixed number formatting, so identical inputs
give identical bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence
from xml.sax.saxutils import escape

import numpy as np

from .geom import Line, clip_line
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
)
from .oracle import ScanWindow

LOCUS_LABELS = {
    "empty": "empty locus",
    "point": "point",
    "plane": "whole plane",
    "line": "line",
    "line-minus-segment": "line minus open segment",
    "degenerate-hyperbola": "degenerate hyperbola",
    "hyperbola": "hyperbola",
}


@dataclass(frozen=True)
class RenderStyle:
    panel_size: int = 360
    margin: int = 24
    line_width: float = 1.0
    locus_width: float = 2.0
    line_color: str = "#888888"
    pair_colors: tuple[str, str] = ("#1f77b4", "#2ca02c")
    locus_color: str = "#d62728"
    mark_color: str = "#111111"
    rect_color: str = "#9467bd"
    plane_opacity: float = 0.15
    samples_per_branch: int = 400
    gap_dash: str = "6,4"
    columns: int = 3

    def __post_init__(self):
        if self.samples_per_branch < 2:
            raise ValueError("samples_per_branch must be at least 2")
        if self.columns < 1:
            raise ValueError("columns must be positive")


@dataclass
class Panel:
    """One plot: all scene lines, the lines of the chosen pairs highlighted."""

    title: str
    locus: Optional[LocusClass] = None
    highlight: Sequence[Sequence[str]] = ()
    marks: Sequence[tuple[float, float]] = ()
    rectangles: Sequence[InscribedRectangle] = ()
    notes: list[str] = field(default_factory=list)


def _f(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


class _Frame:
    def __init__(self, w: ScanWindow, size: float, ox: float, oy: float):
        self.w, self.size, self.ox, self.oy = w, size, ox, oy
        self.sx = size / (w.hi.x - w.lo.x)
        self.sy = size / (w.hi.y - w.lo.y)

    def px(self, x: float, y: float) -> tuple[str, str]:
        return _f(self.ox + (x - self.w.lo.x) * self.sx), _f(self.oy + (self.w.hi.y - y) * self.sy)

    def segment(self, line: Line, t0: float, t1: float, attrs: str) -> str:
        a, b = line.point_at(t0), line.point_at(t1)
        (x1, y1), (x2, y2) = self.px(a.x, a.y), self.px(b.x, b.y)
        return f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {attrs}/>'

    def full_line(self, line: Line, attrs: str) -> Optional[str]:
        span = clip_line(line, tuple(self.w.lo), tuple(self.w.hi))
        return None if span is None else self.segment(line, span[0], span[1], attrs)


def _hyperbola_paths(h: Hyperbola, fr: _Frame, style: RenderStyle, attrs: str) -> list[str]:
    w = fr.w
    reach = max(abs(w.lo.x), abs(w.lo.y), abs(w.hi.x), abs(w.hi.y)) + h.center.norm()
    _, a, _, b = h.axes()
    # far enough for both ends of each branch to leave the window
    tmax = math.asinh(2.0 * reach / min(a, b)) + 0.5
    t = np.linspace(-tmax, tmax, style.samples_per_branch)
    out = []
    for sign in (1, -1):
        pts = h.branch_points(t, sign)
        d = " ".join(
            ("M" if i == 0 else "L") + " ".join(fr.px(x, y)) for i, (x, y) in enumerate(pts)
        )
        out.append(f'<path class="branch" d="{d}" {attrs}/>')
    return out


def _locus_elements(locus: LocusClass, fr: _Frame, style: RenderStyle) -> list[str]:
    stroke = f'stroke="{style.locus_color}" stroke-width="{_f(style.locus_width)}" fill="none"'
    out: list[str] = []
    if isinstance(locus, EmptySet):
        return out
    if isinstance(locus, FullPlane):
        x, y = fr.px(fr.w.lo.x, fr.w.hi.y)
        return [
            f'<rect class="plane" x="{x}" y="{y}" width="{_f(fr.size)}" height="{_f(fr.size)}" '
            f'fill="{style.locus_color}" fill-opacity="{_f(style.plane_opacity)}"/>'
        ]
    if isinstance(locus, SinglePoint):
        x, y = fr.px(*locus.point)
        return [f'<circle class="locus-point" cx="{x}" cy="{y}" r="4.000" fill="{style.locus_color}"/>']
    if isinstance(locus, WholeLine):
        s = fr.full_line(locus.line, f'class="locus" {stroke}')
        return [s] if s else []
    if isinstance(locus, LineMinusOpenSegment):
        line = locus.line
        g1, g2 = sorted((line.param_of(locus.q1), line.param_of(locus.q2)))
        span = clip_line(line, tuple(fr.w.lo), tuple(fr.w.hi))
        if span is None:
            return out
        t0, t1 = span
        if t0 < g1:
            out.append(fr.segment(line, t0, min(g1, t1), f'class="locus" {stroke}'))
        if t1 > g2:
            out.append(fr.segment(line, max(g2, t0), t1, f'class="locus" {stroke}'))
        lo, hi = max(g1, t0), min(g2, t1)
        if hi > lo:
            out.append(fr.segment(line, lo, hi, f'class="gap" {stroke} stroke-dasharray="{style.gap_dash}" stroke-opacity="0.5"'))
        return out
    if isinstance(locus, DegenerateHyperbola):
        for line in locus.lines:
            s = fr.full_line(line, f'class="locus" {stroke}')
            if s:
                out.append(s)
        return out
    return _hyperbola_paths(locus, fr, style, stroke)


def _panel(
    panel: Panel, lines: Sequence[tuple[str, Line]], w: ScanWindow, style: RenderStyle, ox: float, oy: float, idx: int
) -> list[str]:
    size = style.panel_size
    fr = _Frame(w, size, ox, oy)
    colors = {}
    for j, group in enumerate(panel.highlight):
        for label in group:
            colors.setdefault(label, style.pair_colors[j % len(style.pair_colors)])
    out = [
        f'<g id="panel-{idx}" class="panel">',
        f'<rect x="{_f(ox)}" y="{_f(oy)}" width="{size}" height="{size}" fill="white" stroke="#cccccc"/>',
        f'<g clip-path="url(#clip-{idx})">',
    ]
    for label, line in lines:
        c = colors.get(label, style.line_color)
        width = style.line_width * (1.5 if label in colors else 1.0)
        s = fr.full_line(line, f'class="input" stroke="{c}" stroke-width="{_f(width)}"')
        if s:
            out.append(s)
    if panel.locus is not None:
        out.extend(_locus_elements(panel.locus, fr, style))
    for r in panel.rectangles:
        pts = " ".join(",".join(fr.px(v.x, v.y)) for v in r.vertices)
        out.append(f'<polygon class="rect" points="{pts}" fill="none" stroke="{style.rect_color}" stroke-width="1.000"/>')
    for x, y in panel.marks:
        cx, cy = fr.px(x, y)
        out.append(f'<circle class="mark" cx="{cx}" cy="{cy}" r="3.000" fill="{style.mark_color}"/>')
    out.append("</g>")
    legend = [panel.title] if panel.title else []
    if panel.locus is not None:
        legend.append(LOCUS_LABELS[panel.locus.kind])
    for k, text in enumerate(legend):
        out.append(
            f'<text x="{_f(ox + 6)}" y="{_f(oy + 16 + 14 * k)}" font-family="sans-serif" font-size="12">'
            f"{escape(text)}</text>"
        )
    out.append("</g>")
    return out


def render_svg(
    lines: Sequence[tuple[str, Line]],
    panels: Sequence[Panel],
    window: ScanWindow,
    style: RenderStyle = RenderStyle(),
) -> str:
    """One panel per entry, laid out on a grid of ``style.columns`` columns."""
    if not panels:
        panels = [Panel("")]
    cols = min(style.columns, len(panels))
    rows = math.ceil(len(panels) / cols)
    cell = style.panel_size + style.margin
    width, height = cols * cell + style.margin, rows * cell + style.margin
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        "<defs>",
    ]
    origins = []
    for i in range(len(panels)):
        ox = style.margin + (i % cols) * cell
        oy = style.margin + (i // cols) * cell
        origins.append((ox, oy))
        out.append(
            f'<clipPath id="clip-{i}"><rect x="{_f(ox)}" y="{_f(oy)}" '
            f'width="{style.panel_size}" height="{style.panel_size}"/></clipPath>'
        )
    out.append("</defs>")
    for i, (panel, (ox, oy)) in enumerate(zip(panels, origins)):
        out.extend(_panel(panel, lines, window, style, ox, oy, i))
    out.append("</svg>")
    return "\n".join(out) + "\n"
