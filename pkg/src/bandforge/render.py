"""Deterministic SVG drawings of developments and of the overhead view."""
from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .prismatoid import Prismatoid
from .unfold import Development, OverlapReport, TopPlacement


def fmt(x: float) -> str:
    """9 significant digits, no negative zero."""
    s = f"{float(x):.9g}"
    return "0" if s in ("-0", "0") else s


def _pts(points) -> str:
    return " ".join(f"{fmt(x)},{fmt(y)}" for x, y in points)


def _path(points) -> str:
    pts = list(points)
    head = f"M {fmt(pts[0][0])},{fmt(pts[0][1])}"
    tail = " ".join(f"L {fmt(x)},{fmt(y)}" for x, y in pts[1:])
    return f"{head} {tail} Z"


@dataclass(frozen=True)
class FigureStyle:
    rim_color: str = "red"
    attach_color: str = "blue"
    band_fill: str = "#dddddd"
    band_stroke: str = "#555555"
    top_fill: str = "#fff3b0"
    top_stroke: str = "#222222"
    overlap_fill: str = "#ff00ff"
    marker_color: str = "#cc0000"
    stroke: float = 0.004       # fraction of the drawing diagonal
    rim_stroke: float = 0.008
    marker_radius: float = 0.04
    canvas: int = 800           # pixel width of the longer side
    margin: float = 0.05


class _Canvas:
    """Collects SVG elements in model coordinates (y up)."""

    def __init__(self, points, style: FigureStyle):
        pts = np.asarray(points, dtype=float)
        lo, hi = pts.min(0), pts.max(0)
        span = hi - lo
        pad = style.margin * max(span.max(), 1e-12)
        self.lo = lo - pad
        self.hi = hi + pad
        self.diag = float(np.hypot(*(self.hi - self.lo)))
        self.style = style
        self.body = []
        self.labels = []

    def w(self, frac):
        return fmt(frac * self.diag)

    def add(self, element: str):
        self.body.append(element)

    def label(self, text, x, y, size=0.025, cls="label"):
        # text sits outside the flipped group so it reads upright
        self.labels.append(
            f'<text class="{cls}" x="{fmt(x)}" y="{fmt(-y)}" font-size="{self.w(size)}" '
            f'font-family="sans-serif" text-anchor="middle">{escape(text)}</text>'
        )

    def tostring(self) -> bytes:
        W, H = self.hi - self.lo
        scale = self.style.canvas / max(W, H)
        vb = f"{fmt(self.lo[0])} {fmt(-self.hi[1])} {fmt(W)} {fmt(H)}"
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{fmt(W * scale)}" height="{fmt(H * scale)}" viewBox="{vb}">\n'
        )
        lines = [head, '<g transform="scale(1,-1)">\n']
        lines += [e + "\n" for e in self.body]
        lines.append("</g>\n")
        lines += [e + "\n" for e in self.labels]
        lines.append("</svg>\n")
        return "".join(lines).encode("utf-8")


def render_unfolding_svg(dev: Development, placement: TopPlacement | None = None,
                         report: OverlapReport | None = None, style: FigureStyle = FigureStyle()) -> bytes:
    """Band faces, red rim, and optionally the placed top with its blue hinge and overlap markers."""
    pts = [q.vertices for q in dev.quads]
    if placement is not None:
        pts.append(placement.hexagon.vertices)
    cv = _Canvas(np.vstack(pts), style)
    for m, quad in enumerate(dev.quads):
        cv.add(f'<path class="band-face" data-face="{dev.face_index(m)}" d="{_path(quad.vertices)}" '
               f'fill="{style.band_fill}" stroke="{style.band_stroke}" stroke-width="{cv.w(style.stroke)}"/>')
    cv.add(f'<polyline class="rim" points="{_pts(dev.rim)}" fill="none" '
           f'stroke="{style.rim_color}" stroke-width="{cv.w(style.rim_stroke)}"/>')
    if placement is not None:
        cv.add(f'<path class="top-face" d="{_path(placement.hexagon.vertices)}" fill="{style.top_fill}" '
               f'fill-opacity="0.8" stroke="{style.top_stroke}" stroke-width="{cv.w(style.stroke)}"/>')
        (x0, y0), (x1, y1) = placement.attach_edge
        cv.add(f'<line class="attach-edge" x1="{fmt(x0)}" y1="{fmt(y0)}" x2="{fmt(x1)}" y2="{fmt(y1)}" '
               f'stroke="{style.attach_color}" stroke-width="{cv.w(style.rim_stroke * 1.5)}"/>')
    if report is not None:
        for f in report.faces:
            cv.add(f'<path class="overlap" data-face="{f.face}" d="{_path(f.polygon.vertices)}" '
                   f'fill="{style.overlap_fill}"/>')
        for f in report.faces:
            cx, cy = f.polygon.centroid()
            cv.add(f'<circle class="overlap-marker" data-face="{f.face}" cx="{fmt(cx)}" cy="{fmt(cy)}" '
                   f'r="{cv.w(style.marker_radius)}" fill="none" stroke="{style.marker_color}" '
                   f'stroke-width="{cv.w(style.stroke)}"/>')
    k = dev.cut
    cv.label(f"a{k}", *dev.rim[0], cls="label cut")
    cv.label(f"a{k}", *dev.rim[6], cls="label cut")
    return cv.tostring()


def render_overhead_svg(prism: Prismatoid, style: FigureStyle = FigureStyle()) -> bytes:
    """Orthogonal projection onto the plane of ``A`` with vertex labels and the h / y extents."""
    a = prism.a[:, :2]
    b = prism.b[:, :2]
    cv = _Canvas(np.vstack([a, b]), style)
    cv.add(f'<path class="outline bottom" d="{_path(b)}" fill="none" stroke="#444444" '
           f'stroke-width="{cv.w(style.stroke)}"/>')
    cv.add(f'<path class="outline top" d="{_path(a)}" fill="{style.top_fill}" stroke="{style.rim_color}" '
           f'stroke-width="{cv.w(style.stroke)}"/>')
    for i in range(6):
        cv.add(f'<line class="lateral" x1="{fmt(a[i][0])}" y1="{fmt(a[i][1])}" x2="{fmt(b[i][0])}" '
               f'y2="{fmt(b[i][1])}" stroke="#888888" stroke-width="{cv.w(style.stroke / 2)}"/>')
    s = prism.params.s
    # the equilateral triangle that A is built on
    tri = np.array([[s / 2, 0.0], [0.0, s * np.sqrt(3) / 2], [-s / 2, 0.0]])
    cv.add(f'<path class="triangle" d="{_path(tri)}" fill="none" stroke="#999999" stroke-dasharray="'
           f'{cv.w(0.01)},{cv.w(0.01)}" stroke-width="{cv.w(style.stroke / 2)}"/>')
    # h: origin to a_0; y: a_0 to b_0 (both along the y-axis)
    dx = cv.w(0.0)
    cv.add(f'<line class="extent h" x1="{dx}" y1="0" x2="{dx}" y2="{fmt(a[0][1])}" '
           f'stroke="{style.attach_color}" stroke-width="{cv.w(style.stroke)}"/>')
    cv.add(f'<line class="extent y" x1="{dx}" y1="{fmt(a[0][1])}" x2="{dx}" y2="{fmt(b[0][1])}" '
           f'stroke="#008800" stroke-width="{cv.w(style.stroke)}"/>')
    off = 0.03 * cv.diag
    cv.label("h", off, a[0][1] / 2, cls="label extent")
    cv.label("y", off, (a[0][1] + b[0][1]) / 2, cls="label extent")
    centre = np.array([0.0, s * np.sqrt(3) / 6])
    for name, pts in (("a", a), ("b", b)):
        for i, p in enumerate(pts):
            d = p - centre
            d = d / np.linalg.norm(d)
            # a-labels inside their hexagon, b-labels outside theirs
            q = p - d * off if name == "a" else p + d * off
            cv.label(f"{name}{i}", *q, cls=f"label vertex {name}")
    return cv.tostring()
