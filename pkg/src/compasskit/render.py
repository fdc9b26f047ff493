"""Deterministic SVG output for traces.

Every object becomes one element, in trace order. Coordinates are written
with six decimals, so identical traces give byte-identical documents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .engine import Trace
from .errors import EmptyTrace
from .geom import Circle, Line, Point, PointSet, Polyline, Ray

ROLES = ("given", "aux", "result")


@dataclass(frozen=True)
class Style:
    stroke_width: float = 1.5
    canvas: float = 600.0  # longer side of the drawing area, px
    margin: float = 20.0
    flip_y: bool = True
    point_radius: float = 2.0
    colors: dict = field(default_factory=lambda: {
        "given": "#d62728", "aux": "#7f7f7f", "result": "#111111",
    })

    def __post_init__(self):
        if not (self.stroke_width > 0 and self.canvas > 0 and self.margin >= 0
                and self.point_radius > 0):
            raise ValueError("style dimensions must be positive")


@dataclass(frozen=True)
class Viewport:
    xmin: float
    ymin: float
    xmax: float
    ymax: float
    scale: float
    margin: float
    flip_y: bool

    @property
    def width(self) -> float:
        return (self.xmax - self.xmin) * self.scale + 2 * self.margin

    @property
    def height(self) -> float:
        return (self.ymax - self.ymin) * self.scale + 2 * self.margin

    def to_svg(self, p: Point) -> tuple[float, float]:
        sx = self.margin + (p.x - self.xmin) * self.scale
        if self.flip_y:
            sy = self.margin + (self.ymax - p.y) * self.scale
        else:
            sy = self.margin + (p.y - self.ymin) * self.scale
        return sx, sy

    def from_svg(self, sx: float, sy: float) -> Point:
        x = (sx - self.margin) / self.scale + self.xmin
        if self.flip_y:
            y = self.ymax - (sy - self.margin) / self.scale
        else:
            y = (sy - self.margin) / self.scale + self.ymin
        return Point(x, y)

    def model_box(self) -> tuple[float, float, float, float]:
        pad = self.margin / self.scale
        return self.xmin - pad, self.ymin - pad, self.xmax + pad, self.ymax + pad


def _extent(obj):
    if isinstance(obj, Point):
        return [obj]
    if isinstance(obj, Circle):
        c, r = obj.center, obj.radius
        return [Point(c.x - r, c.y - r), Point(c.x + r, c.y + r)]
    if isinstance(obj, (Line, Ray)):
        return [obj.anchor]
    if isinstance(obj, (Polyline, PointSet)):
        return list(obj.points)
    return []


def viewport(t: Trace, style: Style = Style()) -> Viewport:
    pts = [p for obj in t.objects.values() for p in _extent(obj)]
    if not pts:
        raise EmptyTrace("nothing to draw")
    xmin, xmax = min(p.x for p in pts), max(p.x for p in pts)
    ymin, ymax = min(p.y for p in pts), max(p.y for p in pts)
    span = max(xmax - xmin, ymax - ymin)
    if span <= 0:
        span = 1.0
        xmin, xmax, ymin, ymax = xmin - 0.5, xmax + 0.5, ymin - 0.5, ymax + 0.5
    return Viewport(xmin, ymin, xmax, ymax, style.canvas / span, style.margin, style.flip_y)


def _clip(anchor: Point, d: Point, box, t_min: float) -> tuple[float, float] | None:
    """Parameter interval of anchor + t*d inside box (Liang-Barsky)."""
    lo, hi = t_min, math.inf
    for p0, dp, a, b in ((anchor.x, d.x, box[0], box[2]), (anchor.y, d.y, box[1], box[3])):
        if abs(dp) < 1e-15:
            if not a <= p0 <= b:
                return None
            continue
        t1, t2 = (a - p0) / dp, (b - p0) / dp
        lo, hi = max(lo, min(t1, t2)), min(hi, max(t1, t2))
    return (lo, hi) if lo <= hi else None


def fmt(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _role(oid: str, t: Trace) -> str:
    cls = t.classes.get(oid)
    if cls is None or cls in ("macro", "numeric"):
        return "result"
    if cls == "given":
        return "given"
    return "aux"


def _attrs(**kw) -> str:
    return " ".join(f'{k.rstrip("_")}="{v}"' for k, v in kw.items())


def _element(oid: str, obj, role: str, vp: Viewport, style: Style) -> str | None:
    if isinstance(obj, Point):
        cx, cy = vp.to_svg(obj)
        return f'<circle {_attrs(id=oid, class_=f"point {role}", cx=fmt(cx), cy=fmt(cy), r=fmt(style.point_radius))}/>'
    if isinstance(obj, Circle):
        cx, cy = vp.to_svg(obj.center)
        return f'<circle {_attrs(id=oid, class_=f"circle {role}", cx=fmt(cx), cy=fmt(cy), r=fmt(obj.radius * vp.scale))}/>'
    if isinstance(obj, (Line, Ray)):
        tag = "line" if isinstance(obj, Line) else "ray"
        span = _clip(obj.anchor, obj.direction, vp.model_box(),
                     -math.inf if isinstance(obj, Line) else 0.0)
        if span is None:
            return f'<g {_attrs(id=oid, class_=f"{tag} {role}")}/>'
        (x1, y1), (x2, y2) = (vp.to_svg(obj.anchor + obj.direction * s) for s in span)
        return f'<line {_attrs(id=oid, class_=f"{tag} {role}", x1=fmt(x1), y1=fmt(y1), x2=fmt(x2), y2=fmt(y2))}/>'
    if isinstance(obj, Polyline):
        parts = [f'<g {_attrs(id=oid, class_=f"polyline {role}")}>']
        for seg in obj.segments():
            (x1, y1), (x2, y2) = vp.to_svg(seg.a), vp.to_svg(seg.b)
            parts.append(f'  <line {_attrs(class_="link", x1=fmt(x1), y1=fmt(y1), x2=fmt(x2), y2=fmt(y2))}/>')
        parts.append("</g>")
        return "\n".join(parts)
    if isinstance(obj, PointSet):
        # members are separate objects of the trace and drawn on their own
        return f'<g {_attrs(id=oid, class_=f"points {role}")}/>'
    return None


def _css(style: Style) -> str:
    c = style.colors
    w = fmt(style.stroke_width)
    return "\n".join([
        f"line, circle {{ fill: none; stroke-width: {w}; }}",
        f".given {{ stroke: {c['given']}; }}",
        f".aux {{ stroke: {c['aux']}; stroke-dasharray: 4 3; }}",
        f".result {{ stroke: {c['result']}; stroke-width: {fmt(2 * style.stroke_width)}; }}",
        f".link {{ stroke: {c['result']}; }}",
        "circle.point { stroke: none; }",
        f"circle.point.given {{ fill: {c['given']}; }}",
        f"circle.point.aux {{ fill: {c['aux']}; }}",
        f"circle.point.result {{ fill: {c['result']}; }}",
    ])


def render_trace(t: Trace, style: Style = Style()) -> str:
    if not t.objects:
        raise EmptyTrace("trace has no objects")
    vp = viewport(t, style)
    w, h = fmt(vp.width), fmt(vp.height)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        "<style>",
        _css(style),
        "</style>",
        '<g class="trace">',
    ]
    for oid, obj in t.objects.items():
        el = _element(oid, obj, _role(oid, t), vp, style)
        if el is not None:
            out.append(el)
    out += ["</g>", "</svg>", ""]
    return "\n".join(out)
