"""Numeric plane geometry kernel.

All values are immutable. Intersections return points in a fixed,
tolerance-aware lexicographic order (x first, then y) so that branch
indices in construction programs are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cmp_to_key
from typing import NamedTuple, Optional, Union

from .errors import (
    ConcentricIdentical,
    DegenerateInput,
    InvalidGeometry,
    Parallel,
    ZeroVector,
)


@dataclass(frozen=True)
class Tolerance:
    eps_abs: float = 1e-9
    eps_rel: float = 1e-12

    def __post_init__(self):
        if not (self.eps_abs > 0 and self.eps_rel > 0):
            raise InvalidGeometry("tolerances must be strictly positive")

    def close(self, a: float, b: float) -> bool:
        return abs(a - b) <= self.eps_abs + self.eps_rel * max(abs(a), abs(b))


DEFAULT_TOL = Tolerance()


def _finite(*values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise InvalidGeometry(f"non-finite value {v!r}")


@dataclass(frozen=True)
class Point:
    """A point, also used as a free vector."""

    x: float
    y: float

    def __post_init__(self):
        _finite(self.x, self.y)

    def __add__(self, other: Point) -> Point:
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point) -> Point:
        return Point(self.x - other.x, self.y - other.y)

    def __mul__(self, k: float) -> Point:
        return Point(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __neg__(self) -> Point:
        return Point(-self.x, -self.y)

    def dot(self, other: Point) -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: Point) -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def dist(self, other: Point) -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def unit(self, tol: Tolerance = DEFAULT_TOL) -> Point:
        n = self.norm()
        if n <= tol.eps_abs:
            raise ZeroVector(f"cannot normalize {self}")
        return Point(self.x / n, self.y / n)

    def perp(self) -> Point:
        """Counterclockwise rotation by 90 degrees."""
        return Point(-self.y, self.x)

    def isclose(self, other: Point, tol: Tolerance = DEFAULT_TOL) -> bool:
        return self.dist(other) <= tol.eps_abs

    def near(self, other: Point, tol: Tolerance = DEFAULT_TOL) -> bool:
        return tol.close(self.x, other.x) and tol.close(self.y, other.y)


def _check_unit(v: Point) -> None:
    if abs(v.norm() - 1.0) > 1e-9:
        raise InvalidGeometry(f"direction {v} is not a unit vector")


@dataclass(frozen=True)
class Line:
    anchor: Point
    direction: Point

    def __post_init__(self):
        _check_unit(self.direction)

    @classmethod
    def through(cls, p: Point, q: Point, tol: Tolerance = DEFAULT_TOL) -> Line:
        return cls(p, (q - p).unit(tol))

    def param(self, p: Point) -> float:
        return (p - self.anchor).dot(self.direction)

    def at(self, t: float) -> Point:
        return self.anchor + self.direction * t

    def distance(self, p: Point) -> float:
        return abs((p - self.anchor).cross(self.direction))


@dataclass(frozen=True)
class Ray:
    origin: Point
    direction: Point

    def __post_init__(self):
        _check_unit(self.direction)

    @classmethod
    def through(cls, p: Point, q: Point, tol: Tolerance = DEFAULT_TOL) -> Ray:
        return cls(p, (q - p).unit(tol))

    @property
    def anchor(self) -> Point:
        return self.origin

    def support(self) -> Line:
        return Line(self.origin, self.direction)

    def param(self, p: Point) -> float:
        return (p - self.origin).dot(self.direction)

    def at(self, t: float) -> Point:
        return self.origin + self.direction * t


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self):
        _finite(self.radius)
        if not self.radius > 0:
            raise InvalidGeometry(f"circle radius must be positive, got {self.radius}")

    def point_at(self, angle: float) -> Point:
        return Point(
            self.center.x + self.radius * math.cos(angle),
            self.center.y + self.radius * math.sin(angle),
        )

    def residual(self, p: Point) -> float:
        return abs(p.dist(self.center) - self.radius)


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    @property
    def length(self) -> float:
        return self.a.dist(self.b)

    @property
    def midpoint(self) -> Point:
        return midpoint(self.a, self.b)


@dataclass(frozen=True)
class Polyline:
    """Broken line through an ordered list of vertices."""

    points: tuple[Point, ...]

    def segments(self) -> list[Segment]:
        return [Segment(p, q) for p, q in zip(self.points, self.points[1:])]


@dataclass(frozen=True)
class PointSet:
    """Ordered group of points produced by a single macro."""

    points: tuple[Point, ...]


Curve = Union[Line, Ray, Circle]


def _lex_cmp(tol: Tolerance):
    def cmp(p: Point, q: Point) -> int:
        if abs(p.x - q.x) > tol.eps_abs:
            return -1 if p.x < q.x else 1
        if abs(p.y - q.y) > tol.eps_abs:
            return -1 if p.y < q.y else 1
        return 0

    return cmp


def sort_points(points, tol: Tolerance = DEFAULT_TOL) -> list[Point]:
    return sorted(points, key=cmp_to_key(_lex_cmp(tol)))


def midpoint(p: Point, q: Point) -> Point:
    return Point((p.x + q.x) / 2, (p.y + q.y) / 2)


def intersect_circle_circle(c1: Circle, c2: Circle, tol: Tolerance = DEFAULT_TOL) -> list[Point]:
    # canonical argument order keeps the result bit-identical under swapping
    if (c2.center.x, c2.center.y, c2.radius) < (c1.center.x, c1.center.y, c1.radius):
        c1, c2 = c2, c1
    r1, r2 = c1.radius, c2.radius
    delta = c2.center - c1.center
    d = delta.norm()
    if d <= tol.eps_abs:
        if abs(r1 - r2) <= tol.eps_abs:
            raise ConcentricIdentical("circles coincide")
        return []
    if d > r1 + r2 + tol.eps_abs or d < abs(r1 - r2) - tol.eps_abs:
        return []
    u = Point(delta.x / d, delta.y / d)
    if abs(d - (r1 + r2)) <= tol.eps_abs:
        return [c1.center + u * r1]
    if abs(d - abs(r1 - r2)) <= tol.eps_abs:
        return [c1.center + u * (r1 if r1 > r2 else -r1)]
    a = (d * d + r1 * r1 - r2 * r2) / (2 * d)
    h = math.sqrt(max(r1 * r1 - a * a, 0.0))
    base = c1.center + u * a
    n = u.perp()
    return sort_points([base + n * h, base - n * h], tol)


def _line_circle_params(line, c: Circle, tol: Tolerance) -> list[float]:
    t0 = (c.center - line.anchor).dot(line.direction)
    foot = line.anchor + line.direction * t0
    h = foot.dist(c.center)
    if abs(h - c.radius) <= tol.eps_abs:
        return [t0]
    if h > c.radius:
        return []
    half = math.sqrt(c.radius * c.radius - h * h)
    return [t0 - half, t0 + half]


def intersect_line_circle(l: Line, c: Circle, tol: Tolerance = DEFAULT_TOL) -> list[Point]:
    return sort_points([l.at(t) for t in _line_circle_params(l, c, tol)], tol)


def intersect_line_line(l1: Line, l2: Line, tol: Tolerance = DEFAULT_TOL) -> Point:
    denom = l1.direction.cross(l2.direction)
    if abs(denom) <= tol.eps_abs:
        raise Parallel("lines are parallel")
    t = (l2.anchor - l1.anchor).cross(l2.direction) / denom
    return l1.at(t)


def _on_ray(r: Ray, p: Point, tol: Tolerance) -> bool:
    return r.param(p) >= -tol.eps_abs


def intersect(a: Curve, b: Curve, tol: Tolerance = DEFAULT_TOL) -> list[Point]:
    """Intersect any two of line, ray, circle; rays keep only forward points."""
    if isinstance(a, Circle) and isinstance(b, Circle):
        return intersect_circle_circle(a, b, tol)
    if isinstance(a, Circle):
        a, b = b, a
    if isinstance(b, Circle):
        pts = intersect_line_circle(Line(a.anchor, a.direction), b, tol)
    else:
        pts = [intersect_line_line(Line(a.anchor, a.direction), Line(b.anchor, b.direction), tol)]
    for r in (a, b):
        if isinstance(r, Ray):
            pts = [p for p in pts if _on_ray(r, p, tol)]
    return pts


def angle_between(v: Point, w: Point, tol: Tolerance = DEFAULT_TOL) -> float:
    """Unsigned angle in [0, pi] between two vectors."""
    nv, nw = v.norm(), w.norm()
    if nv <= tol.eps_abs or nw <= tol.eps_abs:
        raise ZeroVector("angle with a zero vector")
    # atan2 keeps full precision near 0 and pi, where acos of a dot product does not
    return math.atan2(abs(v.cross(w)), v.dot(w))


def angle_at(vertex: Point, p: Point, q: Point, tol: Tolerance = DEFAULT_TOL) -> float:
    return angle_between(p - vertex, q - vertex, tol)


class Tangency(NamedTuple):
    tangent: bool
    kind: Optional[str]  # "internal" | "external" | None


def is_tangent(c1: Circle, c2: Circle, tol: Tolerance = DEFAULT_TOL) -> Tangency:
    d = c1.center.dist(c2.center)
    if d <= tol.eps_abs and abs(c1.radius - c2.radius) <= tol.eps_abs:
        return Tangency(False, None)
    if abs(d - (c1.radius + c2.radius)) <= tol.eps_abs:
        return Tangency(True, "external")
    if d > tol.eps_abs and abs(d - abs(c1.radius - c2.radius)) <= tol.eps_abs:
        return Tangency(True, "internal")
    return Tangency(False, None)


def perpendicular_through(l, p: Point) -> Line:
    return Line(p, l.direction.perp())


def perpendicular_bisector(p: Point, q: Point, tol: Tolerance = DEFAULT_TOL) -> Line:
    return Line(midpoint(p, q), (q - p).unit(tol).perp())


def fourth_proportional(p: float, q: float, r: float, tol: Tolerance = DEFAULT_TOL) -> float:
    """Length q*r/p read off a Thales configuration.

    Lengths p and r are marked on one ray from a common vertex, q on a
    second ray at 60 degrees. The parallel to (p, q) through r cuts the
    second ray at distance q*r/p.
    """
    if p <= tol.eps_abs:
        raise DegenerateInput(f"first term must be positive, got {p}")
    o = Point(0.0, 0.0)
    e1 = Point(1.0, 0.0)
    e2 = Point(0.5, math.sqrt(3) / 2)
    pp, rr, qq = e1 * p, e1 * r, e2 * q
    if abs(q) <= tol.eps_abs:
        return 0.0
    join = Line.through(pp, qq, tol)
    # parallel through rr as the perpendicular of a perpendicular
    par = perpendicular_through(perpendicular_through(join, rr), rr)
    x = intersect_line_line(par, Line(o, e2), tol)
    return x.dot(e2)
