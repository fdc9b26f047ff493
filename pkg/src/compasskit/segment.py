"""Dividing a segment in a given integer ratio.

Two compass and straightedge constructions are provided: the classical
Thales configuration, and a family of circles internally tangent at the
segment's start point whose radii are in the required proportion. Both
are checked against plain linear interpolation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Optional

from .engine import Builder, Trace, far_from, left_of
from .errors import DegenerateSegment, StepRadiusTooSmall
from .geom import DEFAULT_TOL, Circle, Point, Ray, Tolerance


@dataclass(frozen=True)
class RatioSpec:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if len(parts) < 2:
            raise ValueError("a ratio needs at least two parts")
        if not all(isinstance(p, int) and not isinstance(p, bool) and p >= 1 for p in parts):
            raise ValueError(f"ratio parts must be positive integers, got {parts!r}")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def cumulative(self) -> list[int]:
        """Partial sums p1, p1+p2, ... excluding the full total."""
        return list(accumulate(self.parts))[:-1]

    def fractions(self) -> list[float]:
        n = self.total
        return [c / n for c in self.cumulative()]

    def __str__(self):
        return ":".join(map(str, self.parts))


def _as_ratio(ratio) -> RatioSpec:
    return ratio if isinstance(ratio, RatioSpec) else RatioSpec(tuple(ratio))


def _check_segment(A: Point, B: Point, tol: Tolerance) -> None:
    if A.dist(B) <= tol.eps_abs:
        raise DegenerateSegment(f"segment {A}-{B} has zero length")


def interpolation_oracle(A: Point, B: Point, ratio, tol: Tolerance = DEFAULT_TOL) -> list[Point]:
    _check_segment(A, B, tol)
    return [A + (B - A) * f for f in _as_ratio(ratio).fractions()]


def emit_thales(b: Builder, a: str, bb: str, ratio: RatioSpec, out: str) -> list[str]:
    """Thales division of segment a-bb; division points are named out_1, out_2, ..."""
    n = ratio.total
    p = f"{out}__"
    b.circle(p + "ca", a, bb)
    b.circle(p + "cb", bb, a)
    # equilateral apex gives an auxiliary ray at 60 degrees with step |AB|
    b.intersect(p + "T1", p + "ca", p + "cb", left_of(a, bb))
    b.ray(p + "aux", a, p + "T1")
    marks = [a, p + "T1"]
    for j in range(1, n):
        b.circle(f"{p}k{j}", marks[j], marks[j - 1])
        b.intersect(f"{p}T{j + 1}", f"{p}k{j}", p + "aux", far_from(marks[j - 1]))
        marks.append(f"{p}T{j + 1}")
    b.line(p + "base", marks[n], bb)
    b.line(p + "ab", a, bb)
    names = []
    for k, c in enumerate(ratio.cumulative(), start=1):
        b.perp(f"{p}q{k}", p + "base", marks[c])
        b.perp(f"{p}par{k}", f"{p}q{k}", marks[c])
        b.intersect(f"{out}_{k}", f"{p}par{k}", p + "ab", 0)
        names.append(f"{out}_{k}")
    return names


def emit_tangent_circles(
    b: Builder, a: str, bb: str, ratio: RatioSpec, out: str, step: Optional[float] = None
) -> list[str]:
    """Division by circles internally tangent at a; radii are multiples of step."""
    A, B = b[a], b[bb]
    n = ratio.total
    ab_len = A.dist(B)
    r = ab_len if step is None else step
    if 2 * n * r < ab_len - b.tol.eps_abs:
        raise StepRadiusTooSmall(f"2*{n}*{r} is shorter than |AB| = {ab_len}")
    p = f"{out}__"
    b.ray(p + "axis", a, bb)
    b.line(p + "ab", a, bb)
    if step is None:
        marks = [a, bb]
    else:
        b.circle_r(p + "s", a, r)
        b.intersect(p + "T1", p + "s", p + "axis", 0)
        marks = [a, p + "T1"]
    for j in range(1, n):
        b.circle(f"{p}k{j}", marks[j], marks[j - 1])
        b.intersect(f"{p}T{j + 1}", f"{p}k{j}", p + "axis", far_from(marks[j - 1]))
        marks.append(f"{p}T{j + 1}")
    # outer circle: radius n*r through A and B, center on the perpendicular bisector
    b.bisector(p + "pb", a, bb)
    b.circle(p + "reach", a, marks[n])
    b.intersect(p + "On", p + "reach", p + "pb", left_of(a, bb))
    b.circle(p + "outer", p + "On", a)
    b.ray(p + "centers", a, p + "On")
    names = []
    for k, c in enumerate(ratio.cumulative(), start=1):
        b.circle(f"{p}m{k}", a, marks[c])
        b.intersect(f"{p}O{k}", f"{p}m{k}", p + "centers", 0)
        b.circle(f"{p}C{k}", f"{p}O{k}", a)
        b.intersect(f"{out}_{k}", f"{p}C{k}", p + "ab", far_from(a))
        names.append(f"{out}_{k}")
    return names


def _start(A: Point, B: Point, tol: Tolerance) -> Builder:
    _check_segment(A, B, tol)
    b = Builder(tol)
    b.point("A", A.x, A.y)
    b.point("B", B.x, B.y)
    return b


def thales_construction(A: Point, B: Point, ratio, tol: Tolerance = DEFAULT_TOL) -> Trace:
    b = _start(A, B, tol)
    emit_thales(b, "A", "B", _as_ratio(ratio), "P")
    return b.trace("divide_thales")


def tangent_circles_construction(
    A: Point, B: Point, ratio, step: Optional[float] = None, tol: Tolerance = DEFAULT_TOL
) -> Trace:
    b = _start(A, B, tol)
    emit_tangent_circles(b, "A", "B", _as_ratio(ratio), "P", step)
    return b.trace("divide_tangent_circles")


def _division_points(t: Trace, ratio: RatioSpec) -> list[Point]:
    return [t.objects[f"P_{k}"] for k in range(1, len(ratio.parts))]


def divide_thales(A: Point, B: Point, ratio, tol: Tolerance = DEFAULT_TOL) -> list[Point]:
    ratio = _as_ratio(ratio)
    return _division_points(thales_construction(A, B, ratio, tol), ratio)


def divide_tangent_circles(
    A: Point, B: Point, ratio, step: Optional[float] = None, tol: Tolerance = DEFAULT_TOL
) -> list[Point]:
    ratio = _as_ratio(ratio)
    return _division_points(tangent_circles_construction(A, B, ratio, step, tol), ratio)


@dataclass(frozen=True)
class TangentCircleFamily:
    A: Point
    ray: Ray
    step: float
    circles: tuple[Circle, ...]


def tangent_circle_family(
    A: Point, B: Point, ratio, step: Optional[float] = None, tol: Tolerance = DEFAULT_TOL
) -> TangentCircleFamily:
    """All circles k*r (k = 1..n) tangent at A, read from the construction."""
    ratio = _as_ratio(ratio)
    t = tangent_circles_construction(A, B, ratio, step, tol)
    r = A.dist(B) if step is None else step
    ray = t.objects["P__centers"]
    circles = tuple(Circle(ray.at(k * r), k * r) for k in range(1, ratio.total + 1))
    return TangentCircleFamily(A, ray, r, circles)
