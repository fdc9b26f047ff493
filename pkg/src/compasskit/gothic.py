"""Circle inscribed in a Gothic arch.

The arch is the region above segment AB and inside two circles centered
at A (radius a) and B (radius b). The inscribed circle, with center X and
radius rho, touches AB at D0 and both circles from inside. With AB on
the x-axis and A at the origin, X = (x, rho) satisfies

    x**2 = a**2 - 2*a*rho
    (d - x)**2 = b**2 - 2*b*rho

which reduces to a quadratic in rho.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .engine import Builder, Trace, left_of, toward
from .errors import DegenerateFigure, DomainError, NoInscribedCircle, UnequalRadii
from .geom import DEFAULT_TOL, Circle, Point, Tolerance, intersect_circle_circle


def _quadratic_roots(qa: float, qb: float, qc: float) -> list[float]:
    scale = max(abs(qa), abs(qb), abs(qc))
    if abs(qa) <= 1e-15 * scale:
        return [] if qb == 0 else [-qc / qb]
    disc = qb * qb - 4 * qa * qc
    if disc < 0:
        return []
    q = -0.5 * (qb + math.copysign(math.sqrt(disc), qb))
    roots = [q / qa]
    if q != 0:
        roots.append(qc / q)
    return sorted(roots)


def gothic_oracle(a: float, b: float, d: float) -> tuple[float, float]:
    """Offset x of the center from A along AB, and the radius rho."""
    if not (a > 0 and b > 0 and d >= 0):
        raise NoInscribedCircle(f"invalid arch a={a}, b={b}, d={d}")
    if d == 0:
        if a == b:
            return 0.0, a / 2
        raise NoInscribedCircle("concentric circles of different radii form no arch")
    if not abs(a - b) < d < a + b:
        raise NoInscribedCircle(f"arcs do not meet at an apex (a={a}, b={b}, d={d})")
    k = d * d + a * a - b * b
    l = 2 * (a - b)
    roots = _quadratic_roots(l * l, 8 * a * d * d - 2 * k * l, k * k - 4 * a * a * d * d)
    admissible = [r for r in roots if 0 < r < min(a, b)]
    if not admissible:
        raise NoInscribedCircle(f"no admissible radius among {roots}")
    rho = min(admissible)
    return (k - l * rho) / (2 * d), rho


def gothic_family(a: float, d_values: Iterable[float]) -> list[tuple[float, float, float]]:
    """(d, x, rho) for equal-radius arches of radius a and base length d."""
    if not a > 0:
        raise DomainError(f"radius must be positive, got {a}")
    out = []
    for d in d_values:
        if not 0 <= d < 2 * a:
            raise DomainError(f"d={d} outside [0, {2 * a})")
        out.append((d, d / 2, (a * a - d * d / 4) / (2 * a)))
    return out


def inscribed_in_frame(A: Point, B: Point, a: float, b: float) -> tuple[Point, Point, float]:
    """Tangency point D0, center X and radius for the arch over A->B (apex on the left)."""
    d = A.dist(B)
    if d == 0:
        raise DegenerateFigure("A and B coincide; the base direction is undefined")
    x, rho = gothic_oracle(a, b, d)
    u = (B - A) * (1 / d)
    d0 = A + u * x
    return d0, d0 + u.perp() * rho, rho


@dataclass(frozen=True)
class GothicFigure:
    A: Point
    B: Point
    a: float
    b: float

    @property
    def d(self) -> float:
        return self.A.dist(self.B)

    def circle_a(self) -> Circle:
        return Circle(self.A, self.a)

    def circle_b(self) -> Circle:
        return Circle(self.B, self.b)

    def apex(self, tol: Tolerance = DEFAULT_TOL) -> Point:
        pts = intersect_circle_circle(self.circle_a(), self.circle_b(), tol)
        if not pts:
            raise NoInscribedCircle("arcs do not meet")
        ab = self.B - self.A
        return max(pts, key=lambda p: ab.cross(p - self.A))

    def tangency_point(self) -> Point:
        return inscribed_in_frame(self.A, self.B, self.a, self.b)[0]

    def inscribed(self) -> Circle:
        _, x, rho = inscribed_in_frame(self.A, self.B, self.a, self.b)
        return Circle(x, rho)

    def residuals(self, c: Circle | None = None) -> dict[str, float]:
        """Tangency defects of a candidate circle (default: the oracle's)."""
        c = c or self.inscribed()
        ab = (self.B - self.A).unit()
        height = ab.cross(c.center - self.A)
        return {
            "circle_a": abs(c.center.dist(self.A) - (self.a - c.radius)),
            "circle_b": abs(c.center.dist(self.B) - (self.b - c.radius)),
            "base": abs(height - c.radius),
        }


def emit_fourth_proportional(b: Builder, o: str, p: str, q: str, r: str, out: str,
                             oq_line: str | None = None) -> str:
    """Point out on ray o->q with |o out| = |oq| * |or| / |op| (p, r on one ray from o)."""
    pre = f"{out}__"
    b.line(pre + "pq", p, q)
    b.perp(pre + "n", pre + "pq", r)
    b.perp(pre + "par", pre + "n", r)
    if oq_line is None:
        oq_line = b.line(pre + "oq", o, q)
    return b.intersect(out, pre + "par", oq_line, 0)


def emit_gothic(b: Builder, a_id: str, b_id: str, radius: float, out: str) -> None:
    """Equal-radius inscribed circle built from its tangency point D0.

    The perpendicular at D0 meets circle A at height h with
    h**2 = a**2 - |AD0|**2, and rho = h * (h/2) / a is a fourth proportional.
    """
    A, B = b[a_id], b[b_id]
    d = A.dist(B)
    if d <= b.tol.eps_abs:
        raise DegenerateFigure("A and B coincide")
    if d >= 2 * radius:
        raise DegenerateFigure(f"d={d} >= 2a={2 * radius}: the arcs do not enclose a region")
    p = f"{out}__"
    d0 = f"{out}_D0"
    b.circle_r(p + "ca", a_id, radius)
    b.circle_r(p + "cb", b_id, radius)
    b.line(p + "ab", a_id, b_id)
    b.midpoint(d0, a_id, b_id)
    b.perp(p + "k", p + "ab", d0)
    b.intersect(p + "H", p + "k", p + "ca", left_of(a_id, b_id))
    b.circle(p + "h", d0, p + "H")
    b.intersect(p + "R", p + "h", p + "ab", toward(d0, b_id))
    b.midpoint(p + "Rh", d0, p + "R")
    b.circle_r(p + "a", d0, radius)
    b.intersect(p + "P", p + "a", p + "ab", toward(d0, b_id))
    emit_fourth_proportional(b, d0, p + "P", p + "H", p + "Rh", f"{out}_X", oq_line=p + "k")
    b.circle(out, f"{out}_X", d0)


def gothic_inscribe(fig: GothicFigure, tol: Tolerance = DEFAULT_TOL) -> Trace:
    if abs(fig.a - fig.b) > tol.eps_abs:
        raise UnequalRadii(f"compass construction needs a == b, got {fig.a} and {fig.b}")
    b = Builder(tol)
    b.point("A", fig.A.x, fig.A.y)
    b.point("B", fig.B.x, fig.B.y)
    emit_gothic(b, "A", "B", fig.a, "w")
    return b.trace("gothic_inscribe")
