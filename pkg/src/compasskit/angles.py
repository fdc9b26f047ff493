"""Chains of multiple angles and angle division through inner sequences.

Equal links of length R alternate between the two rays of a small angle
alpha at C1. Link k then carries the angle k*alpha against its ray, and
the interior angle of the broken line at Ck is 180 - 2(k-1)*alpha
degrees, which bounds the chain length: alpha*(n-1) <= 90.

Public functions take and return degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .engine import Builder, far_from
from .errors import (
    ConstraintViolated,
    IndexOutOfRange,
    Infeasible,
    OutOfRange,
    RadiusOutOfRange,
    TargetOutOfInterval,
)
from .geom import (
    DEFAULT_TOL,
    Circle,
    Point,
    Polyline,
    Ray,
    Tolerance,
    angle_at,
    angle_between,
    intersect,
    intersect_circle_circle,
)

ANGLE_EPS = 1e-9  # degrees, slack for the chain-length constraint
MAX_BISECTIONS = 60


@dataclass(frozen=True)
class AngleChain:
    vertex: Point
    ray_a: Ray
    ray_b: Ray
    alpha_deg: float
    R: float
    centers: tuple[Point, ...]
    degenerate: bool = False

    @property
    def alpha(self) -> float:
        return math.radians(self.alpha_deg)

    @property
    def n(self) -> int:
        return len(self.centers)

    def center(self, k: int) -> Point:
        return self.centers[k - 1]

    def anchor(self, k: int) -> Point:
        """Outward unit direction of the ray carrying center k (C1, C3, ... on ray A)."""
        return (self.ray_a if k % 2 else self.ray_b).direction

    def polyline(self) -> Polyline:
        return Polyline(self.centers)


def max_multiplicity(alpha_deg: float) -> int:
    if not alpha_deg > 0:
        raise ValueError("alpha must be positive")
    return math.floor(90.0 / alpha_deg + 1e-12) + 1


def build_chain(alpha_deg: float, R: float = 1.0, n: int = 2, tol: Tolerance = DEFAULT_TOL) -> AngleChain:
    """Construct C1..Cn by intersecting circles of radius R with the opposite ray."""
    if not alpha_deg > 0:
        raise ValueError("alpha must be positive")
    if not R > 0:
        raise ValueError("R must be positive")
    if n < 2:
        raise ValueError("a chain needs at least two centers")
    excess = alpha_deg * (n - 1) - 90.0
    if excess > ANGLE_EPS:
        raise ConstraintViolated(f"alpha*(n-1) = {alpha_deg * (n - 1)} exceeds 90 degrees")
    a = math.radians(alpha_deg)
    c1 = Point(0.0, 0.0)
    ray_a = Ray(c1, Point(1.0, 0.0))
    ray_b = Ray(c1, Point(math.cos(a), math.sin(a)))
    centers = [c1, intersect(Circle(c1, R), ray_b, tol)[0]]
    for k in range(2, n):
        ray = ray_a if k % 2 == 0 else ray_b
        cands = intersect(Circle(centers[-1], R), ray, tol)
        prev = centers[-2]
        nxt = max(cands, key=lambda p: p.dist(prev))
        if nxt.dist(prev) <= tol.eps_abs:
            raise ConstraintViolated(f"chain folds back at C{k + 1}")
        centers.append(nxt)
    return AngleChain(c1, ray_a, ray_b, alpha_deg, R, tuple(centers), abs(excess) <= ANGLE_EPS)


def chain_centers_closed_form(alpha_deg: float, R: float, n: int) -> list[Point]:
    """Centers from the link directions alone: k*alpha for odd k, -(k-1)*alpha for even k."""
    a = math.radians(alpha_deg)
    pts = [Point(0.0, 0.0)]
    for k in range(1, n):
        heading = k * a if k % 2 else -(k - 1) * a
        pts.append(pts[-1] + Point(math.cos(heading), math.sin(heading)) * R)
    return pts


def interior_angle(chain: AngleChain, k: int) -> float:
    """Angle C(k-1) Ck C(k+1) in degrees, for 2 <= k <= n-1."""
    if not 2 <= k <= chain.n - 1:
        raise IndexOutOfRange(f"interior angle needs 2 <= k <= {chain.n - 1}, got {k}")
    return math.degrees(angle_at(chain.center(k), chain.center(k - 1), chain.center(k + 1)))


def _check_link(chain: AngleChain, k: int) -> None:
    if not 1 <= k <= chain.n - 1:
        raise IndexOutOfRange(f"link index must be in 1..{chain.n - 1}, got {k}")


def link_multiple_angle(chain: AngleChain, k: int) -> float:
    """Angle at Ck between link Ck->C(k+1) and the outward ray through Ck."""
    _check_link(chain, k)
    ck = chain.center(k)
    return math.degrees(angle_between(chain.center(k + 1) - ck, chain.anchor(k)))


def double_on_link(chain: AngleChain, k: int) -> float:
    """Twice the angle of link k, read as a central angle.

    The circle of radius R/2 through Ck, centered on the outward ray,
    sees the link angle as an inscribed angle at Ck; the chord it cuts
    subtends twice that angle at the center.
    """
    _check_link(chain, k)
    if 2 * k * chain.alpha_deg >= 180.0:
        raise OutOfRange(f"2*{k}*alpha = {2 * k * chain.alpha_deg} is not below 180 degrees")
    v = chain.center(k)
    u = chain.anchor(k)
    w = (chain.center(k + 1) - v).unit()
    m = v + u * (chain.R / 2)
    far = v + u * chain.R
    # second intersection of the line v + t*w with the half-radius circle:
    # reflect v through the foot of m on that line
    foot = v + w * (m - v).dot(w)
    q = foot * 2 - v
    return math.degrees(angle_at(m, far, q))


def support_points(chain: AngleChain, tol: Tolerance = DEFAULT_TOL) -> list[tuple[Point, ...]]:
    """Pairwise intersections of adjacent chain circles of radius R."""
    out = []
    for p, q in zip(chain.centers, chain.centers[1:]):
        out.append(tuple(intersect_circle_circle(Circle(p, chain.R), Circle(q, chain.R), tol)))
    return out


@dataclass(frozen=True)
class InnerSequence:
    """Link k of a chain redrawn with circles of radius r in [R/2, R]."""

    chain: AngleChain
    k: int
    r: float

    def __post_init__(self):
        R = self.chain.R
        if not (R / 2 <= self.r <= R):
            raise RadiusOutOfRange(f"r={self.r} outside [{R / 2}, {R}]")
        if self.k < 1:
            raise IndexOutOfRange(f"link index must be positive, got {self.k}")


def _phi(chain: AngleChain, k: int, r: float) -> float:
    return k * chain.alpha_deg * chain.R / r


def inner_angle(seq: InnerSequence) -> float:
    """Link angle k*alpha*R/r: k*alpha at r = R, doubled at r = R/2."""
    return _phi(seq.chain, seq.k, seq.r)


def bisect(f: Callable[[float], float], lo: float, hi: float, ftol: float,
           max_iter: int = MAX_BISECTIONS) -> tuple[float, int]:
    """Root of f on [lo, hi] given a sign change; returns (x, iterations)."""
    flo = f(lo)
    if abs(flo) <= ftol:
        return lo, 0
    fhi = f(hi)
    if abs(fhi) <= ftol:
        return hi, 0
    if (flo > 0) == (fhi > 0):
        raise ValueError("no sign change on the bracket")
    mid = 0.5 * (lo + hi)
    for it in range(1, max_iter + 1):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm) <= ftol or mid in (lo, hi):
            return mid, it
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return mid, max_iter


def _match(chain: AngleChain, k: int, theta: float, ftol: float) -> tuple[float, int]:
    lo_angle, hi_angle = k * chain.alpha_deg, 2 * k * chain.alpha_deg
    slack = 1e-12 * max(1.0, hi_angle)
    if not lo_angle - slack <= theta <= hi_angle + slack:
        raise TargetOutOfInterval(f"theta={theta} outside [{lo_angle}, {hi_angle}]")
    return bisect(lambda r: _phi(chain, k, r) - theta, chain.R / 2, chain.R, ftol)


def match_inner_radius(chain: AngleChain, k: int, theta: float, ftol: float = 1e-12) -> float:
    """Radius r with inner_angle(chain, k, r) == theta, by bisection."""
    return _match(chain, k, theta, ftol)[0]


def link_ratio(chain: AngleChain, k: int, r: float) -> float:
    """phi_k(r) / phi_(k-1)(r); equals k/(k-1)."""
    if k < 2:
        raise IndexOutOfRange("the ratio needs k >= 2")
    return inner_angle(InnerSequence(chain, k, r)) / inner_angle(InnerSequence(chain, k - 1, r))


@dataclass(frozen=True)
class AngleDivision:
    angle: float
    residual: float
    iterations: int
    radius: float
    alpha_deg: float


def divide_angle(theta: float, m: int, seed: float = 0.5) -> AngleDivision:
    """theta/m read from link 1 after matching theta on link m of an inner sequence."""
    if not 0 < theta < 180:
        raise ValueError(f"theta must be in (0, 180), got {theta}")
    if m < 2:
        raise ValueError(f"m must be at least 2, got {m}")
    # base angle in [theta/(2m), theta/m]; link m must exist (alpha*m <= 90)
    s = min(seed, 0.5 * (180.0 / theta - 1.0))
    alpha = theta / (2 * m) * (1 + s)
    if alpha * m > 90.0 + ANGLE_EPS:
        raise Infeasible(f"no chain with {m} links carries theta={theta}")
    chain = build_chain(alpha, 1.0, m + 1)
    r, iterations = _match(chain, m, theta, 1e-12)
    result = inner_angle(InnerSequence(chain, 1, r))
    return AngleDivision(result, abs(m * result - theta), iterations, r, alpha)


def emit_angle_bisector(b: Builder, v: str, p: str, q: str, out: str) -> str:
    pre = f"{out}__"
    b.circle(pre + "c", v, p)
    b.ray(pre + "vq", v, q)
    b.intersect(pre + "q", pre + "c", pre + "vq", far_from(v))
    b.midpoint(pre + "m", p, pre + "q")
    return b.ray(out, v, pre + "m")


def bisect_angle_compass(vertex: Point, p: Point, q: Point, tol: Tolerance = DEFAULT_TOL) -> Ray:
    b = Builder(tol)
    b.point("V", vertex.x, vertex.y)
    b.point("P", p.x, p.y)
    b.point("Q", q.x, q.y)
    return b[emit_angle_bisector(b, "V", "P", "Q", "bis")]


def emit_chain(b: Builder, out: str, alpha_deg: float, R: float, n: int) -> list[str]:
    """Chain centers out_C1..out_Cn and rays out_rayA, out_rayB."""
    a = math.radians(alpha_deg)
    names = [f"{out}_C{k}" for k in range(1, n + 1)]
    b.point(names[0], 0.0, 0.0)
    b.point(f"{out}__ea", 1.0, 0.0)
    b.point(f"{out}__eb", math.cos(a), math.sin(a))
    rays = (b.ray(f"{out}_rayA", names[0], f"{out}__ea"), b.ray(f"{out}_rayB", names[0], f"{out}__eb"))
    b.circle_r(f"{out}__k1", names[0], R)
    b.intersect(names[1], f"{out}__k1", rays[1], 0)
    for k in range(2, n):
        b.circle(f"{out}__k{k}", names[k - 1], names[k - 2])
        b.intersect(names[k], f"{out}__k{k}", rays[k % 2], far_from(names[k - 2]))
    return names
