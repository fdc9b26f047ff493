"""Macro registry: closed-form evaluation plus compass expansion for each macro."""

from __future__ import annotations

import math

from . import angles, gothic, segment
from .engine import Builder, MacroDef, Step, register_macro
from .errors import DegenerateFigure, DegenerateInput
from .geom import Circle, Point, PointSet, Polyline, Ray, angle_at


def _ratio(step: Step) -> segment.RatioSpec:
    return segment.RatioSpec(step.positional()[2])


def _division_outputs(step: Step):
    return [(f"{step.id}_{k}", "point") for k in range(1, len(_ratio(step).parts))]


def _division_compute(step: Step, objs, tol):
    a, b, _ = step.positional()
    pts = segment.interpolation_oracle(objs[a], objs[b], _ratio(step), tol)
    out = {step.id: PointSet(tuple(pts))}
    out.update({f"{step.id}_{k}": p for k, p in enumerate(pts, start=1)})
    return out


def _thales_expand(b: Builder, step: Step):
    a, bb, _ = step.positional()
    segment.emit_thales(b, a, bb, _ratio(step), step.id)


def _circles_compute(step: Step, objs, tol):
    a, bb, _ = step.positional()
    r = step.kwarg("r")
    A, B = objs[a], objs[bb]
    if r is not None and 2 * _ratio(step).total * r < A.dist(B) - tol.eps_abs:
        raise segment.StepRadiusTooSmall(f"step radius {r} too small for |AB| = {A.dist(B)}")
    return _division_compute(step, objs, tol)


def _circles_expand(b: Builder, step: Step):
    a, bb, _ = step.positional()
    r = step.kwarg("r")
    segment.emit_tangent_circles(b, a, bb, _ratio(step), step.id, None if r is None else float(r))


def _gothic_outputs(step: Step):
    return [(f"{step.id}_D0", "point"), (f"{step.id}_X", "point")]


def _gothic_result(step: Step, A: Point, B: Point, a: float, b: float):
    d0, x, rho = gothic.inscribed_in_frame(A, B, a, b)
    return {step.id: Circle(x, rho), f"{step.id}_D0": d0, f"{step.id}_X": x}


def _gothic_compute(step: Step, objs, tol):
    a, b = step.positional()
    r = float(step.kwarg("r"))
    d = objs[a].dist(objs[b])
    if d <= tol.eps_abs or d >= 2 * r:
        raise DegenerateFigure(f"no equal-radius arch with d={d}, a={r}")
    return _gothic_result(step, objs[a], objs[b], r, r)


def _gothic_expand(b: Builder, step: Step):
    a, bb = step.positional()
    gothic.emit_gothic(b, a, bb, float(step.kwarg("r")), step.id)


def _gothic_solve_compute(step: Step, objs, tol):
    a, b = step.positional()
    return _gothic_result(step, objs[a], objs[b], float(step.kwarg("a")), float(step.kwarg("b")))


def _chain_params(step: Step):
    return step.kwarg("alpha").value, float(step.kwarg("R")), int(step.kwarg("n"))


def _chain_outputs(step: Step):
    n = int(step.kwarg("n"))
    names = [(f"{step.id}_C{k}", "point") for k in range(1, n + 1)]
    return names + [(f"{step.id}_rayA", "ray"), (f"{step.id}_rayB", "ray")]


def _chain_compute(step: Step, objs, tol):
    alpha, R, n = _chain_params(step)
    if n < 2 or alpha <= 0 or R <= 0:
        raise DegenerateInput(f"invalid chain alpha={alpha}, R={R}, n={n}")
    if alpha * (n - 1) - 90.0 > angles.ANGLE_EPS:
        raise angles.ConstraintViolated(f"alpha*(n-1) = {alpha * (n - 1)} exceeds 90 degrees")
    pts = angles.chain_centers_closed_form(alpha, R, n)
    a = math.radians(alpha)
    out = {step.id: Polyline(tuple(pts))}
    out.update({f"{step.id}_C{k}": p for k, p in enumerate(pts, start=1)})
    out[f"{step.id}_rayA"] = Ray(pts[0], Point(1.0, 0.0))
    out[f"{step.id}_rayB"] = Ray(pts[0], Point(math.cos(a), math.sin(a)))
    return out


def _chain_expand(b: Builder, step: Step):
    alpha, R, n = _chain_params(step)
    if alpha * (n - 1) - 90.0 > angles.ANGLE_EPS:
        raise angles.ConstraintViolated(f"alpha*(n-1) = {alpha * (n - 1)} exceeds 90 degrees")
    angles.emit_chain(b, step.id, alpha, R, n)


def _fourth_compute(step: Step, objs, tol):
    o, p, q, r = (objs[i] for i in step.positional())
    op = p - o
    if op.norm() <= tol.eps_abs:
        raise DegenerateInput("the first length is zero")
    if abs(op.unit().cross(r - o)) > tol.eps_abs:
        raise DegenerateInput("the third length must lie on the ray of the first")
    t = (r - o).dot(op) / op.dot(op)
    return {step.id: o + (q - o) * t}


def _fourth_expand(b: Builder, step: Step):
    o, p, q, r = step.positional()
    gothic.emit_fourth_proportional(b, o, p, q, r, step.id)


def _rotate(v: Point, angle: float) -> Point:
    c, s = math.cos(angle), math.sin(angle)
    return Point(c * v.x - s * v.y, s * v.x + c * v.y)


def _divide_compute(step: Step, objs, tol):
    v, p, q = (objs[i] for i in step.positional())
    theta = math.degrees(angle_at(v, p, q, tol))
    part = angles.divide_angle(theta, int(step.kwarg("m"))).angle
    sign = 1.0 if (p - v).cross(q - v) >= 0 else -1.0
    return {step.id: Ray(v, _rotate((p - v).unit(), sign * math.radians(part)))}


def _bisect_compute(step: Step, objs, tol):
    v, p, q = (objs[i] for i in step.positional())
    return {step.id: Ray(v, ((p - v).unit() + (q - v).unit()).unit(tol))}


def _bisect_expand(b: Builder, step: Step):
    v, p, q = step.positional()
    angles.emit_angle_bisector(b, v, p, q, step.id)


def _none(step):
    return []


register_macro(MacroDef(
    "divide_thales", "points", ("point", "point", "ratio"), {},
    _division_outputs, _division_compute, _thales_expand,
))
register_macro(MacroDef(
    "divide_circles", "points", ("point", "point", "ratio"), {"r": ("num", False)},
    _division_outputs, _circles_compute, _circles_expand,
))
register_macro(MacroDef(
    "gothic_inscribe", "circle", ("point", "point"), {"r": ("num", True)},
    _gothic_outputs, _gothic_compute, _gothic_expand,
))
register_macro(MacroDef(
    "gothic_solve", "circle", ("point", "point"), {"a": ("num", True), "b": ("num", True)},
    _gothic_outputs, _gothic_solve_compute, None,
))
register_macro(MacroDef(
    "angle_chain", "chain", (),
    {"alpha": ("deg", True), "R": ("num", True), "n": ("int", True)},
    _chain_outputs, _chain_compute, _chain_expand,
))
register_macro(MacroDef(
    "fourth_proportional", "point", ("point", "point", "point", "point"), {},
    _none, _fourth_compute, _fourth_expand,
))
register_macro(MacroDef(
    "divide_angle", "ray", ("point", "point", "point"), {"m": ("int", True)},
    _none, _divide_compute, None,
))
register_macro(MacroDef(
    "bisect_angle", "ray", ("point", "point", "point"), {},
    _none, _bisect_compute, _bisect_expand,
))
