"""Invariant suites run against a construction program.

Each suite returns a list of :class:`Check` records. Suites are chosen by
the macros a program uses; results come back ordered by suite name.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import angles, dsl, gothic, segment
from .engine import (
    DEFAULT_TOL,
    ConstructionProgram,
    Step,
    Trace,
    compare_traces,
    evaluate,
    expand_macros,
    get_macro,
)
from .geom import Circle, Line, Point, Tolerance

PURE = {"given", "compass", "straightedge"}


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    passed: bool
    residual: float
    limit: float

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag} {self.suite}.{self.name} residual={self.residual:.3e} limit={self.limit:.1e}"


def _check(suite, name, residual, limit) -> Check:
    return Check(suite, name, bool(residual <= limit), float(residual), float(limit))


def _engine_suite(program, trace, etrace, tol) -> list[Check]:
    _, worst = compare_traces(trace, etrace)
    out = [_check("engine", "expansion_agrees", worst, 1e-9)]
    numeric = {s.id for s in program.steps if s.rule == "macro" and get_macro(s.macro).numeric}
    stray = [k for k, c in etrace.classes.items() if c not in PURE and k not in numeric]
    out.append(_check("engine", "expanded_classes", len(stray), 0))
    return out


def _dsl_suite(program, expanded) -> list[Check]:
    out = []
    for label, p in (("round_trip", program), ("round_trip_expanded", expanded)):
        back = dsl.parse(dsl.format(p), p.name)
        out.append(_check("dsl", label, 0 if back == p else 1, 0))
    return out


def _gothic_checks(step: Step, trace: Trace, etrace: Trace, tol) -> list[Check]:
    a_id, b_id = step.positional()
    A, B = trace[a_id], trace[b_id]
    if step.macro == "gothic_inscribe":
        ra = rb = float(step.kwarg("r"))
    else:
        ra, rb = float(step.kwarg("a")), float(step.kwarg("b"))
    fig = gothic.GothicFigure(A, B, ra, rb)
    out = []
    for source, t in (("closed_form", trace), ("construction", etrace)):
        res = fig.residuals(t[step.id])
        out.append(_check("gothic", f"{step.id}.{source}.tangency", max(res.values()), 1e-9))
    x, rho = gothic.gothic_oracle(ra, rb, fig.d)
    w = etrace[step.id]
    ab = (B - A).unit()
    local = Point(ab.dot(w.center - A), ab.cross(w.center - A))
    out.append(_check("gothic", f"{step.id}.oracle", max(abs(local.x - x), abs(w.radius - rho),
                                                         abs(local.y - rho)), 1e-9))
    return out


def _segment_checks(step: Step, trace: Trace, etrace: Trace, tol) -> list[Check]:
    a_id, b_id, parts = step.positional()
    oracle = segment.interpolation_oracle(trace[a_id], trace[b_id], segment.RatioSpec(parts), tol)
    worst = max(etrace[f"{step.id}_{k}"].dist(p) for k, p in enumerate(oracle, start=1))
    mine = [k for k in etrace.classes if k == step.id or k.startswith(step.id + "_")]
    stray = [k for k in mine if etrace.classes[k] not in PURE]
    return [
        _check("segment", f"{step.id}.oracle", worst, 1e-9),
        _check("segment", f"{step.id}.pure", len(stray), 0),
    ]


def _chain_checks(step: Step, trace: Trace, etrace: Trace, tol) -> list[Check]:
    alpha = step.kwarg("alpha").value
    R, n = float(step.kwarg("R")), int(step.kwarg("n"))
    chain = angles.build_chain(alpha, R, n, tol)
    c = list(chain.centers)
    lengths = max(abs(p.dist(q) - R) for p, q in zip(c, c[1:]))
    interior = max((abs(angles.interior_angle(chain, k) - (180 - 2 * (k - 1) * alpha))
                    for k in range(2, n)), default=0.0)
    multiple = max(abs(angles.link_multiple_angle(chain, k) - k * alpha) for k in range(1, n))
    built = max(etrace[f"{step.id}_C{k}"].dist(p) for k, p in enumerate(c, start=1))
    return [
        _check("angle-chain", f"{step.id}.length_bound", max(0.0, alpha * (n - 1) - 90), angles.ANGLE_EPS),
        _check("angle-chain", f"{step.id}.link_lengths", lengths, 1e-9),
        _check("angle-chain", f"{step.id}.interior_angles", interior, 1e-9),
        _check("angle-chain", f"{step.id}.link_multiples", multiple, 1e-9),
        _check("angle-chain", f"{step.id}.construction", built, 1e-9),
    ]


def _semicircle_suite(trace: Trace) -> list[Check]:
    # inscribed circle w of the half disc c over the diameter base
    c, w, base = trace["c"], trace["w"], trace["base"]
    assert isinstance(c, Circle) and isinstance(w, Circle) and isinstance(base, Line)
    return [
        _check("semicircle", "radius_half", abs(w.radius - c.radius / 2), 1e-9),
        _check("semicircle", "internal_tangency", abs(w.center.dist(c.center) - (c.radius - w.radius)), 1e-9),
        _check("semicircle", "base_tangency", abs(base.distance(w.center) - w.radius), 1e-9),
    ]


_MACRO_SUITES = {
    "gothic_inscribe": _gothic_checks,
    "gothic_solve": _gothic_checks,
    "divide_thales": _segment_checks,
    "divide_circles": _segment_checks,
    "angle_chain": _chain_checks,
}


def verify_program(program: ConstructionProgram, tol: Tolerance = DEFAULT_TOL) -> list[Check]:
    trace = evaluate(program, tol)
    expanded = expand_macros(program, tol)
    etrace = evaluate(expanded, tol)
    checks = _engine_suite(program, trace, etrace, tol) + _dsl_suite(program, expanded)
    for step in program.steps:
        fn = _MACRO_SUITES.get(step.macro or "")
        if fn is not None:
            checks += fn(step, trace, etrace, tol)
    if program.name == "fig2b":
        checks += _semicircle_suite(trace)
    return sorted(checks, key=lambda c: c.suite)


def all_passed(checks: list[Check]) -> bool:
    return all(c.passed for c in checks)

