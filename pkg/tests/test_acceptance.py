"""Acceptance criteria, one test each, at the stated tolerances and time limits.

Each test records its verdict; the terminal summary prints one line per
criterion.
"""

import math
import random
import re
import time

import pytest
from acceptance_log import record
from oracles import gothic_brute_force, random_program

from compasskit import angles, dsl, gothic, segment
from compasskit.engine import evaluate
from compasskit.errors import ConstraintViolated, ParseError
from compasskit.geom import Circle, Line, Point, PointSet, Polyline, Ray
from compasskit.presets import load_preset, preset_names
from compasskit.render import render_trace

PURE = {"given", "compass", "straightedge"}

SYNTAX_ERRORS = [
    "point A = (0 0)",
    "point A = (0, 0",
    "point A = 0, 0)",
    "point = (0, 0)",
    "point A (0, 0)",
    "point A = (0, 0) extra",
    "point 1A = (0, 0)",
    "blob A = (0, 0)",
    "point A = (x, 0)",
    "point A = (1.2.3, 0)",
    "circle c = circle(A B)",
    "circle c = circle(A, r=)",
    "circle c = circle(A, r=abc)",
    "line l = perp(m, P)",
    "line l = perp(m, at P)",
    "point P = intersect(c, l)",
    "point P = intersect(c, l, 0.5)",
    "point P = intersect(c, l, 1deg)",
    "line l = frobnicate(A, B)",
    "points P = macro divide_thales(A, B, 1:)",
    "points P = macro divide_thales(A, B, 1:2:x)",
    "points P = macro divide_thales(A, B,",
    "chain K = macro angle_chain(alpha=, R=1, n=3)",
    "chain K = macro (alpha=20deg)",
    "point A = ($, 0)",
    "point A = (0, 0) # fine\npoint B = (1; 0)",
    "point A = (0, 0)\n\n   point B = ",
    "point A = (0, 0)\nline l = line(A, )",
]


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_criterion_1_gothic_closed_form():
    def run():
        rows = []
        fig = gothic.GothicFigure(Point(0, 0), Point(1, 0), 1.0, 1.0)
        tr = gothic.gothic_inscribe(fig)
        w = tr["w"]
        rows.append(max(w.center.dist(Point(0.5, 0.375)), abs(w.radius - 0.375)) <= 1e-9)
        x, rho = gothic.gothic_oracle(1.0, 1.0, 0.0)
        rows.append(abs(rho - 0.5) <= 1e-9 and abs(x) <= 1e-9)
        near = gothic.gothic_inscribe(gothic.GothicFigure(Point(0, 0), Point(1e-7, 0), 1.0, 1.0))["w"]
        rows.append(abs(near.radius - 0.5) <= 1e-9)
        a, b, d = 1.0, 0.8, 1.0
        x, rho = gothic.gothic_oracle(a, b, d)
        res = gothic.GothicFigure(Point(0, 0), Point(d, 0), a, b).residuals(Circle(Point(x, rho), rho))
        rows.append(max(res["circle_a"], res["circle_b"]) <= 1e-6)
        bx, brho = gothic_brute_force(a, b, d)
        rows.append(max(abs(bx - x), abs(brho - rho)) <= 1e-6)
        res_b = gothic.GothicFigure(Point(0, 0), Point(d, 0), a, b).residuals(Circle(Point(bx, brho), brho))
        rows.append(max(res_b["circle_a"], res_b["circle_b"]) <= 1e-6)
        return rows, (x, rho)

    (rows, (x, rho)), dt = _timed(run)
    ok = all(rows) and dt < 1.0
    record(1, ok, f"checks {sum(rows)}/{len(rows)}, asymmetric x={x:.10f} rho={rho:.10f}, {dt:.3f} s (limit 1 s)")
    assert ok


def test_criterion_2_segment_division():
    rng = random.Random(20240602)

    def run():
        worst, impure = 0.0, 0
        for _ in range(1000):
            A = Point(rng.uniform(-10, 10), rng.uniform(-10, 10))
            while True:
                B = Point(rng.uniform(-10, 10), rng.uniform(-10, 10))
                if A.dist(B) > 0.1:
                    break
            total = rng.randint(2, 12)
            m = rng.randint(2, total)
            cuts = sorted(rng.sample(range(1, total), m - 1))
            parts = [q - p for p, q in zip([0] + cuts, cuts + [total])]
            oracle = segment.interpolation_oracle(A, B, parts)
            t1 = segment.thales_construction(A, B, parts)
            t2 = segment.tangent_circles_construction(A, B, parts)
            for t in (t1, t2):
                pts = [t[f"P_{k}"] for k in range(1, len(parts))]
                worst = max(worst, max(p.dist(o) for p, o in zip(pts, oracle)))
                impure += not t.class_set() <= PURE
        return worst, impure

    (worst, impure), dt = _timed(run)
    ok = worst <= 1e-9 and impure == 0 and dt < 10.0
    record(2, ok, f"max deviation {worst:.2e} (limit 1e-9), impure traces {impure}, {dt:.2f} s (limit 10 s)")
    assert ok


def test_criterion_3_chain_formulas():
    rng = random.Random(7)

    def run():
        worst_int, worst_mult = 0.0, 0.0
        for _ in range(1000):
            n = rng.randint(2, 12)
            alpha = rng.uniform(0.5, 90.0 / (n - 1))
            if rng.random() < 0.05:
                alpha = 90.0 / (n - 1)
            chain = angles.build_chain(alpha, rng.uniform(0.1, 10), n)
            for k in range(2, n):
                worst_int = max(worst_int, abs(angles.interior_angle(chain, k) - (180 - 2 * (k - 1) * alpha)))
            for k in range(1, n):
                worst_mult = max(worst_mult, abs(angles.link_multiple_angle(chain, k) - k * alpha))
        exact = angles.max_multiplicity(30) == 4 and angles.max_multiplicity(10) == 10
        return worst_int, worst_mult, exact

    (wi, wm, exact), dt = _timed(run)
    ok = wi <= 1e-9 and wm <= 1e-9 and exact and dt < 5.0
    record(3, ok, f"interior {wi:.2e} deg, multiples {wm:.2e} deg, max_multiplicity exact={exact}, {dt:.2f} s (limit 5 s)")
    assert ok


def test_criterion_4_length_bound():
    try:
        angles.build_chain(45, 1, 4)
        rejected = False
    except ConstraintViolated:
        rejected = True
    chain = angles.build_chain(30, 1, 4)
    ok = rejected and chain.degenerate
    record(4, ok, f"(45, 4) rejected={rejected}, (30, 4) accepted with degenerate={chain.degenerate}")
    assert ok


def test_criterion_5_doubling_and_ratio():
    rng = random.Random(5)
    worst_double = 0.0
    for alpha in (5, 10, 15, 20, 25, 12.5, 7):
        chain = angles.build_chain(alpha, 1.0, angles.max_multiplicity(alpha))
        for k in range(1, chain.n):
            if 2 * k * alpha >= 180:
                continue
            base = angles.link_multiple_angle(chain, k)
            worst_double = max(worst_double, abs(angles.double_on_link(chain, k) - 2 * base) / (2 * base))
    worst_ratio = 0.0
    for _ in range(200):
        n = rng.randint(3, 10)
        alpha = rng.uniform(0.5, 90.0 / (n - 1))
        R = rng.uniform(0.1, 10)
        chain = angles.build_chain(alpha, R, n)
        k = rng.randint(2, n - 1)
        r = rng.uniform(R / 2, R)
        worst_ratio = max(worst_ratio, abs(angles.link_ratio(chain, k, r) - k / (k - 1)) / (k / (k - 1)))
    chain = angles.build_chain(20, 1.0, 4)
    r = angles.match_inner_radius(chain, 3, 75)
    link2 = angles.inner_angle(angles.InnerSequence(chain, 2, r))
    three_two = angles.inner_angle(angles.InnerSequence(chain, 3, r)) / link2
    worked = abs(link2 - 50) <= 1e-9 and abs(three_two - 1.5) <= 1e-12
    ok = worst_double <= 1e-12 and worst_ratio <= 1e-12 and worked
    record(5, ok, f"doubling rel {worst_double:.1e}, ratio rel {worst_ratio:.1e} (limits 1e-12), "
                  f"worked case link-2={link2:.12g} ratio={three_two:.12g}")
    assert ok


def test_criterion_6_angle_division():
    rng = random.Random(6)

    def run():
        worst, most = 0.0, 0
        for _ in range(500):
            theta = rng.uniform(0.1, 170)
            m = rng.randint(2, 9)
            res = angles.divide_angle(theta, m)
            worst = max(worst, abs(m * res.angle - theta))
            most = max(most, res.iterations)
        return worst, most

    (worst, most), dt = _timed(run)
    ok = worst <= 1e-10 and most <= 60 and dt < 5.0
    record(6, ok, f"max |m*result - theta| {worst:.2e} deg (limit 1e-10), max iterations {most}, {dt:.2f} s (limit 5 s)")
    assert ok


def _in_bounds(text: str, err: ParseError) -> bool:
    lines = text.split("\n")
    if not 1 <= err.line <= len(lines):
        return False
    return 1 <= err.column <= len(lines[err.line - 1])


def test_criterion_7_dsl_round_trip():
    rng = random.Random(11)
    generated = sum(dsl.parse(dsl.format(p)) == p for p in (random_program(rng) for _ in range(100)))
    presets = sum(dsl.parse(dsl.format(load_preset(n))) == load_preset(n) for n in preset_names())
    located = 0
    for text in SYNTAX_ERRORS:
        try:
            dsl.parse(text)
        except ParseError as err:
            located += _in_bounds(text, err)
    ok = generated == 100 and presets == len(preset_names()) and located == len(SYNTAX_ERRORS)
    record(7, ok, f"generated {generated}/100, presets {presets}/{len(preset_names())}, "
                  f"syntax fixtures located {located}/{len(SYNTAX_ERRORS)}")
    assert ok


def _counts_match(trace, svg: str) -> bool:
    want = {"point": 0, "circle": 0, "line": 0, "link": 0}
    for obj in trace.objects.values():
        if isinstance(obj, Point):
            want["point"] += 1
        elif isinstance(obj, Circle):
            want["circle"] += 1
        elif isinstance(obj, (Line, Ray)):
            want["line"] += 1
        elif isinstance(obj, Polyline):
            want["link"] += len(obj.points) - 1
        else:
            assert isinstance(obj, PointSet)
    got = {
        "point": len(re.findall(r'<circle [^>]*class="point ', svg)),
        "circle": len(re.findall(r'<circle [^>]*class="circle ', svg)),
        "line": len(re.findall(r'<line [^>]*class="(?:line|ray) ', svg)),
        "link": len(re.findall(r'<line [^>]*class="link"', svg)),
    }
    return got == want


def test_criterion_8_render_determinism():
    identical = counted = 0
    names = preset_names()
    for name in names:
        first = render_trace(evaluate(load_preset(name)))
        second = render_trace(evaluate(load_preset(name)))
        identical += first == second
        counted += _counts_match(evaluate(load_preset(name)), first)
    svg = render_trace(evaluate(load_preset("gothic-unit")))
    circles = len(re.findall(r'class="circle ', svg))
    lines = len(re.findall(r'<line [^>]*class="line ', svg))
    ok = identical == len(names) and counted == len(names) and (circles, lines) == (3, 1)
    record(8, ok, f"byte-identical {identical}/{len(names)}, counts {counted}/{len(names)}, "
                  f"gothic-unit {circles} circles + {lines} line")
    assert ok


@pytest.mark.parametrize("text", SYNTAX_ERRORS)
def test_syntax_fixture_location(text):
    with pytest.raises(ParseError) as info:
        dsl.parse(text)
    assert _in_bounds(text, info.value), (info.value.line, info.value.column)


def test_criterion_1_oracle_asymmetric_value():
    # exact positive root of 0.04 rho^2 + 1.728 rho - 0.5376 = 0
    rho = (-1.728 + math.sqrt(1.728 ** 2 + 4 * 0.04 * 0.5376)) / (2 * 0.04)
    assert gothic.gothic_oracle(1.0, 0.8, 1.0)[1] == pytest.approx(rho, abs=1e-12)
