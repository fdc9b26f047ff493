"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 construction error.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path

from . import angles, gothic
from .dsl import parse
from .engine import evaluate, export_trace
from .errors import GeometryError, ParseError, ValidationError
from .geom import Circle, Line, Point, PointSet, Polyline, Ray, Tolerance
from .presets import PRESETS, load_preset, preset_names
from .render import Style, render_trace
from .verify import all_passed, verify_program

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_GEOMETRY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _g(v: float) -> str:
    return repr(float(v))


def _fields(obj) -> list[tuple[str, str]]:
    if isinstance(obj, Point):
        return [("x", _g(obj.x)), ("y", _g(obj.y))]
    if isinstance(obj, Circle):
        return [("cx", _g(obj.center.x)), ("cy", _g(obj.center.y)), ("r", _g(obj.radius))]
    if isinstance(obj, (Line, Ray)):
        d = obj.direction
        return [("x", _g(obj.anchor.x)), ("y", _g(obj.anchor.y)),
                ("angle_deg", _g(math.degrees(math.atan2(d.y, d.x))))]
    if isinstance(obj, (PointSet, Polyline)):
        return [("count", str(len(obj.points)))]
    return []


def _load(target: str, allow_preset: bool):
    if allow_preset and target in PRESETS:
        return load_preset(target)
    path = Path(target)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {target}: {exc.strerror or exc}") from None
    return parse(text, path.stem)


def _positive_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="compasskit", description="Compass and straightedge constructions.")
    p.add_argument("--tol", type=float, default=None, help="absolute tolerance (default 1e-9)")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evaluate a script and print its objects")
    run.add_argument("script")
    run.add_argument("--json", action="store_true", help="print the trace as JSON")

    ver = sub.add_parser("verify", help="run invariant suites on a script or preset")
    ver.add_argument("target")

    ren = sub.add_parser("render", help="write an SVG drawing")
    ren.add_argument("target")
    ren.add_argument("--out", required=True)
    ren.add_argument("--canvas", type=float, default=600.0)
    ren.add_argument("--margin", type=float, default=20.0)
    ren.add_argument("--stroke", type=float, default=1.5)
    ren.add_argument("--no-flip", action="store_true", help="keep SVG's downward y axis")

    sw = sub.add_parser("sweep-gothic", help="inscribed circle over a range of base lengths")
    sw.add_argument("--a", type=float, required=True)
    sw.add_argument("--d-min", type=float, default=0.0)
    sw.add_argument("--d-max", type=float, default=None)
    sw.add_argument("--steps", type=_positive_int, default=20)
    sw.add_argument("--out", default="-")

    ch = sub.add_parser("chain", help="chain of multiple angles")
    ch.add_argument("--alpha", type=float, required=True, help="base angle in degrees")
    ch.add_argument("--R", type=float, default=1.0)
    ch.add_argument("--n", type=int, required=True)

    da = sub.add_parser("divide-angle", help="divide an angle into m equal parts")
    da.add_argument("--theta", type=float, required=True, help="degrees")
    da.add_argument("--m", type=int, required=True)

    sub.add_parser("presets", help="list bundled presets")
    return p


def _cmd_run(args, tol, out) -> int:
    trace = evaluate(_load(args.script, allow_preset=False), tol)
    if args.json:
        out.write(export_trace(trace) + "\n")
        return EXIT_OK
    for oid, obj in trace.objects.items():
        out.write(f"{oid}.class={trace.classes[oid]}\n")
        for key, value in _fields(obj):
            out.write(f"{oid}.{key}={value}\n")
    return EXIT_OK


def _cmd_verify(args, tol, out) -> int:
    checks = verify_program(_load(args.target, allow_preset=True), tol)
    for c in checks:
        out.write(c.line() + "\n")
    ok = all_passed(checks)
    out.write(f"result={'pass' if ok else 'fail'}\n")
    return EXIT_OK if ok else EXIT_VERIFY


def _cmd_render(args, tol, out) -> int:
    try:
        style = Style(stroke_width=args.stroke, canvas=args.canvas, margin=args.margin,
                      flip_y=not args.no_flip)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    svg = render_trace(evaluate(_load(args.target, allow_preset=True), tol), style)
    try:
        Path(args.out).write_text(svg, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc.strerror or exc}") from None
    out.write(f"written={args.out}\n")
    return EXIT_OK


def _cmd_sweep(args, tol, out) -> int:
    a = args.a
    d_max = 1.9 * a if args.d_max is None else args.d_max
    if args.steps == 1:
        ds = [args.d_min]
    else:
        ds = [args.d_min + (d_max - args.d_min) * i / (args.steps - 1) for i in range(args.steps)]
    rows = gothic.gothic_family(a, ds)
    if args.out == "-":
        fh, close = out, False
    else:
        try:
            fh, close = open(args.out, "w", encoding="utf-8", newline=""), True
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc.strerror or exc}") from None
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["d", "x", "rho"])
        for d, x, rho in rows:
            w.writerow([_g(d), _g(x), _g(rho)])
    finally:
        if close:
            fh.close()
    return EXIT_OK


def _cmd_chain(args, tol, out) -> int:
    chain = angles.build_chain(args.alpha, args.R, args.n, tol)
    out.write(f"n={chain.n}\n")
    out.write(f"degenerate={str(chain.degenerate).lower()}\n")
    out.write(f"max_multiplicity={angles.max_multiplicity(args.alpha)}\n")
    for k, c in enumerate(chain.centers, start=1):
        out.write(f"C{k}.x={_g(c.x)}\nC{k}.y={_g(c.y)}\n")
    for k in range(1, chain.n):
        out.write(f"link{k}.angle={_g(angles.link_multiple_angle(chain, k))}\n")
    for k in range(2, chain.n):
        out.write(f"C{k}.interior={_g(angles.interior_angle(chain, k))}\n")
    return EXIT_OK


def _cmd_divide(args, tol, out) -> int:
    res = angles.divide_angle(args.theta, args.m)
    out.write(f"result={res.angle:.12g}\n")
    out.write(f"residual={res.residual:.3e}\n")
    out.write(f"iterations={res.iterations}\n")
    out.write(f"radius={_g(res.radius)}\n")
    return EXIT_OK


def _cmd_presets(args, tol, out) -> int:
    for name in preset_names():
        out.write(name + "\n")
    return EXIT_OK


_COMMANDS = {
    "run": _cmd_run,
    "verify": _cmd_verify,
    "render": _cmd_render,
    "sweep-gothic": _cmd_sweep,
    "chain": _cmd_chain,
    "divide-angle": _cmd_divide,
    "presets": _cmd_presets,
}


def main(argv: list[str] | None = None) -> int:
    out, err = sys.stdout, sys.stderr
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        tol = Tolerance() if args.tol is None else Tolerance(eps_abs=args.tol)
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args, tol, out)
    except (UsageError, ParseError, ValidationError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except GeometryError as exc:
        err.write(f"construction error: {exc}\n")
        return EXIT_GEOMETRY
    except ValueError as exc:
        # argument values outside an operation's domain
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
