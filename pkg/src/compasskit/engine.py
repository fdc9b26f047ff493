"""Construction programs, their evaluation into traces, and macro expansion.

A program is an ordered tuple of steps. Each step names one object and
derives it from earlier objects by a single rule. Macro steps bundle a
whole construction; :func:`expand_macros` replaces them with the
primitive compass and straightedge steps they stand for.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Optional, Union

from . import geom
from .errors import (
    BranchUnavailable,
    ConstructionError,
    GeometryError,
    StepFailure,
    UnknownMacro,
    ValidationError,
)
from .geom import DEFAULT_TOL, Circle, Line, Point, PointSet, Polyline, Ray, Tolerance

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

KINDS = ("point", "line", "ray", "circle", "points", "chain")
CURVES = ("line", "ray", "circle")
CLASSES = ("given", "compass", "straightedge", "macro", "numeric")

# rule -> (input kinds, result kind)
RULES: dict[str, tuple[tuple[Any, ...], str]] = {
    "free_point": ((), "point"),
    "line_through": (("point", "point"), "line"),
    "ray_from": (("point", "point"), "ray"),
    "circle_center_point": (("point", "point"), "circle"),
    "circle_center_radius": (("point",), "circle"),
    "intersect": ((CURVES, CURVES), "point"),
    "midpoint": (("point", "point"), "point"),
    "perpendicular_at": ((("line", "ray"), "point"), "line"),
    "perpendicular_bisector": (("point", "point"), "line"),
    "macro": (None, None),
}

_RULE_CLASS = {
    "free_point": "given",
    "line_through": "straightedge",
    "ray_from": "straightedge",
    "circle_center_point": "compass",
    "circle_center_radius": "compass",
    "midpoint": "compass",
    "perpendicular_at": "compass",
    "perpendicular_bisector": "compass",
}


@dataclass(frozen=True)
class Degrees:
    value: float


ArgValue = Union[str, float, Degrees, tuple]


@dataclass(frozen=True)
class Arg:
    """Macro argument. A ``str`` value is a reference to an object id."""

    value: ArgValue
    key: Optional[str] = None


@dataclass(frozen=True)
class Step:
    id: str
    rule: str
    kind: str
    inputs: tuple[str, ...] = ()
    params: Mapping[str, Any] = field(default_factory=dict)
    macro: Optional[str] = None
    args: tuple[Arg, ...] = ()
    line: Optional[int] = field(default=None, compare=False, repr=False)

    def positional(self) -> list[ArgValue]:
        return [a.value for a in self.args if a.key is None]

    def kwarg(self, key: str, default: Any = None) -> Any:
        for a in self.args:
            if a.key == key:
                return a.value
        return default


# step constructors

def free_point(id: str, x: float, y: float) -> Step:
    return Step(id, "free_point", "point", params={"x": float(x), "y": float(y)})


def line_through(id: str, a: str, b: str) -> Step:
    return Step(id, "line_through", "line", (a, b))


def ray_from(id: str, o: str, p: str) -> Step:
    return Step(id, "ray_from", "ray", (o, p))


def circle_center_point(id: str, c: str, p: str) -> Step:
    return Step(id, "circle_center_point", "circle", (c, p))


def circle_center_radius(id: str, c: str, radius: float) -> Step:
    return Step(id, "circle_center_radius", "circle", (c,), {"radius": float(radius)})


def intersection(id: str, a: str, b: str, branch: int) -> Step:
    return Step(id, "intersect", "point", (a, b), {"branch": int(branch)})


def midpoint(id: str, a: str, b: str) -> Step:
    return Step(id, "midpoint", "point", (a, b))


def perpendicular_at(id: str, l: str, p: str) -> Step:
    return Step(id, "perpendicular_at", "line", (l, p))


def perpendicular_bisector(id: str, a: str, b: str) -> Step:
    return Step(id, "perpendicular_bisector", "line", (a, b))


def macro_step(id: str, kind: str, name: str, args: tuple[Arg, ...]) -> Step:
    refs = tuple(a.value for a in args if isinstance(a.value, str))
    return Step(id, "macro", kind, refs, macro=name, args=tuple(args))


@dataclass(frozen=True)
class ConstructionProgram:
    steps: tuple[Step, ...]
    name: str = field(default="", compare=False)
    description: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)

    @property
    def ids(self) -> list[str]:
        return [s.id for s in self.steps]

    def has_macros(self) -> bool:
        return any(s.rule == "macro" for s in self.steps)


@dataclass(frozen=True)
class Trace:
    objects: dict[str, Any]
    classes: dict[str, str]
    name: str = field(default="", compare=False)

    def __getitem__(self, key: str):
        return self.objects[key]

    def class_set(self) -> set[str]:
        return set(self.classes.values())


# macros


@dataclass(frozen=True)
class MacroDef:
    """Registered macro.

    ``positional`` lists the kinds of positional arguments (object kinds or
    ``"ratio"``); ``keywords`` maps a keyword to ``(type, required)`` with
    type one of ``"num"``, ``"deg"``, ``"int"``. ``outputs`` names the
    secondary objects a step produces; ``compute`` evaluates the step in
    closed form; ``expand`` emits primitive steps into a :class:`Builder`.
    A macro without ``expand`` is a numeric solve and stays atomic.
    """

    name: str
    kind: str
    positional: tuple[str, ...]
    keywords: Mapping[str, tuple[str, bool]]
    outputs: Callable[[Step], list[tuple[str, str]]]
    compute: Callable[[Step, Mapping[str, Any], Tolerance], dict[str, Any]]
    expand: Optional[Callable[["Builder", Step], None]] = None

    @property
    def numeric(self) -> bool:
        return self.expand is None


_MACROS: dict[str, MacroDef] = {}


def register_macro(defn: MacroDef) -> MacroDef:
    _MACROS[defn.name] = defn
    return defn


def get_macro(name: str) -> MacroDef:
    if not _MACROS:
        from . import macros  # noqa: F401  (populates the registry)
    try:
        return _MACROS[name]
    except KeyError:
        raise UnknownMacro(f"unknown macro {name!r}") from None


def macro_names() -> list[str]:
    if not _MACROS:
        from . import macros  # noqa: F401
    return sorted(_MACROS)


# validation

def _kind_ok(expected, actual: str) -> bool:
    if isinstance(expected, tuple):
        return actual in expected
    return expected == actual


def _validate_macro(step: Step, known: dict[str, str]) -> list[tuple[str, str]]:
    defn = get_macro(step.macro)
    if step.kind != defn.kind:
        raise ValidationError(
            f"macro {defn.name} produces a {defn.kind}, declared as {step.kind}", step.line
        )
    pos = step.positional()
    if len(pos) != len(defn.positional):
        raise ValidationError(
            f"macro {defn.name} takes {len(defn.positional)} positional arguments, got {len(pos)}",
            step.line,
        )
    for value, want in zip(pos, defn.positional):
        if want == "ratio":
            if not (isinstance(value, tuple) and len(value) >= 2
                    and all(isinstance(v, int) and v >= 1 for v in value)):
                raise ValidationError(f"expected a ratio p1:p2:..., got {value!r}", step.line)
        elif not isinstance(value, str):
            raise ValidationError(f"expected a {want} reference, got {value!r}", step.line)
        elif known.get(value) != want:
            raise ValidationError(f"argument {value!r} must be a {want}", step.line)
    seen = set()
    for a in step.args:
        if a.key is None:
            continue
        if a.key in seen:
            raise ValidationError(f"duplicate keyword {a.key!r}", step.line)
        seen.add(a.key)
        if a.key not in defn.keywords:
            raise ValidationError(f"macro {defn.name} has no parameter {a.key!r}", step.line)
        typ = defn.keywords[a.key][0]
        v = a.value
        if typ == "deg":
            ok = isinstance(v, Degrees)
        elif typ == "int":
            ok = isinstance(v, (int, float)) and not isinstance(v, bool) and float(v).is_integer()
        else:
            ok = isinstance(v, (int, float)) and not isinstance(v, bool)
        if not ok:
            raise ValidationError(f"parameter {a.key!r} expects {typ}, got {v!r}", step.line)
    for key, (_, required) in defn.keywords.items():
        if required and key not in seen:
            raise ValidationError(f"macro {defn.name} requires {key}=", step.line)
    return defn.outputs(step)


def validate(program: ConstructionProgram) -> dict[str, str]:
    """Static checks; returns the kind of every object the program defines."""
    known: dict[str, str] = {}

    def claim(name: str, kind: str, line):
        if not IDENT_RE.match(name):
            raise ValidationError(f"invalid identifier {name!r}", line)
        if name in known:
            raise ValidationError(f"duplicate id {name!r}", line)
        known[name] = kind

    for step in program.steps:
        if step.rule not in RULES:
            raise ValidationError(f"unknown rule {step.rule!r}", step.line)
        for ref in step.inputs:
            if ref not in known:
                raise ValidationError(f"unknown reference {ref!r}", step.line)
        if step.rule == "macro":
            extra = _validate_macro(step, known)
            claim(step.id, step.kind, step.line)
            for name, kind in extra:
                claim(name, kind, step.line)
            continue
        want, result = RULES[step.rule]
        if step.kind != result:
            raise ValidationError(
                f"{step.rule} produces a {result}, declared as {step.kind}", step.line
            )
        if len(step.inputs) != len(want):
            raise ValidationError(
                f"{step.rule} takes {len(want)} inputs, got {len(step.inputs)}", step.line
            )
        for ref, w in zip(step.inputs, want):
            if not _kind_ok(w, known[ref]):
                raise ValidationError(f"input {ref!r} has kind {known[ref]}", step.line)
        if step.rule == "free_point":
            for k in ("x", "y"):
                v = step.params.get(k)
                if not isinstance(v, float) or not math.isfinite(v):
                    raise ValidationError(f"free point needs finite {k}", step.line)
        if step.rule == "circle_center_radius":
            r = step.params.get("radius")
            if not isinstance(r, float) or not r > 0 or not math.isfinite(r):
                raise ValidationError("radius must be a positive number", step.line)
        if step.rule == "intersect":
            b = step.params.get("branch")
            if not isinstance(b, int) or b < 0:
                raise ValidationError("branch index must be a non-negative integer", step.line)
        claim(step.id, step.kind, step.line)
    return known


# evaluation

def _eval_primitive(step: Step, objs: Mapping[str, Any], tol: Tolerance):
    inp = [objs[i] for i in step.inputs]
    rule = step.rule
    if rule == "free_point":
        return Point(step.params["x"], step.params["y"])
    if rule == "line_through":
        return Line.through(inp[0], inp[1], tol)
    if rule == "ray_from":
        return Ray.through(inp[0], inp[1], tol)
    if rule == "circle_center_point":
        return Circle(inp[0], inp[0].dist(inp[1]))
    if rule == "circle_center_radius":
        return Circle(inp[0], step.params["radius"])
    if rule == "intersect":
        pts = geom.intersect(inp[0], inp[1], tol)
        b = step.params["branch"]
        if b >= len(pts):
            raise BranchUnavailable(
                step.id, f"branch {b} requested, {len(pts)} intersection(s) available"
            )
        return pts[b]
    if rule == "midpoint":
        return geom.midpoint(inp[0], inp[1])
    if rule == "perpendicular_at":
        return geom.perpendicular_through(inp[0], inp[1])
    if rule == "perpendicular_bisector":
        return geom.perpendicular_bisector(inp[0], inp[1], tol)
    raise ValidationError(f"unknown rule {rule!r}", step.line)


def eval_step(step: Step, objs: Mapping[str, Any], tol: Tolerance = DEFAULT_TOL) -> dict[str, Any]:
    """Evaluate one step against already-evaluated objects."""
    try:
        if step.rule == "macro":
            return get_macro(step.macro).compute(step, objs, tol)
        return {step.id: _eval_primitive(step, objs, tol)}
    except ConstructionError:
        raise
    except GeometryError as exc:
        raise StepFailure(step.id, exc) from exc


def classify(step: Step, kinds: Mapping[str, str]) -> str:
    if step.rule == "macro":
        return "numeric" if get_macro(step.macro).numeric else "macro"
    if step.rule == "intersect":
        return "compass" if any(kinds[i] == "circle" for i in step.inputs) else "straightedge"
    return _RULE_CLASS[step.rule]


def evaluate(program: ConstructionProgram, tol: Tolerance = DEFAULT_TOL) -> Trace:
    kinds = validate(program)
    objects: dict[str, Any] = {}
    classes: dict[str, str] = {}
    for step in program.steps:
        objects.update(eval_step(step, objects, tol))
        classes[step.id] = classify(step, kinds)
    return Trace(objects, classes, program.name)


def kind_of(obj) -> str:
    return {
        Point: "point", Line: "line", Ray: "ray", Circle: "circle",
        PointSet: "points", Polyline: "chain",
    }[type(obj)]


class Builder:
    """Incrementally emit and evaluate primitive steps.

    Used by macro expansion and by the construction functions of the
    segment, gothic and angle modules. Intersection branches may be given
    as an index or as a picker that chooses among the sorted candidates.
    """

    def __init__(self, tol: Tolerance = DEFAULT_TOL):
        self.tol = tol
        self.steps: list[Step] = []
        self.objects: dict[str, Any] = {}
        self.kinds: dict[str, str] = {}
        self.classes: dict[str, str] = {}

    def __getitem__(self, key: str):
        return self.objects[key]

    def add(self, step: Step) -> str:
        outs = eval_step(step, self.objects, self.tol)
        self.classes[step.id] = classify(step, self.kinds)
        self.steps.append(step)
        self.objects.update(outs)
        for k, v in outs.items():
            self.kinds[k] = kind_of(v)
        return step.id

    def point(self, id, x, y):
        return self.add(free_point(id, x, y))

    def line(self, id, a, b):
        return self.add(line_through(id, a, b))

    def ray(self, id, o, p):
        return self.add(ray_from(id, o, p))

    def circle(self, id, c, p):
        return self.add(circle_center_point(id, c, p))

    def circle_r(self, id, c, radius):
        return self.add(circle_center_radius(id, c, radius))

    def midpoint(self, id, a, b):
        return self.add(midpoint(id, a, b))

    def perp(self, id, l, at):
        return self.add(perpendicular_at(id, l, at))

    def bisector(self, id, a, b):
        return self.add(perpendicular_bisector(id, a, b))

    def intersect(self, id, a, b, pick: Union[int, Callable] = 0):
        if callable(pick):
            try:
                cands = geom.intersect(self.objects[a], self.objects[b], self.tol)
            except GeometryError as exc:
                raise StepFailure(id, exc) from exc
            if not cands:
                raise BranchUnavailable(id, "no intersection")
            pick = pick(cands, self.objects)
        return self.add(intersection(id, a, b, pick))

    def macro(self, step: Step) -> None:
        defn = get_macro(step.macro)
        if defn.expand is None:
            self.add(step)
        else:
            defn.expand(self, step)

    def program(self, name: str = "") -> ConstructionProgram:
        return ConstructionProgram(tuple(self.steps), name)

    def trace(self, name: str = "") -> Trace:
        return Trace(dict(self.objects), dict(self.classes), name)


# branch pickers

def far_from(ref: str):
    """Pick the candidate farthest from object ``ref``."""
    def pick(cands, objs):
        p = objs[ref]
        return max(range(len(cands)), key=lambda i: cands[i].dist(p))
    return pick


def near(ref: str):
    def pick(cands, objs):
        p = objs[ref]
        return min(range(len(cands)), key=lambda i: cands[i].dist(p))
    return pick


def left_of(a: str, b: str):
    """Pick the candidate on the left of the directed line a -> b."""
    def pick(cands, objs):
        pa, pb = objs[a], objs[b]
        return max(range(len(cands)), key=lambda i: (pb - pa).cross(cands[i] - pa))
    return pick


def toward(a: str, b: str):
    """Pick the candidate farthest along the direction a -> b."""
    def pick(cands, objs):
        pa, pb = objs[a], objs[b]
        return max(range(len(cands)), key=lambda i: (pb - pa).dot(cands[i] - pa))
    return pick


def expand_macros(program: ConstructionProgram, tol: Tolerance = DEFAULT_TOL) -> ConstructionProgram:
    """Replace every expandable macro by primitive steps.

    Branch indices in the expansion are fixed by evaluating the inputs, so
    the result is specific to the program's free-point coordinates.
    Numeric-solve macros are kept as they are.
    """
    validate(program)
    if not program.has_macros():
        return program
    b = Builder(tol)
    for step in program.steps:
        if step.rule == "macro":
            b.macro(step)
        else:
            b.add(step)
    out = ConstructionProgram(tuple(b.steps), program.name, program.description)
    validate(out)
    return out


def object_distance(a, b) -> float:
    """Largest coordinate discrepancy between two objects of the same type."""
    if type(a) is not type(b):
        return math.inf
    if isinstance(a, Point):
        return a.dist(b)
    if isinstance(a, Circle):
        return max(a.center.dist(b.center), abs(a.radius - b.radius))
    if isinstance(a, (Line, Ray)):
        if a.direction.dot(b.direction) < 0:
            if isinstance(a, Ray):
                return math.inf
            b = type(b)(b.anchor, -b.direction)
        gap = a.origin.dist(b.origin) if isinstance(a, Ray) else Line(a.anchor, a.direction).distance(b.anchor)
        return max(gap, a.direction.dist(b.direction))
    if isinstance(a, (PointSet, Polyline)):
        if len(a.points) != len(b.points):
            return math.inf
        return max((p.dist(q) for p, q in zip(a.points, b.points)), default=0.0)
    return 0.0 if a == b else math.inf


def objects_close(a, b, tol: Tolerance = DEFAULT_TOL) -> bool:
    return object_distance(a, b) <= tol.eps_abs


def compare_traces(t1: Trace, t2: Trace) -> tuple[list[str], float]:
    """Ids present in both traces and the largest discrepancy among them."""
    shared = [k for k in t1.objects if k in t2.objects]
    worst = max((object_distance(t1.objects[k], t2.objects[k]) for k in shared), default=0.0)
    return shared, worst


# JSON export

def _encode(obj) -> dict[str, Any]:
    if isinstance(obj, Point):
        return {"type": "point", "x": obj.x, "y": obj.y}
    if isinstance(obj, (Line, Ray)):
        d = obj.direction
        return {
            "type": "line" if isinstance(obj, Line) else "ray",
            "x": obj.anchor.x, "y": obj.anchor.y,
            "dx": d.x, "dy": d.y,
            "angle_deg": math.degrees(math.atan2(d.y, d.x)),
        }
    if isinstance(obj, Circle):
        return {"type": "circle", "cx": obj.center.x, "cy": obj.center.y, "radius": obj.radius}
    if isinstance(obj, (PointSet, Polyline)):
        return {
            "type": "points" if isinstance(obj, PointSet) else "polyline",
            "points": [[p.x, p.y] for p in obj.points],
        }
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _decode(d: Mapping[str, Any]):
    t = d["type"]
    if t == "point":
        return Point(d["x"], d["y"])
    if t in ("line", "ray"):
        cls = Line if t == "line" else Ray
        return cls(Point(d["x"], d["y"]), Point(d["dx"], d["dy"]))
    if t == "circle":
        return Circle(Point(d["cx"], d["cy"]), d["radius"])
    if t in ("points", "polyline"):
        cls = PointSet if t == "points" else Polyline
        return cls(tuple(Point(x, y) for x, y in d["points"]))
    raise ValueError(f"unknown object type {t!r}")


def trace_to_dict(t: Trace) -> dict[str, Any]:
    return {
        "name": t.name,
        "objects": {k: _encode(v) for k, v in t.objects.items()},
        "classes": dict(t.classes),
    }


def export_trace(t: Trace) -> str:
    return json.dumps(trace_to_dict(t), indent=2)


def import_trace(doc: str) -> Trace:
    d = json.loads(doc)
    return Trace(
        {k: _decode(v) for k, v in d["objects"].items()},
        dict(d["classes"]),
        d.get("name", ""),
    )
