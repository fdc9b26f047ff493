"""Line-oriented text format (``.gcs``) for construction programs.

One statement per line, ``#`` starts a comment::

    point A = (0, 0)
    point B = (1, 0)
    circle c = circle(A, B)
    line l = line(A, B)
    point P = intersect(c, l, 0)
    circle w = macro gothic_inscribe(A, B, r=1)

There are no expressions: every computed quantity comes from a rule or a
macro.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .engine import (
    KINDS,
    Arg,
    ConstructionProgram,
    Degrees,
    Step,
    circle_center_point,
    circle_center_radius,
    free_point,
    intersection,
    line_through,
    macro_step,
    midpoint,
    perpendicular_at,
    perpendicular_bisector,
    ray_from,
    validate,
)
from .errors import ParseError, ValidationError

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>\#.*)
  | (?P<num>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?(?:deg)?)(?![A-Za-z0-9_.])
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<punct>[=(),:])
    """,
    re.VERBOSE,
)

_INT_RE = re.compile(r"[+-]?\d+\Z")

# rule name in the text -> (result kind, step builder signature)
_FUNCS = ("line", "ray", "circle", "intersect", "midpoint", "perp", "bisector")
_FUNC_KIND = {
    "line": "line", "ray": "ray", "circle": "circle", "intersect": "point",
    "midpoint": "point", "perp": "line", "bisector": "line",
}


@dataclass(frozen=True)
class Token:
    kind: str  # num | ident | punct | eol
    text: str
    col: int  # 0-based


def _tokenize(raw: str, lineno: int) -> list[Token]:
    toks = []
    pos = 0
    while pos < len(raw):
        m = _TOKEN_RE.match(raw, pos)
        if not m:
            raise ParseError(lineno, pos + 1, "unexpected character", raw[pos])
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            toks.append(Token(kind, m.group(), pos))
        pos = m.end()
    end = toks[-1].col + len(toks[-1].text) if toks else 0
    toks.append(Token("eol", "", end))
    return toks


class _LineParser:
    def __init__(self, raw: str, lineno: int):
        self.raw = raw
        self.lineno = lineno
        self.toks = _tokenize(raw, lineno)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        col = min(tok.col, len(self.raw) - 1) + 1
        raise ParseError(self.lineno, col, message, tok.text or "<end of line>")

    def next(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind not in ("punct", "ident"):
            self.error(f"expected {text!r}")
        return self.next()

    def ident(self) -> str:
        if self.tok.kind != "ident":
            self.error("expected an identifier")
        return self.next().text

    def number(self) -> float:
        t = self.tok
        if t.kind != "num" or t.text.endswith("deg"):
            self.error("expected a number")
        self.next()
        return float(t.text)

    def integer(self) -> int:
        t = self.tok
        if t.kind != "num" or not _INT_RE.match(t.text):
            self.error("expected an integer")
        self.next()
        return int(t.text)

    def parse(self) -> Step | None:
        if self.tok.kind == "eol":
            return None
        type_tok = self.tok
        kind = self.ident()
        if kind not in KINDS:
            self.error(f"unknown type {kind!r}", type_tok)
        sid = self.ident()
        self.expect("=")
        if self.tok.text == "(" and self.tok.kind == "punct":
            self.next()
            x = self.number()
            self.expect(",")
            y = self.number()
            self.expect(")")
            step, result = free_point(sid, x, y), "point"
        elif self.tok.text == "macro":
            self.next()
            name = self.ident()
            self.expect("(")
            args = self.args()
            self.expect(")")
            step, result = macro_step(sid, kind, name, args), kind
        else:
            func_tok = self.tok
            func = self.ident()
            if func not in _FUNCS:
                self.error(f"unknown construction {func!r}", func_tok)
            self.expect("(")
            step = self.call(sid, func)
            self.expect(")")
            result = _FUNC_KIND[func]
        if self.tok.kind != "eol":
            self.error("unexpected trailing input")
        if result != kind:
            raise ValidationError(f"{sid} is declared {kind} but defines a {result}", self.lineno)
        return Step(step.id, step.rule, step.kind, step.inputs, step.params,
                    step.macro, step.args, line=self.lineno)

    def call(self, sid: str, func: str) -> Step:
        a = self.ident()
        self.expect(",")
        if func == "circle" and self.tok.text == "r" and self.toks[self.i + 1].text == "=":
            self.next()
            self.next()
            return circle_center_radius(sid, a, self.number())
        if func == "perp":
            self.expect("at")
            self.expect("=")
            return perpendicular_at(sid, a, self.ident())
        b = self.ident()
        if func == "intersect":
            self.expect(",")
            return intersection(sid, a, b, self.integer())
        return {
            "line": line_through, "ray": ray_from, "circle": circle_center_point,
            "midpoint": midpoint, "bisector": perpendicular_bisector,
        }[func](sid, a, b)

    def args(self) -> tuple[Arg, ...]:
        out = []
        if self.tok.text == ")" and self.tok.kind == "punct":
            return ()
        while True:
            key = None
            if self.tok.kind == "ident" and self.toks[self.i + 1].text == "=":
                key = self.next().text
                self.next()
            out.append(Arg(self.value(), key))
            if self.tok.text == "," and self.tok.kind == "punct":
                self.next()
                continue
            return tuple(out)

    def value(self):
        t = self.tok
        if t.kind == "ident":
            return self.next().text
        if t.kind != "num":
            self.error("expected an argument")
        if t.text.endswith("deg"):
            self.next()
            return Degrees(float(t.text[:-3]))
        if self.toks[self.i + 1].text == ":":
            parts = [self.integer()]
            while self.tok.text == ":":
                self.next()
                parts.append(self.integer())
            return tuple(parts)
        return self.number()


def parse(text: str, name: str = "") -> ConstructionProgram:
    """Parse and statically validate a script."""
    steps = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        raw = raw.rstrip("\r")
        step = _LineParser(raw, lineno).parse()
        if step is not None:
            steps.append(step)
    program = ConstructionProgram(tuple(steps), name)
    validate(program)
    return program


def _num(x) -> str:
    if isinstance(x, int):
        return str(x)
    if float(x).is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(float(x))


def _arg(a: Arg) -> str:
    v = a.value
    if isinstance(v, str):
        s = v
    elif isinstance(v, Degrees):
        s = _num(v.value) + "deg"
    elif isinstance(v, tuple):
        s = ":".join(str(p) for p in v)
    else:
        s = _num(v)
    return f"{a.key}={s}" if a.key else s


def format_step(s: Step) -> str:
    i = s.inputs
    head = f"{s.kind} {s.id} = "
    if s.rule == "free_point":
        return head + f"({_num(s.params['x'])}, {_num(s.params['y'])})"
    if s.rule == "macro":
        return head + f"macro {s.macro}({', '.join(_arg(a) for a in s.args)})"
    if s.rule == "circle_center_radius":
        return head + f"circle({i[0]}, r={_num(s.params['radius'])})"
    if s.rule == "intersect":
        return head + f"intersect({i[0]}, {i[1]}, {s.params['branch']})"
    if s.rule == "perpendicular_at":
        return head + f"perp({i[0]}, at={i[1]})"
    func = {
        "line_through": "line", "ray_from": "ray", "circle_center_point": "circle",
        "midpoint": "midpoint", "perpendicular_bisector": "bisector",
    }[s.rule]
    return head + f"{func}({i[0]}, {i[1]})"


def format(program: ConstructionProgram) -> str:  # noqa: A001
    return "".join(format_step(s) + "\n" for s in program.steps)
