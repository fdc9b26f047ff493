"""Bundled construction scripts, one per figure."""

from __future__ import annotations

from .dsl import parse
from .engine import ConstructionProgram

PRESETS: dict[str, str] = {
    "fig1a": """\
# segment divided into three equal parts with the Thales construction
point A = (0, 0)
point B = (3, 0)
line l = line(A, B)
points P = macro divide_thales(A, B, 1:1:1)
""",
    "fig1b": """\
# segment divided 1:2 by circles internally tangent at A
point A = (0, 0)
point B = (3, 0)
line l = line(A, B)
points P = macro divide_circles(A, B, 1:2, r=1)
""",
    "fig2b": """\
# semicircle: inscribed circle touches the diameter at the center
point A0 = (0, 0)
point E = (1, 0)
point W = (-1, 0)
line base = line(W, E)
circle c = circle(A0, E)
line k = perp(base, at=A0)
point H = intersect(k, c, 1)
point M = midpoint(A0, H)
circle w = circle(M, A0)
""",
    "fig2c": """\
# two circles through each other's centers; D0 is the foot of the axis
point A = (0, 0)
point B = (1, 0)
circle cA = circle(A, B)
circle cB = circle(B, A)
line l = line(A, B)
point D0 = midpoint(A, B)
line k = perp(l, at=D0)
point C = intersect(cA, cB, 1)
""",
    "fig2d": """\
# equal-radius arches of growing base, each with its inscribed circle
point A = (0, 0)
point B1 = (0.5, 0)
point B2 = (1, 0)
point B3 = (1.5, 0)
line l = line(A, B3)
circle w1 = macro gothic_inscribe(A, B1, r=1)
circle w2 = macro gothic_inscribe(A, B2, r=1)
circle w3 = macro gothic_inscribe(A, B3, r=1)
""",
    "fig2e": """\
# arch with unequal radii, solved numerically
point A = (0, 0)
point B = (1, 0)
circle cA = circle(A, r=1)
circle cB = circle(B, r=0.8)
line l = line(A, B)
circle w = macro gothic_solve(A, B, a=1, b=0.8)
""",
    "fig3a": """\
# chain of multiple angles, alpha = 20 degrees
chain K = macro angle_chain(alpha=20deg, R=1, n=5)
""",
    "gothic-unit": """\
# unit arch: inscribed circle of radius 3/8
point A = (0, 0)
point B = (1, 0)
circle cA = circle(A, B)
circle cB = circle(B, A)
line l = line(A, B)
circle w = macro gothic_inscribe(A, B, r=1)
""",
    "chain-30-4": """\
# chain at the length limit: 30 * (4 - 1) = 90
chain K = macro angle_chain(alpha=30deg, R=1, n=4)
""",
}


def preset_names() -> list[str]:
    return list(PRESETS)


def load_preset(name: str) -> ConstructionProgram:
    try:
        text = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
    return parse(text, name)
