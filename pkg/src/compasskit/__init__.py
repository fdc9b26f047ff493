"""Compass and straightedge constructions with analytic cross-checks."""

from .dsl import format, parse
from .engine import (
    Builder,
    ConstructionProgram,
    Step,
    Trace,
    evaluate,
    expand_macros,
    export_trace,
    import_trace,
)
from .geom import DEFAULT_TOL, Circle, Line, Point, PointSet, Polyline, Ray, Segment, Tolerance
from .presets import load_preset, preset_names
from .render import Style, render_trace
from .verify import Check, verify_program

__version__ = "0.1.0"

__all__ = [
    "Builder", "Check", "Circle", "ConstructionProgram", "DEFAULT_TOL", "Line", "Point",
    "PointSet", "Polyline", "Ray", "Segment", "Step", "Style", "Tolerance", "Trace",
    "evaluate", "expand_macros", "export_trace", "format", "import_trace", "load_preset",
    "parse", "preset_names", "render_trace", "verify_program",
]
