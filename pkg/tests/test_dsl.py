import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import random_program

from compasskit import dsl
from compasskit.engine import Degrees, evaluate
from compasskit.errors import BranchUnavailable, ParseError, ValidationError
from compasskit.presets import PRESETS, load_preset, preset_names


def test_single_point():
    p = dsl.parse("point A = (0,0)")
    assert len(p) == 1
    step = p.steps[0]
    assert (step.id, step.rule, step.params) == ("A", "free_point", {"x": 0.0, "y": 0.0})


def test_format_single_point():
    assert dsl.format(dsl.parse("point A = (0,0)")) == "point A = (0, 0)\n"


def test_branch_index_checked_at_evaluation():
    src = """\
point A = (0, 0)
point B = (1, 0)
circle c1 = circle(A, B)
circle c2 = circle(B, A)
point P = intersect(c1, c2, 2)
"""
    prog = dsl.parse(src)
    with pytest.raises(BranchUnavailable):
        evaluate(prog)


def test_missing_comma_location():
    with pytest.raises(ParseError) as info:
        dsl.parse("point A = (0 0)")
    err = info.value
    assert (err.line, err.column, err.token) == (1, 14, "0")


def test_error_line_number_counts_comments_and_blanks():
    with pytest.raises(ParseError) as info:
        dsl.parse("# header\n\npoint A = (0, 0)\npoint B = (1 0)\n")
    assert info.value.line == 4


def test_unexpected_character():
    with pytest.raises(ParseError) as info:
        dsl.parse("point A = (0, 0) @")
    assert info.value.column == 18 and info.value.token == "@"


def test_end_of_line_error_points_at_last_character():
    text = "point A = (0, 0"
    with pytest.raises(ParseError) as info:
        dsl.parse(text)
    assert info.value.column == len(text)


def test_duplicate_id_is_validation_error():
    with pytest.raises(ValidationError) as info:
        dsl.parse("point A = (0, 0)\npoint A = (1, 0)\n")
    assert info.value.line == 2


def test_unknown_reference():
    with pytest.raises(ValidationError):
        dsl.parse("point A = (0, 0)\nline l = line(A, Z)\n")


def test_declared_type_mismatch():
    with pytest.raises(ValidationError):
        dsl.parse("point A = (0, 0)\npoint B = (1, 0)\ncircle l = line(A, B)\n")


def test_comments_and_crlf():
    p = dsl.parse("point A = (1, 2)  # origin\r\n# only a comment\r\npoint B = (3e-2, -4.5E+1)\r\n")
    assert p.ids == ["A", "B"]
    assert p.steps[1].params == {"x": 0.03, "y": -45.0}


def test_every_statement_form():
    src = """\
point A = (0, 0)
point B = (2, 0)
line l = line(A, B)
ray r = ray(A, B)
circle c = circle(A, B)
circle d = circle(B, r=1.5)
point P = intersect(c, d, 1)
point M = midpoint(A, B)
line k = perp(l, at=M)
line b = bisector(A, P)
points Q = macro divide_thales(A, B, 1:2:3)
chain K = macro angle_chain(alpha=12.5deg, R=0.5, n=3)
"""
    p = dsl.parse(src)
    assert [s.rule for s in p.steps] == [
        "free_point", "free_point", "line_through", "ray_from", "circle_center_point",
        "circle_center_radius", "intersect", "midpoint", "perpendicular_at",
        "perpendicular_bisector", "macro", "macro",
    ]
    assert p.steps[-1].kwarg("alpha") == Degrees(12.5)
    assert p.steps[-2].positional()[2] == (1, 2, 3)
    assert dsl.format(p) == src


def test_numbers_round_trip_to_full_precision():
    x = 0.1 + 0.2
    p = dsl.parse(f"point A = ({x!r}, -1e-300)")
    again = dsl.parse(dsl.format(p))
    assert again.steps[0].params["x"] == x
    assert again.steps[0].params["y"] == -1e-300


@pytest.mark.parametrize("name", preset_names())
def test_presets_round_trip(name):
    p = load_preset(name)
    assert dsl.parse(dsl.format(p)) == p


def test_gothic_script_round_trip():
    p = dsl.parse(PRESETS["gothic-unit"])
    assert dsl.parse(dsl.format(p)) == p


def test_generated_programs_round_trip():
    rng = random.Random(3)
    for _ in range(100):
        p = random_program(rng)
        assert dsl.parse(dsl.format(p)) == p


@settings(max_examples=60)
@given(st.integers(0, 2 ** 32), st.integers(1, 25))
def test_round_trip_property(seed, size):
    p = random_program(random.Random(seed), size)
    text = dsl.format(p)
    assert dsl.parse(text) == p
    assert dsl.format(dsl.parse(text)) == text


@settings(max_examples=200)
@given(st.text(alphabet="pointcirlea =(),:0123456789.-ABr#\n\t_", max_size=60))
def test_errors_always_located_in_source(text):
    try:
        dsl.parse(text)
    except ParseError as err:
        lines = text.split("\n")
        assert 1 <= err.line <= len(lines)
        assert 1 <= err.column <= len(lines[err.line - 1].rstrip("\r"))
    except ValidationError:
        pass


def test_unknown_preset():
    with pytest.raises(KeyError):
        load_preset("fig9z")
