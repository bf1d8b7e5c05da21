from __future__ import annotations

import json
from fractions import Fraction

import pytest

from flatspan.config import Config, project_config
from flatspan.constructions import gen_hypercube_construction, gen_skew_lines
from flatspan.errors import ConfigParseError, DimensionMismatchError, DuplicatePointError, RangeError
from flatspan.geometry import Point, span
from flatspan.io import dumps, load_config, loads, save_config


def test_duplicate_points_rejected():
    with pytest.raises(DuplicatePointError):
        Config.from_affine([[1, 2], [Fraction(2, 2), 2]])
    with pytest.raises(DuplicatePointError):
        Config.from_projective([[1, 2, 3], [2, 4, 6]])


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        Config.from_affine([[1, 2], [1, 2, 3]])


def test_weights_must_be_at_least_one():
    with pytest.raises(ValueError):
        Config.from_affine([[0, 0], [1, 0]], weights=[1, Fraction(1, 2)])


def test_origin_by_index_and_by_coordinates(square):
    assert square.origin == Point.affine([0, 0])
    assert square.origin_index is None
    c = square.with_origin(2)
    assert c.origin_index == 2
    with pytest.raises(RangeError):
        square.with_origin(9)


def test_project_config_merges_fibres():
    c = Config.from_affine([[0, 0], [1, 0], [2, 0], [0, 1]], weights=[1, 2, 3, 1])
    img, fibres = project_config(c, span([c.points[3]]))
    # points 0..2 project to distinct points; the centre itself vanishes
    assert img.n == 3 and img.ambient == 1
    c2 = Config.from_affine([[1, 0], [2, 0], [0, 1]], weights=[2, 3, 1])
    img, fibres = project_config(c2, span([Point.affine([0, 0])]))
    assert img.n == 2
    assert sorted(fibres) == [(0, 1), (2,)]
    assert sorted(img.weights) == [1, 5]


TEXT = """# unit square
affine 2
origin-point 0 0
1 1
1 -1
-1 1   # trailing comment
-1 -1
"""


def test_parse_text_square(square):
    c = loads(TEXT)
    assert c == square


def test_text_roundtrip_with_weights_and_origin_index():
    c = Config.from_affine([[0, 0], [1, 0], [0, 3]], origin=1, weights=[1, Fraction(5, 2), 2])
    again = loads(dumps(c))
    assert again == c
    assert loads(dumps(c, "json")) == c


def test_projective_roundtrip_with_points_at_infinity():
    c = Config.from_projective([[1, 0, 0], [0, 1, 0], [0, 1, 1], [1, 1, 1]])
    text = dumps(c)
    assert text.startswith("projective 2")
    assert loads(text) == c


def test_file_io(tmp_path):
    c = gen_hypercube_construction(2, 4)
    for name in ("c.txt", "c.json"):
        p = tmp_path / name
        save_config(c, p)
        assert load_config(p) == c
    data = json.loads((tmp_path / "c.json").read_text())
    assert data["mode"] == "affine" and data["dim"] == 3


@pytest.mark.parametrize(
    "text, line",
    [
        ("affine 2\n1 1/0\n", 2),
        ("affine 2\n1 0.5\n", 2),
        ("affine 2\n1 2\n1 2 3\n", 3),
        ("affine 2\n1 2\n\n1 2\n", 4),
        ("1 2\naffine 2\n", 1),
        ("affine 2\nfoo 1\n", 2),
        ("affine 2\norigin 5\n1 1\n", 2),
        ("affine 2\nweight 0 1/2\n1 1\n", 2),
        ("affine 2\naffine 3\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises((ConfigParseError, DuplicatePointError, DimensionMismatchError)) as exc:
        loads(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_missing_header():
    with pytest.raises(ConfigParseError):
        loads("# nothing\n")


def test_json_rejects_floats():
    with pytest.raises(ConfigParseError):
        loads('{"mode": "affine", "dim": 1, "points": [[0.5]]}')


def test_json_origin_index():
    c = loads('{"mode": "affine", "dim": 1, "origin": 1, "points": [["1/2"], [3]]}')
    assert c.origin_index == 1


def test_skew_lines_file_roundtrip(tmp_path):
    c = gen_skew_lines(3, 3, 5)
    p = tmp_path / "s.txt"
    save_config(c, p)
    assert load_config(str(p)) == c
