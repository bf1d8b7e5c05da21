"""Reading and writing configuration files (plain text and JSON).

Text format::

    # comment
    affine 2            (or: projective d)
    origin 0            (index of a listed point)
    origin-point 1/2 0  (or: a point not in the list, same mode as the rows)
    weight 3 5/2
    1 1
    1 -1

Directives may appear anywhere; point rows are numbered in order.
"""

from __future__ import annotations

import io
import json
from fractions import Fraction
from pathlib import Path
from typing import IO, Union

from .config import Config
from .errors import ConfigParseError, DimensionMismatchError, DuplicatePointError, FlatspanError
from .geometry import Point

Source = Union[str, Path, IO[str]]


def _rational(tok: str, lineno: int | None) -> Fraction:
    try:
        if "." in tok or "e" in tok.lower():
            raise ValueError
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ConfigParseError(f"not an exact rational: {tok!r}", line=lineno) from None


def _index(tok: str, lineno: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise ConfigParseError(f"bad index {tok!r}", line=lineno) from None
    if v < 0:
        raise ConfigParseError(f"negative index {v}", line=lineno)
    return v


def parse_text(text: str) -> Config:
    mode = dim = None
    header_line = 0
    rows: list[tuple[int, list[Fraction]]] = []
    origin_idx: tuple[int, int] | None = None
    origin_pt: tuple[int, list[Fraction]] | None = None
    weights: dict[int, tuple[int, Fraction]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        head = toks[0].lower()
        if head in ("affine", "projective"):
            if mode is not None:
                raise ConfigParseError(f"second header (first on line {header_line})", line=lineno)
            if len(toks) != 2:
                raise ConfigParseError("header needs exactly one dimension", line=lineno)
            mode, dim, header_line = head, _index(toks[1], lineno), lineno
        elif head == "origin":
            if len(toks) != 2:
                raise ConfigParseError("'origin' takes one point index", line=lineno)
            if origin_idx or origin_pt:
                raise ConfigParseError("origin given twice", line=lineno)
            origin_idx = (lineno, _index(toks[1], lineno))
        elif head == "origin-point":
            if origin_idx or origin_pt:
                raise ConfigParseError("origin given twice", line=lineno)
            origin_pt = (lineno, [_rational(t, lineno) for t in toks[1:]])
        elif head == "weight":
            if len(toks) != 3:
                raise ConfigParseError("'weight' takes an index and a rational", line=lineno)
            i = _index(toks[1], lineno)
            if i in weights:
                raise ConfigParseError(f"weight of point {i} given twice", line=lineno)
            weights[i] = (lineno, _rational(toks[2], lineno))
        elif head[0].isalpha():
            raise ConfigParseError(f"unknown directive {toks[0]!r}", line=lineno)
        else:
            if mode is None:
                raise ConfigParseError("point before the 'affine'/'projective' header", line=lineno)
            rows.append((lineno, [_rational(t, lineno) for t in toks]))
    if mode is None:
        raise ConfigParseError("missing 'affine d' or 'projective d' header", line=None)
    width = dim if mode == "affine" else dim + 1
    points: list[Point] = []
    seen: dict[Point, int] = {}
    for lineno, coords in rows:
        if len(coords) != width:
            raise DimensionMismatchError(
                f"{len(coords)} coordinates, expected {width}", line=lineno
            )
        try:
            p = Point.affine(coords) if mode == "affine" else Point(coords)
        except ValueError as exc:
            raise ConfigParseError(f"{exc}", line=lineno) from None
        if p in seen:
            raise DuplicatePointError(
                f"duplicates the point on line {rows[seen[p]][0]}", line=lineno
            )
        seen[p] = len(points)
        points.append(p)
    origin = None
    if origin_idx is not None:
        lineno, i = origin_idx
        if i >= len(points):
            raise ConfigParseError(f"origin index {i} but only {len(points)} points", line=lineno)
        origin = points[i]
    elif origin_pt is not None:
        lineno, coords = origin_pt
        if len(coords) != width:
            raise DimensionMismatchError(f"origin has {len(coords)} coordinates, expected {width}", line=lineno)
        try:
            origin = Point.affine(coords) if mode == "affine" else Point(coords)
        except ValueError as exc:
            raise ConfigParseError(f"{exc}", line=lineno) from None
    w = None
    if weights:
        w = [Fraction(1)] * len(points)
        for i, (lineno, x) in weights.items():
            if i >= len(points):
                raise ConfigParseError(f"weight for point {i} but only {len(points)} points", line=lineno)
            if x < 1:
                raise ConfigParseError(f"weight {x} is below 1", line=lineno)
            w[i] = x
    return Config(tuple(points), dim, origin, None if w is None else tuple(w))


def parse_json(text: str) -> Config:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(data, dict):
        raise ConfigParseError("JSON config must be an object")
    mode = data.get("mode")
    if mode not in ("affine", "projective"):
        raise ConfigParseError("'mode' must be 'affine' or 'projective'")
    dim = data.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise ConfigParseError("'dim' must be a non-negative integer")

    def rat(x) -> Fraction:
        if isinstance(x, bool) or isinstance(x, float):
            raise ConfigParseError(f"not an exact rational: {x!r} (write floats as strings like '3/2')")
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return _rational(x, None)
        raise ConfigParseError(f"not a rational: {x!r}")

    rows = data.get("points", [])
    if not isinstance(rows, list):
        raise ConfigParseError("'points' must be a list")
    rows = [[rat(x) for x in r] for r in rows]
    origin = data.get("origin")
    if isinstance(origin, list):
        origin = [rat(x) for x in origin]
    elif origin is not None and (not isinstance(origin, int) or isinstance(origin, bool)):
        raise ConfigParseError("'origin' must be an index, a coordinate list or null")
    weights = data.get("weights")
    if weights is not None:
        if not isinstance(weights, list) or len(weights) != len(rows):
            raise ConfigParseError("'weights' must list one rational per point")
        weights = [rat(x) for x in weights]
    try:
        if mode == "affine":
            return Config.from_affine(rows, origin=origin, weights=weights, dim=dim)
        return Config.from_projective(rows, origin=origin, weights=weights, dim=dim)
    except FlatspanError:
        raise
    except ValueError as exc:
        raise ConfigParseError(str(exc)) from None


def loads(text: str) -> Config:
    """Parse either format; JSON is recognised by a leading '{'."""
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_text(text)


def load_config(source: Source) -> Config:
    if isinstance(source, (str, Path)):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source.read()
    return loads(text)


def _fmt(x: Fraction) -> str:
    return str(x)


def dumps(config: Config, fmt: str = "text") -> str:
    """Serialise ``config``; affine mode is used when every point is affine."""
    affine = all(p.is_affine for p in config.points) and (config.origin is None or config.origin.is_affine)
    mode = "affine" if affine else "projective"

    def coords(p: Point) -> list[Fraction]:
        return list(p.affine_coords()) if affine else list(p.coords)

    oi = config.origin_index
    if fmt == "json":
        data = {
            "mode": mode,
            "dim": config.ambient,
            "origin": oi if oi is not None else (None if config.origin is None else [_fmt(x) for x in coords(config.origin)]),
            "weights": None if config.weights is None else [_fmt(w) for w in config.weights],
            "points": [[_fmt(x) for x in coords(p)] for p in config.points],
        }
        return json.dumps(data, indent=1) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    out = io.StringIO()
    out.write(f"{mode} {config.ambient}\n")
    if oi is not None:
        out.write(f"origin {oi}\n")
    elif config.origin is not None:
        out.write("origin-point " + " ".join(_fmt(x) for x in coords(config.origin)) + "\n")
    if config.weights is not None:
        for i, w in enumerate(config.weights):
            if w != 1:
                out.write(f"weight {i} {_fmt(w)}\n")
    for p in config.points:
        out.write(" ".join(_fmt(x) for x in coords(p)) + "\n")
    return out.getvalue()


def save_config(config: Config, path: str | Path, fmt: str | None = None) -> None:
    path = Path(path)
    if fmt is None:
        fmt = "json" if path.suffix == ".json" else "text"
    path.write_text(dumps(config, fmt), encoding="utf-8")
