"""Explicit configurations and the raise-dimension combinator.

Raising a base S that lies in the hyperplane H0 = {x1 = 0} adds m points on
the line through the base's origin o in direction e1.  A k-flat of the
result either avoids the new line (spanned by S or, for k = 1, the line
itself), contains exactly one new point q (then it is span(q, L) for an
(k-1)-flat L of S avoiding o), or contains the whole line (then it is the
span of the line and a (k-1)-flat through o spanned by S together with o).
The last family is what ``origin_term`` counts.  When o is a point of S, or
S is centrally symmetric about o, it coincides with the number of
(k-1)-flats of S through o; for a generic origin outside S it does not.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

from .config import Config
from .enumeration import SpannedFlats, enumerate_spanned, f_vector
from .errors import ConstructionError, RangeError
from .geometry import Point


def _zeros(d: int) -> list[int]:
    return [0] * d


def gen_skew_lines(points_per_line: int, lines: int, ambient: int) -> Config:
    """Points on pairwise skew lines in general position.

    Line 1 carries t*e1 and line j >= 2 carries e_{2j-2} + t*e_{2j-1}, for
    t = 1..points_per_line.  The lines jointly span a (2*lines - 1)-flat.
    """
    if lines < 2:
        raise RangeError("need at least two lines")
    if points_per_line < 2:
        raise RangeError("need at least two points per line")
    if ambient < 2 * lines - 1:
        raise RangeError(f"{lines} skew lines need ambient dimension >= {2 * lines - 1}")
    rows = []
    for j in range(1, lines + 1):
        for t in range(1, points_per_line + 1):
            v = _zeros(ambient)
            if j == 1:
                v[0] = t
            else:
                v[2 * j - 3] = 1
                v[2 * j - 2] = t
            rows.append(v)
    return Config.from_affine(rows, dim=ambient)


def gen_cube(k: int) -> Config:
    """Vertices (0, +-1, ..., +-1) of a k-cube in the hyperplane x1 = 0 of R^(k+1), centred origin."""
    if k < 1:
        raise RangeError("cube dimension must be >= 1")
    rows = [[0, *signs] for signs in itertools.product((1, -1), repeat=k)]
    return Config.from_affine(rows, origin=_zeros(k + 1), dim=k + 1)


def gen_crosspolytope_base(j: int) -> Config:
    """The 6j vertices +-e_i (i = 2..3j+1) of a cross-polytope in x1 = 0 of R^(3j+1)."""
    if j < 1:
        raise RangeError("j must be >= 1")
    d = 3 * j + 1
    rows = []
    for i in range(1, d):
        for s in (1, -1):
            v = _zeros(d)
            v[i] = s
            rows.append(v)
    return Config.from_affine(rows, origin=_zeros(d), dim=d)


def gen_collinear(n: int, ambient: int = 2) -> Config:
    if n < 1 or ambient < 1:
        raise RangeError("need n >= 1 and ambient >= 1")
    rows = []
    for t in range(n):
        v = _zeros(ambient)
        v[0] = t
        rows.append(v)
    return Config.from_affine(rows, dim=ambient)


def gen_near_pencil(n: int) -> Config:
    """n - 1 points on a line plus one apex off it, in the plane."""
    if n < 3:
        raise RangeError("a near-pencil needs n >= 3")
    rows = [[t, 0] for t in range(n - 1)] + [[0, 1]]
    return Config.from_affine(rows)


def gen_moment_curve(n: int, ambient: int) -> Config:
    """Points (t, t^2, ..., t^d), t = 1..n: any d+1 of them are independent."""
    if n < 1 or ambient < 1:
        raise RangeError("need n >= 1 and ambient >= 1")
    return Config.from_affine([[t**e for e in range(1, ambient + 1)] for t in range(1, n + 1)])


def gen_random(n: int, ambient: int, seed: int = 0, grid: int = 3) -> Config:
    """n distinct random points with rational coordinates in [-grid, grid]."""
    if ambient < 1:
        raise RangeError("ambient must be >= 1")
    rng = random.Random(seed)
    seen: set[Point] = set()
    rows = []
    denoms = (1, 1, 1, 2, 3)
    if n > (2 * grid + 1) ** ambient:
        raise RangeError("grid too small for that many points")
    while len(rows) < n:
        v = [Fraction(rng.randint(-grid * q, grid * q), q) for q in (rng.choice(denoms) for _ in range(ambient))]
        p = Point.affine(v)
        if p not in seen:
            seen.add(p)
            rows.append(v)
    return Config.from_affine(rows, dim=ambient)


def gen_on_flats(
    dims: Sequence[int], points_per_flat: int, ambient: int, seed: int = 0
) -> Config:
    """Random points sprinkled on a few random flats of the given dimensions.

    The essential dimension of the result is at most sum(dims).
    """
    rng = random.Random(seed)
    pts: dict[Point, list[Fraction]] = {}
    for fd in dims:
        if not 1 <= fd <= ambient:
            raise RangeError(f"flat dimension {fd} out of range")
        base = [Fraction(rng.randint(-3, 3)) for _ in range(ambient)]
        dirs = [[Fraction(rng.randint(-2, 2)) for _ in range(ambient)] for _ in range(fd)]
        tries = 0
        placed = 0
        while placed < points_per_flat and tries < 50 * points_per_flat:
            tries += 1
            coef = [Fraction(rng.randint(-3, 3), rng.choice((1, 2))) for _ in range(fd)]
            v = [b + sum(c * d[i] for c, d in zip(coef, dirs)) for i, b in enumerate(base)]
            p = Point.affine(v)
            if p not in pts:
                pts[p] = v
                placed += 1
    return Config.from_affine(list(pts.values()), dim=ambient)


# -- raising ------------------------------------------------------------------


@dataclass(frozen=True)
class RaiseSpec:
    """A base in x1 = 0 with a designated affine origin there, and m >= 2 axis points."""

    base: Config
    m: int

    def __post_init__(self):
        b = self.base
        if self.m < 2:
            raise ConstructionError("the axis needs m >= 2 points")
        if b.ambient < 1:
            raise ConstructionError("base must live in P^d with d >= 1")
        if b.origin is None:
            raise ConstructionError("base has no designated origin")
        if not b.origin.is_affine or b.origin.ivec[1] != 0:
            raise ConstructionError("origin must be an affine point with x1 = 0")
        for i, p in enumerate(b.points):
            if p.ivec[1] != 0:
                raise ConstructionError(f"base point {i} does not lie in the hyperplane x1 = 0")

    def axis_points(self) -> list[Point]:
        o = self.base.origin.affine_coords()
        return [Point.affine([o[0] + i, *o[1:]]) for i in range(1, self.m + 1)]


def embed_in_hyperplane(config: Config, origin: Sequence | Point | int | None = None) -> Config:
    """Insert a zero first affine coordinate, moving P^d into x1 = 0 of P^(d+1)."""

    def lift(p: Point) -> Point:
        v = p.ivec
        return Point.from_ivec((v[0], 0, *v[1:]))

    pts = tuple(lift(p) for p in config.points)
    if origin is None and config.origin is not None:
        o = lift(config.origin)
    elif isinstance(origin, int) and not isinstance(origin, bool):
        o = pts[origin]
    elif isinstance(origin, Point):
        o = origin
    elif origin is not None:
        o = Point.affine(origin)
    else:
        o = None
    return Config(pts, config.ambient + 1, o, config.weights)


def _origin_candidates(d: int):
    # moment-curve style points in x1 = 0 with small rational entries
    for den in itertools.count(2):
        for num in range(1, den):
            t = Fraction(num, den)
            yield [Fraction(0)] + [t**e + Fraction(e, 7) for e in range(1, d)]


def generic_origin(base: Config) -> Point:
    """A rational point of x1 = 0 lying on no proper spanned flat of ``base``.

    Flats equal to the whole hyperplane x1 = 0 are ignored, since every
    candidate lies on them.
    """
    d = base.ambient
    flats = enumerate_spanned(base) if base.n else None
    recs = [] if flats is None else flats.records(min_dim=0)
    recs = [r for r in recs if r.dim < d - 1]
    for coords in _origin_candidates(d):
        o = Point.affine(coords)
        if base.index(o) is not None:
            continue
        if not any(r.flat.contains(o) for r in recs):
            return o
    raise AssertionError("unreachable")


def with_generic_origin(base: Config) -> Config:
    return base.with_origin(generic_origin(base))


@dataclass(frozen=True)
class RaiseTerms:
    """The pieces of the predicted count of k-flats of S + L."""

    k: int
    m: int
    avoiding: int  # (k-1)-flats of S missing the origin
    origin_term: int  # (k-1)-flats through the origin spanned by S and the origin
    literal_origin_term: int  # (k-1)-flats of S through the origin
    base: int  # f_k(S)
    axis: int  # f_k(L)

    @property
    def predicted(self) -> int:
        return self.m * self.avoiding + self.origin_term + self.base + self.axis

    @property
    def literal(self) -> int:
        return self.m * self.avoiding + self.literal_origin_term + self.base + self.axis


def raise_terms(spec: RaiseSpec, base_flats: SpannedFlats | None = None) -> list[RaiseTerms]:
    """Prediction terms for every 0 < k < d, from the base's own counts."""
    base = spec.base
    d = base.ambient
    o = base.origin
    fb = f_vector(base, flats=base_flats)
    if base.index(o) is not None:
        with_o = fb
    else:
        ext = Config((*base.points, o), d, o)
        with_o = f_vector(ext)
    avoiding0 = sum(1 for p in base.points if p != o)
    out = []
    for k in range(1, d):
        if k == 1:
            avoid, through, literal = avoiding0, 0, 0
        else:
            avoid = fb.avoiding_origin(k - 1)
            through = with_o.through_origin(k - 1)
            literal = fb.through_origin(k - 1)
        out.append(
            RaiseTerms(
                k=k,
                m=spec.m,
                avoiding=avoid,
                origin_term=through,
                literal_origin_term=literal,
                base=fb.f(k),
                axis=1 if k == 1 else 0,
            )
        )
    return out


def raise_dimension(spec: RaiseSpec) -> tuple[Config, dict[int, int]]:
    """S + L and the predicted f_k for 0 < k < d."""
    base = spec.base
    pts = base.points + tuple(spec.axis_points())
    config = Config(pts, base.ambient, base.origin)
    predicted = {t.k: t.predicted for t in raise_terms(spec)}
    return config, predicted


def gen_hypercube_construction(k: int, m: int) -> Config:
    """The k-cube in x1 = 0 plus m axis points (n = 2^k + m), origin at 0."""
    if k < 2:
        raise RangeError("k must be >= 2")
    return raise_dimension(RaiseSpec(gen_cube(k), m))[0]


def gen_crosspolytope_construction(j: int, m: int) -> Config:
    """The 3j-dimensional cross-polytope plus m axis points (n = 6j + m)."""
    if j < 1:
        raise RangeError("j must be >= 1")
    return raise_dimension(RaiseSpec(gen_crosspolytope_base(j), m))[0]


def crosspolytope_avoiding_count(j: int, i: int) -> int:
    """i-flats of the 3j-cross-polytope missing its centre: 2^(i+1) C(3j, i+1)."""
    return 2 ** (i + 1) * comb(3 * j, i + 1)


@dataclass(frozen=True)
class Threshold:
    """Smallest m from which raising gives f_{k+1} < f_k for every larger m too."""

    k: int
    slope: int
    intercept: int
    m: int | None  # None when the inequality fails for all large m


def monotonicity_threshold(base: Config, k: int) -> Threshold:
    """Where f_{k+1}(S + L) - f_k(S + L), linear in m, turns negative for good."""
    d = base.ambient
    if not 1 <= k < d - 1:
        raise RangeError(f"need 1 <= k < {d - 1}")
    terms = {t.k: t for t in raise_terms(RaiseSpec(base, 2))}
    hi, lo = terms[k + 1], terms[k]
    slope = hi.avoiding - lo.avoiding
    intercept = (hi.origin_term + hi.base + hi.axis) - (lo.origin_term + lo.base + lo.axis)
    if slope > 0 or (slope == 0 and intercept >= 0):
        return Threshold(k, slope, intercept, None)
    if slope == 0:
        return Threshold(k, slope, intercept, 2)
    # slope*m + intercept < 0  <=>  m > intercept / -slope
    m = intercept // -slope + 1
    return Threshold(k, slope, intercept, max(2, m))


# -- registry for the command line --------------------------------------------


def _int(params: dict, key: str, default: int | None = None) -> int:
    if key not in params:
        if default is None:
            raise ValueError(f"missing parameter {key}=")
        return default
    try:
        return int(params[key])
    except ValueError:
        raise ValueError(f"parameter {key} must be an integer, got {params[key]!r}") from None


GENERATORS: dict[str, tuple[str, Callable[[dict], Config]]] = {
    "skew-lines": (
        "per_line= lines= ambient=",
        lambda p: gen_skew_lines(_int(p, "per_line"), _int(p, "lines", 2), _int(p, "ambient", 3)),
    ),
    "cube": ("k=", lambda p: gen_cube(_int(p, "k"))),
    "hypercube": ("k= m=", lambda p: gen_hypercube_construction(_int(p, "k"), _int(p, "m"))),
    "cross-polytope": ("j=", lambda p: gen_crosspolytope_base(_int(p, "j"))),
    "cross-polytope-raised": (
        "j= m=",
        lambda p: gen_crosspolytope_construction(_int(p, "j"), _int(p, "m")),
    ),
    "collinear": ("n= ambient=", lambda p: gen_collinear(_int(p, "n"), _int(p, "ambient", 2))),
    "near-pencil": ("n=", lambda p: gen_near_pencil(_int(p, "n"))),
    "moment-curve": ("n= ambient=", lambda p: gen_moment_curve(_int(p, "n"), _int(p, "ambient"))),
    "random": (
        "n= ambient= seed=",
        lambda p: gen_random(_int(p, "n"), _int(p, "ambient", 2), _int(p, "seed", 0)),
    ),
}


def generate(name: str, params: dict[str, str]) -> Config:
    try:
        _, fn = GENERATORS[name]
    except KeyError:
        raise ValueError(f"unknown generator {name!r}; choose from {', '.join(GENERATORS)}") from None
    return fn(params)
