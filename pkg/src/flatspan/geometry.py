"""Exact projective geometry over the rationals.

Points and flats of P^d are stored as primitive integer vectors.  A point is
the primitive representative of its homogeneous coordinates whose first
nonzero entry is positive; a flat is its reduced row-echelon basis with every
row scaled to a primitive integer vector (positive pivot).  Both forms are
unique, so equality and hashing are plain tuple comparisons.  The rational
views (first nonzero coordinate 1, RREF with unit pivots) are derived on
demand.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

from .errors import DimensionMismatchError, RangeError, UndefinedProjectionError

RationalLike = Union[int, Fraction, str]
IntVec = tuple[int, ...]


def as_rational(x: RationalLike) -> Fraction:
    """Convert ``x`` to a Fraction, refusing anything inexact."""
    if isinstance(x, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def primitive(v: Sequence[int]) -> IntVec:
    """Scale an integer vector to coprime entries with positive leading entry."""
    g = gcd(*v)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    for x in v:
        if x:
            if x < 0:
                g = -g
            break
    return tuple(x // g for x in v)


def integer_vector(coords: Iterable[RationalLike]) -> IntVec:
    fr = [as_rational(c) for c in coords]
    if not fr:
        raise ValueError("empty coordinate vector")
    scale = lcm(*(f.denominator for f in fr))
    return tuple(int(f * scale) for f in fr)


def reduce_vector(v: Sequence[int], rows: Sequence[IntVec], pivots: Sequence[int]) -> list[int]:
    """Eliminate the pivot columns of an echelon basis from ``v``.

    The result is a positive multiple of the rational residual, so it may be
    compared projectively but not additively.
    """
    out = list(v)
    for row, pc in zip(rows, pivots):
        b = out[pc]
        if b:
            a = row[pc]
            out = [a * x - b * y for x, y in zip(out, row)]
    return out


def echelon_insert(
    rows: Sequence[IntVec], pivots: Sequence[int], residual: Sequence[int]
) -> tuple[tuple[IntVec, ...], tuple[int, ...]]:
    """Add a reduced nonzero vector to a canonical echelon basis."""
    r = primitive(residual)
    pc = next(i for i, x in enumerate(r) if x)
    a = r[pc]
    new_rows = []
    for row in rows:
        b = row[pc]
        if b:
            row = primitive([a * x - b * y for x, y in zip(row, r)])
        new_rows.append(row)
    pos = 0
    while pos < len(pivots) and pivots[pos] < pc:
        pos += 1
    new_rows.insert(pos, r)
    new_piv = list(pivots)
    new_piv.insert(pos, pc)
    return tuple(new_rows), tuple(new_piv)


def echelon_basis(vectors: Iterable[Sequence[int]]) -> tuple[tuple[IntVec, ...], tuple[int, ...]]:
    rows: tuple[IntVec, ...] = ()
    pivots: tuple[int, ...] = ()
    for v in vectors:
        r = reduce_vector(v, rows, pivots)
        if any(r):
            rows, pivots = echelon_insert(rows, pivots, r)
    return rows, pivots


class Point:
    """A point of P^d; two points are equal iff they are projectively equal."""

    __slots__ = ("ivec",)

    def __init__(self, coords: Iterable[RationalLike]):
        v = integer_vector(coords)
        if not any(v):
            raise ValueError("homogeneous coordinates must not all vanish")
        object.__setattr__(self, "ivec", primitive(v))

    @classmethod
    def from_ivec(cls, ivec: Sequence[int]) -> Point:
        p = cls.__new__(cls)
        object.__setattr__(p, "ivec", primitive(ivec))
        return p

    @classmethod
    def affine(cls, coords: Iterable[RationalLike]) -> Point:
        """Lift an affine point by prepending the homogeneous coordinate 1."""
        return cls([1, *coords])

    def __setattr__(self, name, value):
        raise AttributeError("Point is immutable")

    @property
    def ambient(self) -> int:
        return len(self.ivec) - 1

    @property
    def coords(self) -> tuple[Fraction, ...]:
        lead = next(x for x in self.ivec if x)
        return tuple(Fraction(x, lead) for x in self.ivec)

    @property
    def is_affine(self) -> bool:
        return self.ivec[0] != 0

    def affine_coords(self) -> tuple[Fraction, ...]:
        if not self.ivec[0]:
            raise ValueError(f"{self!r} lies on the hyperplane at infinity")
        h = self.ivec[0]
        return tuple(Fraction(x, h) for x in self.ivec[1:])

    def __eq__(self, other):
        return isinstance(other, Point) and self.ivec == other.ivec

    def __hash__(self):
        return hash(("Point", self.ivec))

    def __lt__(self, other: Point) -> bool:
        return self.coords < other.coords

    def __repr__(self):
        return "Point(" + ", ".join(str(c) for c in self.coords) + ")"

    def __reduce__(self):
        return (Point.from_ivec, (self.ivec,))


class Flat:
    """A projective subspace of P^d held as a canonical echelon basis."""

    __slots__ = ("ambient", "rows", "pivots")

    def __init__(self, ambient: int, rows: Sequence[IntVec] = (), pivots: Sequence[int] | None = None):
        # trusted constructor: rows must already be canonical
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "rows", tuple(rows))
        if pivots is None:
            pivots = tuple(next(i for i, x in enumerate(r) if x) for r in self.rows)
        object.__setattr__(self, "pivots", tuple(pivots))

    def __setattr__(self, name, value):
        raise AttributeError("Flat is immutable")

    @classmethod
    def empty(cls, ambient: int) -> Flat:
        return cls(ambient, ())

    @classmethod
    def whole(cls, ambient: int) -> Flat:
        n = ambient + 1
        return cls(ambient, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.rows) - 1

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def key(self) -> tuple[IntVec, ...]:
        return self.rows

    @property
    def basis(self) -> tuple[tuple[Fraction, ...], ...]:
        """Reduced row-echelon basis with unit pivots."""
        return tuple(tuple(Fraction(x, r[p]) for x in r) for r, p in zip(self.rows, self.pivots))

    def residual(self, v: Sequence[int]) -> list[int]:
        return reduce_vector(v, self.rows, self.pivots)

    def contains(self, x: Point | Flat) -> bool:
        _check_ambient(self.ambient, x)
        if isinstance(x, Point):
            return not any(self.residual(x.ivec))
        return all(not any(self.residual(r)) for r in x.rows)

    __contains__ = contains

    def __eq__(self, other):
        return isinstance(other, Flat) and self.ambient == other.ambient and self.rows == other.rows

    def __hash__(self):
        return hash(("Flat", self.ambient, self.rows))

    def __lt__(self, other: Flat) -> bool:
        return self.rows < other.rows

    def __repr__(self):
        rows = "; ".join(" ".join(str(c) for c in r) for r in self.basis)
        return f"Flat(dim={self.dim}, [{rows}])"

    def __reduce__(self):
        return (Flat, (self.ambient, self.rows, self.pivots))


def _check_ambient(d: int, x) -> None:
    if x.ambient != d:
        raise DimensionMismatchError(f"ambient dimension {x.ambient} does not match {d}")


def _vectors(items: Iterable[Point | Flat]) -> Iterable[IntVec]:
    for x in items:
        if isinstance(x, Point):
            yield x.ivec
        elif isinstance(x, Flat):
            yield from x.rows
        else:
            raise TypeError(f"cannot span a {type(x).__name__}")


def span(items: Iterable[Point | Flat], ambient: int | None = None) -> Flat:
    """Smallest flat containing every point and flat in ``items``.

    ``ambient`` is required only to span the empty collection.
    """
    items = list(items)
    if ambient is None:
        if not items:
            raise ValueError("ambient dimension needed to span nothing")
        ambient = items[0].ambient
    for x in items:
        _check_ambient(ambient, x)
    rows, pivots = echelon_basis(_vectors(items))
    return Flat(ambient, rows, pivots)


def join(*items: Point | Flat) -> Flat:
    return span(items)


def meet(a: Flat, b: Flat) -> Flat:
    """Intersection of two flats (Zassenhaus sum-intersection)."""
    _check_ambient(a.ambient, b)
    n = a.ambient + 1
    zero = (0,) * n
    stacked = [r + r for r in a.rows] + [r + zero for r in b.rows]
    rows, pivots = echelon_basis(stacked)
    inter = [r[n:] for r, p in zip(rows, pivots) if p >= n]
    rows, pivots = echelon_basis(inter)
    return Flat(a.ambient, rows, pivots)


def _complement_columns(center: Flat) -> list[int]:
    piv = set(center.pivots)
    return [j for j in range(center.ambient + 1) if j not in piv]


def projection_image(center: Flat, v: Sequence[int]) -> list[int]:
    """Quotient coordinates of ``v`` modulo ``center`` (may be all zero)."""
    r = center.residual(v)
    return [r[j] for j in _complement_columns(center)]


def project(center: Flat, x: Point | Flat) -> Point | Flat:
    """Project from ``center`` onto the coordinate complement of its pivots.

    The image lives in P^(d - k - 1) for a k-dimensional center.
    """
    _check_ambient(center.ambient, x)
    if not 0 <= center.dim < center.ambient:
        raise RangeError(f"projection center must have dimension in [0, {center.ambient - 1}]")
    target = center.ambient - center.dim - 1
    if isinstance(x, Point):
        img = projection_image(center, x.ivec)
        if not any(img):
            raise UndefinedProjectionError(f"{x!r} lies on the projection center")
        return Point.from_ivec(img)
    images = [projection_image(center, r) for r in x.rows]
    images = [v for v in images if any(v)]
    if not images:
        raise UndefinedProjectionError("flat is contained in the projection center")
    rows, pivots = echelon_basis(images)
    return Flat(target, rows, pivots)


def dim_of_span(*items: Point | Flat) -> int:
    return span(items).dim


def coordinate_point(ambient: int, j: int) -> Point:
    return Point.from_ivec(tuple(int(i == j) for i in range(ambient + 1)))
