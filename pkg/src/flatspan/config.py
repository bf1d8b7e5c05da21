"""Point configurations: ordered, duplicate-free point sets with optional
origin and weights."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatchError, DuplicatePointError, RangeError
from .geometry import Flat, Point, RationalLike, as_rational, project, projection_image, span

ONE = Fraction(1)


@dataclass(frozen=True)
class Config:
    """A finite point set in P^d.

    ``origin`` is either one of the points or a distinguished point outside
    the list; ``weights`` (all >= 1) default to 1 when absent.
    """

    points: tuple[Point, ...]
    ambient: int
    origin: Point | None = None
    weights: tuple[Fraction, ...] | None = None
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if self.ambient < 0:
            raise RangeError("ambient dimension must be non-negative")
        index: dict[Point, int] = {}
        for i, p in enumerate(pts):
            if p.ambient != self.ambient:
                raise DimensionMismatchError(
                    f"point {i} lives in P^{p.ambient}, expected P^{self.ambient}"
                )
            if p in index:
                raise DuplicatePointError(f"point {i} duplicates point {index[p]}: {p!r}")
            index[p] = i
        object.__setattr__(self, "_index", index)
        if self.origin is not None and self.origin.ambient != self.ambient:
            raise DimensionMismatchError("origin has the wrong ambient dimension")
        if self.weights is not None:
            w = tuple(as_rational(x) for x in self.weights)
            if len(w) != len(pts):
                raise ValueError(f"{len(w)} weights given for {len(pts)} points")
            for i, x in enumerate(w):
                if x < 1:
                    raise ValueError(f"weight of point {i} is {x}, must be >= 1")
            object.__setattr__(self, "weights", w)

    @classmethod
    def from_affine(
        cls,
        rows: Iterable[Sequence[RationalLike]],
        origin: Sequence[RationalLike] | int | None = None,
        weights: Sequence[RationalLike] | None = None,
        dim: int | None = None,
    ) -> Config:
        rows = [list(r) for r in rows]
        if dim is None:
            if not rows:
                raise ValueError("dimension required for an empty configuration")
            dim = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != dim:
                raise DimensionMismatchError(f"row {i} has {len(r)} coordinates, expected {dim}")
        pts = tuple(Point.affine(r) for r in rows)
        return cls(pts, dim, _resolve_origin(origin, pts, affine=True), _weights(weights))

    @classmethod
    def from_projective(
        cls,
        rows: Iterable[Sequence[RationalLike]],
        origin: Sequence[RationalLike] | int | None = None,
        weights: Sequence[RationalLike] | None = None,
        dim: int | None = None,
    ) -> Config:
        rows = [list(r) for r in rows]
        if dim is None:
            if not rows:
                raise ValueError("dimension required for an empty configuration")
            dim = len(rows[0]) - 1
        pts = tuple(Point(r) for r in rows)
        return cls(pts, dim, _resolve_origin(origin, pts, affine=False), _weights(weights))

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def index(self, p: Point) -> int | None:
        return self._index.get(p)

    @property
    def origin_index(self) -> int | None:
        return None if self.origin is None else self._index.get(self.origin)

    def weight(self, i: int) -> Fraction:
        return ONE if self.weights is None else self.weights[i]

    @property
    def unit_weights(self) -> tuple[Fraction, ...]:
        return self.weights if self.weights is not None else (ONE,) * self.n

    def subset(self, indices: Iterable[int]) -> Config:
        idx = list(indices)
        w = None if self.weights is None else tuple(self.weights[i] for i in idx)
        return Config(tuple(self.points[i] for i in idx), self.ambient, self.origin, w)

    def with_origin(self, origin: Point | int | None) -> Config:
        if isinstance(origin, int):
            if not 0 <= origin < self.n:
                raise RangeError(f"origin index {origin} out of range for {self.n} points")
            origin = self.points[origin]
        return Config(self.points, self.ambient, origin, self.weights)

    def with_weights(self, weights: Sequence[RationalLike] | None) -> Config:
        return Config(self.points, self.ambient, self.origin, _weights(weights))

    def sorted(self) -> Config:
        """Canonical point order (lexicographic in canonical coordinates)."""
        order = sorted(range(self.n), key=lambda i: self.points[i].coords)
        return self.subset(order)

    def span(self) -> Flat:
        return span(self.points, self.ambient)


def _weights(weights):
    return None if weights is None else tuple(as_rational(x) for x in weights)


def _resolve_origin(origin, pts, affine: bool) -> Point | None:
    if origin is None:
        return None
    if isinstance(origin, Point):
        return origin
    if isinstance(origin, int) and not isinstance(origin, bool):
        if not 0 <= origin < len(pts):
            raise RangeError(f"origin index {origin} out of range for {len(pts)} points")
        return pts[origin]
    return Point.affine(origin) if affine else Point(origin)


def project_config(config: Config, center: Flat) -> tuple[Config, tuple[tuple[int, ...], ...]]:
    """Project every point off ``center``; coincident images merge.

    Returns the image configuration, whose weights are the summed weights of
    each fibre, and the fibres themselves (original indices per image point,
    in order of first appearance).
    """
    if center.ambient != config.ambient:
        raise DimensionMismatchError("projection center has the wrong ambient dimension")
    if not 0 <= center.dim < config.ambient:
        raise RangeError(f"projection center must have dimension in [0, {config.ambient - 1}]")
    target = config.ambient - center.dim - 1
    pos: dict[Point, int] = {}
    images: list[Point] = []
    fibres: list[list[int]] = []
    for i, p in enumerate(config.points):
        img = projection_image(center, p.ivec)
        if not any(img):
            continue
        q = Point.from_ivec(img)
        j = pos.get(q)
        if j is None:
            pos[q] = j = len(images)
            images.append(q)
            fibres.append([])
        fibres[j].append(i)
    weights = tuple(sum((config.weight(i) for i in f), Fraction(0)) for f in fibres)
    origin = None
    if config.origin is not None and not center.contains(config.origin):
        origin = project(center, config.origin)
    return Config(tuple(images), target, origin, weights), tuple(tuple(f) for f in fibres)
