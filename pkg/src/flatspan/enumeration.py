"""Enumeration of the flats spanned by a configuration, rank by rank.

The k-flats through a spanned flat G correspond to the points of the
projection of the configuration from G, so one pass of residual computations
per flat yields every spanned flat of the next rank that contains it.  Every
spanned (k+1)-flat contains a spanned k-flat, hence the frontier reaches them
all.  Spanned flats are identified by their incident point sets (a spanned
flat is the span of its incident points), which makes deduplication a set
lookup on bitmasks; each surviving flat is then given its canonical basis.
"""

from __future__ import annotations

import os
from collections.abc import Mapping
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .config import Config, project_config
from .errors import RangeError
from .geometry import Flat, echelon_insert, span
from .kernels import make_residual_kernel


def worker_count() -> int:
    """Worker threads for frontier expansion (``FLATSPAN_THREADS``, default 1)."""
    raw = os.environ.get("FLATSPAN_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def mask_indices(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True)
class FlatRecord:
    """A spanned flat and the sorted indices of the configuration points on it."""

    flat: Flat
    incident: tuple[int, ...]
    mask: int = field(default=0, compare=False, repr=False)

    @property
    def dim(self) -> int:
        return self.flat.dim

    @property
    def multiplicity(self) -> int:
        return len(self.incident)


class SpannedFlats(Mapping):
    """Spanned flats of a configuration keyed by dimension -1..k_max.

    Levels above the ambient dimension are empty; levels between ``k_max``
    and the ambient dimension were not computed and raise ``KeyError``.
    """

    def __init__(self, config: Config, levels: dict[int, tuple[FlatRecord, ...]], k_max: int):
        self.config = config
        self.k_max = k_max
        self._levels = levels

    def __getitem__(self, k: int) -> tuple[FlatRecord, ...]:
        if k < -1 or k > self.config.ambient:
            return ()
        if k > self.k_max:
            raise KeyError(f"flats of dimension {k} were not enumerated (k_max={self.k_max})")
        return self._levels[k]

    def __iter__(self) -> Iterator[int]:
        return iter(range(-1, self.k_max + 1))

    def __len__(self) -> int:
        return self.k_max + 2

    def count(self, k: int) -> int:
        return len(self[k])

    def records(self, min_dim: int = -1) -> list[FlatRecord]:
        return [r for k in range(max(min_dim, -1), self.k_max + 1) for r in self._levels[k]]

    def containing(self, k: int, i: int) -> list[FlatRecord]:
        bit = 1 << i
        return [r for r in self[k] if r.mask & bit]


def _expand_chunk(kernel, chunk):
    out = []
    for pos, rec in chunk:
        groups = kernel.classes(rec.flat.rows, rec.flat.pivots, rec.incident)
        for key, gm in groups.items():
            out.append((pos, key, gm))
    return out


def enumerate_spanned(config: Config, k_max: int | None = None) -> SpannedFlats:
    """All flats of dimension <= ``k_max`` spanned by ``config``.

    Each level is sorted by canonical basis, so the output does not depend on
    the worker count.
    """
    d = config.ambient
    if k_max is None:
        k_max = d
    if not 0 <= k_max <= d:
        raise RangeError(f"k_max must lie in [0, {d}], got {k_max}")
    n = config.n
    levels: dict[int, tuple[FlatRecord, ...]] = {-1: (FlatRecord(Flat.empty(d), (), 0),)}
    level0 = [FlatRecord(span([p]), (i,), 1 << i) for i, p in enumerate(config.points)]
    level0.sort(key=lambda r: r.flat.rows)
    levels[0] = tuple(level0)
    if k_max == 0:
        return SpannedFlats(config, levels, k_max)

    kernel = make_residual_kernel([p.ivec for p in config.points])
    workers = worker_count()
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    full = (1 << n) - 1
    try:
        for k in range(0, k_max):
            frontier = [(pos, r) for pos, r in enumerate(levels[k]) if r.mask != full]
            if pool is None:
                found = _expand_chunk(kernel, frontier)
            else:
                size = -(-len(frontier) // workers) if frontier else 1
                chunks = [frontier[i : i + size] for i in range(0, len(frontier), size)]
                found = [t for part in pool.map(lambda c: _expand_chunk(kernel, c), chunks) for t in part]
            parents = levels[k]
            new: dict[int, tuple[int, tuple[int, ...]]] = {}
            for pos, key, gm in found:
                m = parents[pos].mask | gm
                if m not in new:
                    new[m] = (pos, key)
            recs = []
            for m, (pos, key) in new.items():
                parent = parents[pos].flat
                rows, piv = echelon_insert(parent.rows, parent.pivots, key)
                recs.append(FlatRecord(Flat(d, rows, piv), mask_indices(m), m))
            recs.sort(key=lambda r: r.flat.rows)
            levels[k + 1] = tuple(recs)
    finally:
        if pool is not None:
            pool.shutdown()
    return SpannedFlats(config, levels, k_max)


@dataclass(frozen=True)
class FVector:
    """Counts f_k for k = -1..k_max with multiplicity histograms.

    ``origin_split[k + 1]`` is (flats through the origin, flats avoiding it),
    with the point level reported as (0, n) by convention.
    """

    ambient: int
    counts: tuple[int, ...]
    histograms: tuple[dict[int, int], ...]
    origin_split: tuple[tuple[int, int], ...] | None = None

    @property
    def k_max(self) -> int:
        return len(self.counts) - 2

    def f(self, k: int) -> int:
        if k < -1 or k > self.ambient:
            return 0
        if k > self.k_max:
            raise KeyError(f"f_{k} not computed (k_max={self.k_max})")
        return self.counts[k + 1]

    __getitem__ = f

    @property
    def by_dim(self) -> dict[int, int]:
        return {k: self.counts[k + 1] for k in range(-1, self.k_max + 1)}

    def exactly(self, k: int, c: int) -> int:
        return self.histograms[k + 1].get(c, 0)

    def at_least(self, k: int, c: int) -> int:
        return sum(v for m, v in self.histograms[k + 1].items() if m >= c)

    def at_most(self, k: int, c: int) -> int:
        return sum(v for m, v in self.histograms[k + 1].items() if m <= c)

    def through_origin(self, k: int) -> int:
        if self.origin_split is None:
            raise ValueError("configuration has no designated origin")
        return self.origin_split[k + 1][0]

    def avoiding_origin(self, k: int) -> int:
        if self.origin_split is None:
            raise ValueError("configuration has no designated origin")
        return self.origin_split[k + 1][1]

    def rich_lines(self) -> dict[int, int]:
        """Lines with at least t points, for every t from 2 to the largest line."""
        if self.k_max < 1 or not self.histograms[2]:
            return {}
        top = max(self.histograms[2])
        return {t: self.at_least(1, t) for t in range(2, top + 1)}


def f_vector(config: Config, k_max: int | None = None, flats: SpannedFlats | None = None) -> FVector:
    if flats is None:
        flats = enumerate_spanned(config, k_max)
    counts, hists, split = [], [], []
    origin = config.origin
    for k in range(-1, flats.k_max + 1):
        recs = flats[k]
        counts.append(len(recs))
        h: dict[int, int] = {}
        for r in recs:
            h[r.multiplicity] = h.get(r.multiplicity, 0) + 1
        hists.append(dict(sorted(h.items())))
        if origin is not None:
            if k <= 0:
                split.append((0, len(recs)))
            else:
                through = sum(1 for r in recs if r.flat.contains(origin))
                split.append((through, len(recs) - through))
    return FVector(
        config.ambient,
        tuple(counts),
        tuple(hists),
        tuple(split) if origin is not None else None,
    )


def incidences(config: Config, flats: Sequence[FlatRecord]) -> int:
    """Number of (point, flat) incidences between ``config`` and ``flats``."""
    return sum(r.multiplicity for r in flats)


@dataclass(frozen=True)
class WeightFunction:
    """A positive, non-increasing, rational-valued function of a weight."""

    name: str
    fn: Callable[[Fraction], Fraction] = field(compare=False)

    def __call__(self, w: Fraction) -> Fraction:
        return self.fn(w)


def weight_function(name: str) -> WeightFunction:
    """Built-ins: ``one``, ``reciprocal`` and ``step:<t>`` (2 up to t, then 1)."""
    if name == "one":
        return WeightFunction(name, lambda w: Fraction(1))
    if name == "reciprocal":
        return WeightFunction(name, lambda w: 1 / Fraction(w))
    if name.startswith("step:"):
        try:
            t = Fraction(name[5:])
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"bad threshold in {name!r}") from None
        return WeightFunction(name, lambda w: Fraction(2) if w <= t else Fraction(1))
    raise ValueError(f"unknown weight function {name!r}; use one, reciprocal or step:<t>")


BUILTIN_FUNCTIONS = ("one", "reciprocal", "step:2")


def flat_weight(config: Config, rec: FlatRecord) -> Fraction:
    return sum((config.weight(i) for i in rec.incident), Fraction(0))


def weighted_sum(
    config: Config, k: int, F: WeightFunction, flats: SpannedFlats | None = None
) -> Fraction:
    """Sum of F(W(L)) over the spanned k-flats L."""
    if k > config.ambient or k < -1:
        return Fraction(0)
    if flats is None or flats.k_max < k:
        flats = enumerate_spanned(config, max(k, 0))
    return sum((F(flat_weight(config, r)) for r in flats[k]), Fraction(0))


def weighted_sum_via_projection(config: Config, k: int, F: WeightFunction) -> Fraction:
    """The same sum regrouped by projecting from each point p.

    k-flats through p correspond to (k-1)-flats spanned by the projection
    from p, whose points carry the summed weights of their fibres.
    """
    if k < 1:
        raise RangeError("the projected form needs k >= 1")
    total = Fraction(0)
    if config.ambient == 0:
        return total
    for i, p in enumerate(config.points):
        proj, _ = project_config(config, span([p]))
        if k - 1 > proj.ambient:
            continue
        wp = config.weight(i)
        pf = enumerate_spanned(proj, k - 1)
        for rec in pf[k - 1]:
            w = flat_weight(proj, rec) + wp
            total += wp * F(w) / w
    return total
