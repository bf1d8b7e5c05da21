"""Essential dimension, the degeneracy sequence g_k and minimal covers.

Search space
------------
Covers are drawn from the spanned flats of dimension >= 1.  This loses
nothing: in any family of flats, replace each flat by the span of the
configuration points it is used to cover.  That span has no larger
dimension; a flat covering a single point becomes a line through that point
and any other configuration point, still spanned and still of dimension 1;
a flat covering nothing is dropped.  Coverage is kept, total dimension and
cardinality do not grow.  The only exception is a one-point configuration,
handled separately.

Algorithm
---------
``g_k`` is found by depth-first branch and bound over candidate flats sorted
by points per dimension.  At every node the gains of all remaining
candidates are recomputed against the covered set (a vectorised popcount)
and a child is explored only if its optimistic completion beats the
incumbent.  The optimistic completion is the smaller of a knapsack bound
over the best gain per dimension and remaining budget times the best
gain-per-dimension ratio among later candidates.

The witness is then chosen among families reaching ``g_k``: minimum
cardinality first, then the lexicographically smallest sorted list of
canonical bases.  A second depth-first search over candidates in canonical
order, with the number of flats fixed, finds it; the first hit is the
lexicographic minimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import lcm
from typing import Sequence

import numpy as np

from . import kernels
from .config import Config, project_config
from .enumeration import FlatRecord, SpannedFlats, enumerate_spanned, mask_indices
from .errors import PreconditionError, RangeError
from .geometry import Flat, coordinate_point, meet, span


@dataclass(frozen=True)
class CoverWitness:
    flats: tuple[Flat, ...]
    covered: tuple[int, ...]

    @property
    def total_dim(self) -> int:
        return sum(f.dim for f in self.flats)

    @property
    def cardinality(self) -> int:
        return len(self.flats)


@dataclass(frozen=True)
class GVector:
    """g_0..g_K together with a witness cover for each entry."""

    g: tuple[int, ...]
    witnesses: tuple[CoverWitness, ...]

    @property
    def K(self) -> int:
        return len(self.g) - 1

    @property
    def n(self) -> int:
        return self.g[-1]

    def at(self, i: int) -> int:
        """g_i, extended by n beyond the essential dimension."""
        if i < 0:
            raise RangeError("g_i is defined for i >= 0")
        return self.g[i] if i < len(self.g) else self.g[-1]


def _pack(masks: Sequence[int], words: int) -> np.ndarray:
    out = np.zeros((len(masks), max(words, 1)), dtype=np.uint64)
    lo = (1 << 64) - 1
    for r, m in enumerate(masks):
        w = 0
        while m:
            out[r, w] = m & lo
            m >>= 64
            w += 1
    return out


def _words_of(mask: int, words: int) -> np.ndarray:
    return _pack([mask], words)[0]


class CoverSearch:
    """Max-coverage searches over the spanned flats of one configuration."""

    def __init__(self, config: Config, flats: SpannedFlats | None = None):
        self.config = config
        self.n = config.n
        if flats is None:
            flats = enumerate_spanned(config)
        elif flats.k_max < config.ambient:
            flats = enumerate_spanned(config)
        recs = [r for r in flats.records(min_dim=1)]
        recs.sort(key=lambda r: r.flat.rows)
        self.records: list[FlatRecord] = recs
        self.words = max(1, -(-self.n // 64))
        self.scale = lcm(*range(1, config.ambient + 1)) if config.ambient else 1
        dims = np.array([r.dim for r in recs], dtype=np.int64)
        mult = np.array([r.multiplicity for r in recs], dtype=np.int64)
        packed = _pack([r.mask for r in recs], self.words)
        # canonical order: records are already sorted by basis
        self._canon = (packed, dims, np.arange(len(recs)))
        ratio_order = sorted(range(len(recs)), key=lambda i: (-mult[i] * self.scale // dims[i], i))
        ro = np.array(ratio_order, dtype=np.int64)
        self._ratio = (packed[ro] if len(recs) else packed, dims[ro], ro)
        self._cache: dict[int, tuple[int, tuple[int, ...]]] = {}

    # -- node evaluation ---------------------------------------------------

    def _scan(self, packed, dims, covered_words, budget, start):
        sub = packed[start:]
        g = kernels.coverage_gains(sub, covered_words)
        dsub = dims[start:]
        g = np.where(dsub <= budget, g, 0)
        return g, dsub

    def _per_dim_best(self, g, dsub, budget):
        best = [0] * (budget + 1)
        if g.size:
            for j in range(1, budget + 1):
                sel = g[dsub == j]
                if sel.size:
                    best[j] = int(sel.max())
        return best

    def _suffix_bounds(self, g, dsub):
        """Per position: best ratio and best gain among strictly later candidates."""
        ratio = (g * self.scale) // np.maximum(dsub, 1)
        nxt_ratio = np.zeros_like(ratio)
        nxt_gain = np.zeros_like(g)
        if g.size > 1:
            nxt_ratio[:-1] = np.maximum.accumulate(ratio[::-1])[::-1][1:]
            nxt_gain[:-1] = np.maximum.accumulate(g[::-1])[::-1][1:]
        return nxt_ratio, nxt_gain

    # -- phase 1: the value g_k -------------------------------------------

    def max_coverage(self, budget: int, incumbent: tuple[int, tuple[int, ...]] = (0, ())) -> tuple[int, tuple[int, ...]]:
        """Largest coverage with total dimension <= ``budget``.

        Returns (g, indices into ``records``) for one optimal family.
        """
        if budget in self._cache:
            return self._cache[budget]
        self._best = incumbent
        if budget > 0 and self.records and incumbent[0] < self.n:
            packed, dims, order = self._ratio
            self._dfs_value(packed, dims, order, 0, 0, budget, 0, ())
        result = (self._best[0], tuple(sorted(self._best[1])))
        self._cache[budget] = result
        return result

    def _dfs_value(self, packed, dims, order, covered, count, budget, start, chosen):
        cw = _words_of(covered, self.words)
        g, dsub = self._scan(packed, dims, cw, budget, start)
        if not g.size:
            return
        best_dim = self._per_dim_best(g, dsub, budget)
        knap = [0] * (budget + 1)
        for b in range(1, budget + 1):
            knap[b] = max(knap[b - j] + best_dim[j] for j in range(1, b + 1))
        nxt_ratio, _ = self._suffix_bounds(g, dsub)
        rem = budget - dsub
        knap_arr = np.array(knap, dtype=np.int64)[np.clip(rem, 0, budget)]
        bound = count + g + np.minimum(knap_arr, (np.maximum(rem, 0) * nxt_ratio) // self.scale)
        live = np.nonzero((g > 0) & (rem >= 0) & (bound > self._best[0]))[0]
        for pos in live:
            if bound[pos] <= self._best[0]:
                continue
            idx = start + int(pos)
            rec = int(order[idx])
            new_cov = covered | self.records[rec].mask
            new_count = count + int(g[pos])
            fam = chosen + (rec,)
            if new_count > self._best[0]:
                self._best = (new_count, fam)
                if new_count == self.n:
                    return
            if rem[pos] > 0:
                self._dfs_value(packed, dims, order, new_cov, new_count, int(rem[pos]), idx + 1, fam)
                if self._best[0] == self.n:
                    return

    # -- phase 2: the witness ---------------------------------------------

    def witness(self, budget: int, target: int) -> tuple[int, ...]:
        """Lexicographically first minimum-cardinality family covering ``target`` points."""
        if target == 0:
            return ()
        packed, dims, order = self._canon
        for slots in range(1, budget + 1):
            hit = self._dfs_witness(packed, dims, order, 0, 0, budget, slots, target, 0, ())
            if hit is not None:
                return hit
        raise RuntimeError(f"no family of total dimension <= {budget} covers {target} points")

    def _dfs_witness(self, packed, dims, order, covered, count, budget, slots, target, start, chosen):
        cw = _words_of(covered, self.words)
        g, dsub = self._scan(packed, dims, cw, budget, start)
        if not g.size:
            return None
        best_dim = self._per_dim_best(g, dsub, budget)
        # knap[s][b]: best total gain from at most s flats with total dimension <= b
        knap = [[0] * (budget + 1)]
        for s in range(1, slots):
            prev = knap[-1]
            row = [0] * (budget + 1)
            for b in range(1, budget + 1):
                row[b] = max([prev[b]] + [prev[b - j] + best_dim[j] for j in range(1, b + 1)])
            knap.append(row)
        nxt_ratio, nxt_gain = self._suffix_bounds(g, dsub)
        rem = budget - dsub
        krow = np.array(knap[slots - 1], dtype=np.int64)[np.clip(rem, 0, budget)]
        extra = np.minimum(krow, (np.maximum(rem, 0) * nxt_ratio) // self.scale)
        extra = np.minimum(extra, (slots - 1) * nxt_gain)
        bound = count + g + extra
        live = np.nonzero((g > 0) & (rem >= 0) & (bound >= target))[0]
        for pos in live:
            idx = start + int(pos)
            rec = int(order[idx])
            new_count = count + int(g[pos])
            fam = chosen + (rec,)
            if new_count >= target:
                return fam
            if slots > 1 and rem[pos] > 0:
                hit = self._dfs_witness(
                    packed, dims, order, covered | self.records[rec].mask, new_count,
                    int(rem[pos]), slots - 1, target, idx + 1, fam,
                )
                if hit is not None:
                    return hit
        return None

    def cover(self, indices: Sequence[int]) -> CoverWitness:
        recs = [self.records[i] for i in sorted(indices)]
        mask = 0
        for r in recs:
            mask |= r.mask
        return CoverWitness(tuple(r.flat for r in recs), mask_indices(mask))


def _single_point_line(p) -> Flat:
    for j in range(p.ambient + 1):
        q = coordinate_point(p.ambient, j)
        if q != p:
            return span([p, q])
    raise PreconditionError("no line exists in P^0")


def g_vector(config: Config, flats: SpannedFlats | None = None) -> GVector:
    """Exact g_0..g_K with deterministic witnesses."""
    n = config.n
    empty = CoverWitness((), ())
    if n == 0:
        return GVector((0,), (empty,))
    if n == 1:
        if config.ambient == 0:
            raise PreconditionError("a point of P^0 cannot be covered by flats of dimension >= 1")
        line = _single_point_line(config.points[0])
        return GVector((0, 1), (empty, CoverWitness((line,), (0,))))
    search = CoverSearch(config, flats)
    g = [0]
    witnesses = [empty]
    incumbent: tuple[int, tuple[int, ...]] = (0, ())
    k = 0
    while g[-1] < n:
        k += 1
        if k > config.ambient:
            raise AssertionError("cover search failed to reach every point")
        incumbent = search.max_coverage(k, incumbent)
        g.append(incumbent[0])
        witnesses.append(search.cover(search.witness(k, incumbent[0])))
    return GVector(tuple(g), tuple(witnesses))


def essential_dimension(config: Config, flats: SpannedFlats | None = None) -> tuple[int, CoverWitness]:
    """K(P) with a minimum-cardinality cover of total dimension K."""
    gv = g_vector(config, flats)
    return gv.K, gv.witnesses[-1]


def minimality_excess(witness: CoverWitness, probe: Flat) -> int:
    """Largest sum of dim(G & probe) over subfamilies of size >= 2, minus dim(probe)."""
    vals = sorted((meet(f, probe).dim for f in witness.flats), reverse=True)
    if len(vals) < 2:
        return -1  # vacuous: nothing to violate
    best = vals[0] + vals[1] + sum(v for v in vals[2:] if v > 0)
    return best - probe.dim


def check_G_minimality(config: Config, witness: CoverWitness, probe: Flat) -> bool:
    """True iff every subfamily A with |A| >= 2 meets ``probe`` in total dimension < dim(probe).

    The maximum over subfamilies is the two largest intersection dimensions
    plus every further positive one, so one sort replaces the subset loop.
    """
    return minimality_excess(witness, probe) < 0


def check_G_minimality_bruteforce(witness: CoverWitness, probe: Flat) -> bool:
    dims = [meet(f, probe).dim for f in witness.flats]
    for size in range(2, len(dims) + 1):
        for sub in combinations(dims, size):
            if sum(sub) >= probe.dim:
                return False
    return True


@dataclass(frozen=True)
class DegeneracyReport:
    """Both sides of the projection-degeneracy inequalities for one (k, p)."""

    k: int
    point: int
    covered: tuple[int, ...]
    image_size: int
    size_bound: int  # |A| - k^2
    g_image: tuple[int, ...]  # g_i of the projected set, i < k
    g_bound: tuple[int, ...]  # g_i(A) + k^2, i < k

    @property
    def ok(self) -> bool:
        return self.image_size >= self.size_bound and all(
            a <= b for a, b in zip(self.g_image, self.g_bound)
        )


def projection_degeneracy_check(
    config: Config, k: int, p: int, gvec: GVector | None = None
) -> DegeneracyReport:
    """Project the points covered by G_k from a point p outside them.

    Compares g_i of the image against g_i(A) + k^2 for 0 <= i < k, and the
    image size against |A| - k^2.
    """
    if gvec is None:
        gvec = g_vector(config)
    if not 0 <= k < gvec.K:
        raise PreconditionError(f"need 0 <= k < K = {gvec.K}, got k = {k}")
    A = gvec.witnesses[k].covered
    if p in A:
        raise PreconditionError(f"point {p} lies on a flat of G_{k}")
    sub = config.subset(A)
    image, _ = project_config(sub, span([config.points[p]]))
    sq = k * k
    if k == 0:
        g_sub = g_img = GVector((0,), (CoverWitness((), ()),))
    else:
        g_sub = g_vector(sub)
        g_img = g_vector(image.with_weights(None))
    return DegeneracyReport(
        k=k,
        point=p,
        covered=A,
        image_size=image.n,
        size_bound=len(A) - sq,
        g_image=tuple(g_img.at(i) for i in range(k)),
        g_bound=tuple(g_sub.at(i) + sq for i in range(k)),
    )
