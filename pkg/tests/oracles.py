"""Brute-force reference implementations, independent of the package internals.

Only ``Config`` and ``Point`` are borrowed, for their coordinates.  Linear
algebra here is textbook Gaussian elimination over Fractions.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from flatspan.config import Config


def rref(vectors):
    """Reduced row-echelon form (unit pivots) of the row space, as a tuple of tuples."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return ()
    width = len(rows[0])
    out = []
    r = 0
    for c in range(width):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows[:r])


def rank(vectors) -> int:
    return len(rref(vectors))


def in_span(basis, v) -> bool:
    return rank(list(basis) + [v]) == len(basis)


def coords(config: Config):
    return [list(p.coords) for p in config.points]


def spanned_flats(config: Config) -> dict[int, dict[tuple, frozenset]]:
    """dim -> {rref basis: incident point set}, from every independent subset."""
    pts = coords(config)
    n, d = config.n, config.ambient
    out: dict[int, dict[tuple, frozenset]] = {-1: {(): frozenset()}}
    for size in range(1, min(n, d + 1) + 1):
        level = out.setdefault(size - 1, {})
        for sub in combinations(range(n), size):
            basis = rref([pts[i] for i in sub])
            if len(basis) != size or basis in level:
                continue
            level[basis] = frozenset(i for i in range(n) if in_span(basis, pts[i]))
    for k in range(-1, d + 1):
        out.setdefault(k, {})
    return out


def min_cover_tables(config: Config, max_budget: int):
    """card[mask][b]: fewest spanned flats (dim >= 1) of total dim <= b covering mask.

    Computed by dynamic programming over point subsets, branching on the
    flat that covers the lowest uncovered point.
    """
    n = config.n
    flats = spanned_flats(config)
    cands = [(k, sum(1 << i for i in inc)) for k in range(1, config.ambient + 1) for inc in flats[k].values()]
    INF = float("inf")
    full = 1 << n
    card = [[INF] * (max_budget + 1) for _ in range(full)]
    for b in range(max_budget + 1):
        card[0][b] = 0
    for mask in range(1, full):
        low = mask & -mask
        for dim, fm in cands:
            if not fm & low:
                continue
            rest = mask & ~fm
            for b in range(dim, max_budget + 1):
                c = card[rest][b - dim] + 1
                if c < card[mask][b]:
                    card[mask][b] = c
    return card


def g_and_cardinality(config: Config):
    """(g_0..g_K, minimum cardinality of a G_k family for each k)."""
    n = config.n
    if n == 0:
        return [0], [0]
    if n == 1:
        return [0, 1], [0, 1]  # a line through the point and any other point of space
    budget = max(config.ambient, 1)
    card = min_cover_tables(config, budget)
    g, cards = [], []
    for k in range(0, budget + 1):
        best = max(bin(m).count("1") for m in range(1 << n) if card[m][k] != float("inf"))
        g.append(best)
        cards.append(min(card[m][k] for m in range(1 << n) if bin(m).count("1") == best))
        if best == n:
            break
    return g, cards


def random_config(rng: random.Random, n: int, d: int, grid: int = 2, projective: bool = False) -> Config:
    """Small-grid rational points, so collinearities and coplanarities are common."""
    seen = set()
    rows = []
    attempts = 0
    width = d + 1 if projective else d
    while len(rows) < n and attempts < 1000:
        attempts += 1
        v = [Fraction(rng.randint(-grid, grid), rng.choice((1, 1, 2))) for _ in range(width)]
        if projective and not any(v):
            continue
        cfg = Config.from_projective([v]) if projective else Config.from_affine([v])
        p = cfg.points[0]
        if p in seen:
            continue
        seen.add(p)
        rows.append(v)
    if projective:
        return Config.from_projective(rows, dim=d)
    return Config.from_affine(rows, dim=d)


def random_weighted(rng: random.Random, n: int, d: int) -> Config:
    cfg = random_config(rng, n, d)
    weights = [Fraction(rng.randint(2, 6), 2) for _ in range(cfg.n)]  # 1 .. 3
    return cfg.with_weights(weights)
