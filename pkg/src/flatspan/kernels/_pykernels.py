"""Reference kernels in plain Python (plus numpy for bitset popcounts).

These define the semantics; the compiled kernels must agree bit for bit.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence

import numpy as np

IntVec = tuple[int, ...]


class ResidualKernel:
    """Groups configuration points by their image under projection from a flat.

    ``classes(rows, pivots, incident)`` reduces every point not listed in
    ``incident`` modulo the echelon basis and returns a mapping from the
    canonical residual (primitive, positive leading entry) to the bitmask of
    points sharing it.  Each key is one flat of the next rank containing the
    given flat.
    """

    backend = "python"

    def __init__(self, points: Sequence[Sequence[int]]):
        self.points = [tuple(p) for p in points]

    def classes(
        self, rows: Sequence[IntVec], pivots: Sequence[int], incident: Sequence[int]
    ) -> dict[IntVec, int]:
        skip = set(incident)
        steps = list(zip(rows, pivots))
        groups: dict[IntVec, int] = {}
        for i, v in enumerate(self.points):
            if i in skip:
                continue
            for row, pc in steps:
                b = v[pc]
                if b:
                    a = row[pc]
                    v = [a * x - b * y for x, y in zip(v, row)]
            g = gcd(*v)
            if g == 0:
                # on the flat but not recorded as incident; caller bug
                raise ValueError(f"point {i} lies on the flat but is not incident")
            for x in v:
                if x:
                    if x < 0:
                        g = -g
                    break
            key = tuple(x // g for x in v)
            groups[key] = groups.get(key, 0) | (1 << i)
        return groups


def coverage_gains(masks: np.ndarray, covered: np.ndarray) -> np.ndarray:
    """Number of points of each candidate bitset not already in ``covered``."""
    if masks.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    return np.bitwise_count(masks & ~covered).sum(axis=1, dtype=np.int64)
