from __future__ import annotations

import random

import numpy as np
import pytest

from flatspan import kernels
from flatspan.constructions import gen_crosspolytope_construction, gen_random
from flatspan.enumeration import enumerate_spanned
from flatspan.geometry import Point, echelon_basis, reduce_vector
from flatspan.kernels import _pykernels

ck = pytest.importorskip("flatspan.kernels._ckernels", reason="compiled kernels not built")


def test_backend_selected_at_import():
    assert kernels.BACKEND in ("python", "cython")


def random_points(rng, d, n, scale):
    pts = set()
    while len(pts) < n:
        v = tuple(rng.randint(-3, 3) * scale + rng.randint(0, 1) for _ in range(d + 1))
        if any(v):
            pts.add(Point.from_ivec(v).ivec)
    return sorted(pts)


@pytest.mark.parametrize("scale", [1, 10**6, 2**40])
def test_residual_kernels_agree(scale):
    rng = random.Random(scale)
    for _ in range(30):
        d = rng.choice((2, 3, 4))
        pts = random_points(rng, d, 12, scale)
        rows, piv = echelon_basis(rng.sample(pts, rng.randint(1, d)))
        inc = [i for i, p in enumerate(pts) if not any(reduce_vector(p, rows, piv))]
        assert _pykernels.ResidualKernel(pts).classes(rows, piv, inc) == ck.ResidualKernel(pts).classes(rows, piv, inc)


def test_huge_entries_rejected_by_compiled_constructor():
    with pytest.raises(OverflowError):
        ck.ResidualKernel([(10**20, 1)])
    k = kernels.make_residual_kernel([(10**20, 1), (1, 0)])
    assert k.classes(((1, 0),), (0,), [1]) == {(0, 1): 1}


def test_coverage_gains_agree():
    rng = np.random.default_rng(0)
    masks = rng.integers(0, 2**63, size=(50, 3), dtype=np.uint64)
    cov = rng.integers(0, 2**63, size=3, dtype=np.uint64)
    assert (ck.coverage_gains(masks, cov) == _pykernels.coverage_gains(masks, cov)).all()
    empty = np.zeros((0, 2), dtype=np.uint64)
    assert ck.coverage_gains(empty, cov[:2]).shape == (0,)


def test_enumeration_identical_across_backends(monkeypatch):
    c = gen_crosspolytope_construction(1, 4)
    fast = enumerate_spanned(c)
    monkeypatch.setattr(kernels, "ResidualKernel", _pykernels.ResidualKernel)
    from flatspan import enumeration

    monkeypatch.setattr(enumeration, "make_residual_kernel", lambda pts: _pykernels.ResidualKernel(pts))
    slow = enumerate_spanned(c)
    for k in range(-1, c.ambient + 1):
        assert [(r.flat, r.incident) for r in fast[k]] == [(r.flat, r.incident) for r in slow[k]]


def test_random_configs_identical_across_backends(monkeypatch):
    from flatspan import enumeration

    configs = [gen_random(8, 3, seed=s) for s in range(5)]
    fast = [enumerate_spanned(c) for c in configs]
    monkeypatch.setattr(enumeration, "make_residual_kernel", lambda pts: _pykernels.ResidualKernel(pts))
    for c, f in zip(configs, fast):
        s = enumerate_spanned(c)
        assert all([r.flat for r in f[k]] == [r.flat for r in s[k]] for k in range(-1, 4))
