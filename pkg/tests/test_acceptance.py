"""Acceptance criteria, one test each.

Every test records a one-line verdict in RESULTS; conftest prints them at the
end of the run under "acceptance criteria".
"""

from __future__ import annotations

import os
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from math import comb

import pytest

from flatspan.claims import (
    Analysis,
    check_contained_flats,
    check_cover_minimality,
    check_flat_count_drop,
    check_projection_degeneracy,
    check_rewrite_identity,
    check_split_bound,
)
from flatspan.constructions import (
    gen_crosspolytope_base,
    gen_crosspolytope_construction,
    gen_cube,
    gen_hypercube_construction,
    gen_moment_curve,
    gen_near_pencil,
    gen_on_flats,
    gen_skew_lines,
)
from flatspan.enumeration import enumerate_spanned, f_vector
from flatspan.essential import check_G_minimality_bruteforce, g_vector
from flatspan.io import save_config
from oracles import g_and_cardinality, random_config, random_weighted, spanned_flats

RESULTS: dict[str, str] = {}


@contextmanager
def criterion(num: int, name: str):
    """Record PASS/FAIL for criterion ``num`` whatever happens inside."""
    key = f"{num:02d}"
    t0 = time.perf_counter()
    state = {"detail": ""}
    ok = False
    try:
        yield state
        ok = True
    finally:
        dt = time.perf_counter() - t0
        verdict = "PASS" if ok else "FAIL"
        RESULTS[key] = f"[{num}/10] {name}: {verdict} ({dt:.2f} s) {state['detail']}".rstrip()
        print(RESULTS[key])


def test_c01_cube_origin_split():
    with criterion(1, "cube origin split") as st:
        t0 = time.perf_counter()
        fv = f_vector(gen_cube(3))
        dt = time.perf_counter() - t0
        got = (fv.through_origin(1), fv.avoiding_origin(1), fv.through_origin(2), fv.avoiding_origin(2))
        st["detail"] = f"f1o/f1a/f2o/f2a={got}"
        assert got == (4, 24, 6, 14)
        assert dt < 1.0


def test_c02_raised_hypercubes():
    with criterion(2, "raised square and cube") as st:
        t0 = time.perf_counter()
        s2 = gen_hypercube_construction(2, 10)
        fv2, gv2 = f_vector(s2), g_vector(s2)
        s3 = gen_hypercube_construction(3, 20)
        fv3, gv3 = f_vector(s3), g_vector(s3)
        dt = time.perf_counter() - t0
        got = (s2.n, fv2.f(1), fv2.f(2), s2.n - gv2.g[2], s3.n, fv3.f(2), fv3.f(3), s3.n - gv3.g[3])
        st["detail"] = f"(n,f,f,n-g) S2={got[:4]} S3={got[4:]}"
        assert got == (14, 47, 43, 2, 28, 504, 287, 4)
        assert dt < 30.0


def test_c03_skew_lines():
    with criterion(3, "skew lines n=8") as st:
        t0 = time.perf_counter()
        c = gen_skew_lines(4, 2, 3)
        fv, gv = f_vector(c), g_vector(c)
        dt = time.perf_counter() - t0
        st["detail"] = f"f={fv.counts} K={gv.K} g2={gv.g[2]}"
        n = c.n
        assert n == 8
        assert fv.counts == (1, 8, 18, 8, 1)
        assert fv.f(1) == (n // 2) ** 2 + 2 and fv.f(2) == n
        assert gv.K == 2 and gv.g[2] == 8
        assert dt < 1.0


@pytest.mark.slow
def test_c04_raised_crosspolytope():
    with criterion(4, "raised cross-polytope j=2") as st:
        t0 = time.perf_counter()
        fvs, gvs = {}, {}
        for m in (40, 50):
            c = gen_crosspolytope_construction(2, m)
            assert c.ambient == 7
            fvs[m] = f_vector(c)
            gvs[m] = (c.n, g_vector(c).g)
        dt = time.perf_counter() - t0
        for m in (40, 50):
            assert fvs[m].f(6) < fvs[m].f(5) < fvs[m].f(4)
        diffs = {i: fvs[50].f(i) - fvs[40].f(i) for i in (5, 6)}
        assert diffs == {i: 10 * 2**i * comb(6, i) for i in (5, 6)}
        for m in (40, 50):
            n, g = gvs[m]
            assert n - g[6] == 2 and n - g[5] == 4
        st["detail"] = f"f4,f5,f6(m=50)={[fvs[50].f(i) for i in (4, 5, 6)]} diffs={diffs}"
        assert dt < 600.0


def test_c05_oracle_equivalence():
    with criterion(5, "oracle equivalence, 200 configs") as st:
        t0 = time.perf_counter()
        rng = random.Random(20240)
        for _ in range(200):
            d = rng.choice((2, 3))
            c = random_config(rng, rng.randint(1, 9), d, projective=rng.random() < 0.3)
            flats = enumerate_spanned(c)
            ref = spanned_flats(c)
            for k in range(-1, d + 1):
                assert {r.flat.basis: frozenset(r.incident) for r in flats[k]} == ref[k]
            gv = g_vector(c)
            g, _ = g_and_cardinality(c)
            assert list(gv.g) == g
            assert gv.K == next(k for k, x in enumerate(g) if x == c.n)
        dt = time.perf_counter() - t0
        st["detail"] = "enumeration and g/K match"
        assert dt < 300.0


def test_c06_rewrite_identity():
    with criterion(6, "weighted rewrite identity") as st:
        rng = random.Random(606)
        checked = 0
        for _ in range(50):
            c = random_weighted(rng, rng.randint(2, 8), rng.choice((2, 3)))
            assert all(1 <= w <= 3 for w in c.weights)
            a = Analysis(c)
            for k in (1, 2):
                for F in ("one", "reciprocal"):
                    r = check_rewrite_identity(a, k, F)
                    assert r.status == "pass", r.details
                    checked += 1
        st["detail"] = f"{checked} exact comparisons"


def test_c07_flat_count_drop():
    with criterion(7, "flat-count drop above K") as st:
        rng = random.Random(707)
        checked = 0
        for seed in range(100):
            ambient = rng.choice((3, 4))
            dims = [rng.randint(1, 2) for _ in range(rng.randint(1, 2))]
            if sum(dims) > ambient:
                dims = dims[:1]
            c = gen_on_flats(dims, rng.randint(3, 5), ambient, seed=seed)
            a = Analysis(c)
            k = sum(dims)
            assert a.K <= k
            for kk in range(k, ambient + 2):
                r = check_flat_count_drop(a, kk)
                assert r.status == "pass", r.details
                checked += 1
        st["detail"] = f"{checked} (config, k) pairs"


def structural_corpus():
    rng = random.Random(808)
    corpus = [
        gen_skew_lines(4, 2, 3),
        gen_skew_lines(3, 3, 5),
        gen_cube(3),
        gen_crosspolytope_base(1),
        gen_near_pencil(6),
        gen_moment_curve(6, 3),
        gen_hypercube_construction(2, 6),
        gen_hypercube_construction(3, 3),
        gen_crosspolytope_construction(1, 3),
    ]
    corpus += [random_config(rng, rng.randint(3, 9), rng.choice((2, 3))) for _ in range(30)]
    return corpus


def test_c08_structural_checks():
    with criterion(8, "structural checks on corpus") as st:
        corpus = structural_corpus()
        pairs = 0
        for c in corpus:
            a = Analysis(c)
            assert check_contained_flats(a).status == "pass"
            assert check_cover_minimality(a).status == "pass"
            r = check_projection_degeneracy(a)
            assert r.status == "pass", r.details
            probes = a.flats.records(min_dim=0)
            for w in a.gvec.witnesses:
                if w.cardinality >= 2:
                    for rec in probes:
                        assert check_G_minimality_bruteforce(w, rec.flat)
                        pairs += 1
        st["detail"] = f"{len(corpus)} configs, {pairs} witness/probe pairs by subset loop"


def test_c09_split_bound():
    with criterion(9, "split upper bound") as st:
        rng = random.Random(909)
        for _ in range(100):
            d = rng.choice((2, 3))
            c = random_config(rng, rng.randint(2, 9), d)
            part = [i for i in range(c.n) if rng.random() < 0.5]
            k = rng.randint(0, d)
            r = check_split_bound(c, part=part, k=k)
            assert r.status == "pass", r.details
        st["detail"] = "100 triples"


def test_c10_thread_determinism(tmp_path):
    with criterion(10, "byte-identical JSON across thread counts") as st:
        files = []
        for name, c in (("s2.txt", gen_hypercube_construction(2, 10)), ("s3.txt", gen_hypercube_construction(3, 20))):
            p = tmp_path / name
            save_config(c, p)
            files.append(p)
        outs = {}
        for threads in ("1", "3"):
            env = dict(os.environ, FLATSPAN_THREADS=threads)
            for p in files:
                res = subprocess.run(
                    [sys.executable, "-m", "flatspan", "analyze", str(p), "--json"],
                    capture_output=True,
                    env=env,
                    check=True,
                )
                outs[(threads, p.name)] = res.stdout
        for p in files:
            assert outs[("1", p.name)] == outs[("3", p.name)]
            assert len(outs[("1", p.name)]) > 0
        st["detail"] = f"{len(files)} inputs, threads 1 vs 3"
