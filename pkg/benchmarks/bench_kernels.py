"""Compare the compiled and pure-Python kernels.

Runs each kernel on the same inputs, checks the outputs agree, and prints
timings.  End-to-end enumeration is timed in subprocesses so that the
backend is chosen at import exactly as in normal use.

    python benchmarks/bench_kernels.py [--m 50] [--repeat 3]
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from flatspan.constructions import gen_crosspolytope_construction
from flatspan.enumeration import enumerate_spanned
from flatspan.kernels import _pykernels

try:
    from flatspan.kernels import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_residuals(config, level, repeat):
    flats = enumerate_spanned(config, level)
    recs = flats[level]
    pts = [p.ivec for p in config.points]

    def run(kernel):
        return [kernel.classes(r.flat.rows, r.flat.pivots, r.incident) for r in recs]

    results = {}
    t, ref = best_of(lambda: run(_pykernels.ResidualKernel(pts)), repeat)
    results["python"] = t
    if _ckernels is not None:
        t, got = best_of(lambda: run(_ckernels.ResidualKernel(pts)), repeat)
        assert got == ref, "compiled residual kernel disagrees"
        results["cython"] = t
    return len(recs), results


def bench_coverage(config, repeat):
    recs = enumerate_spanned(config).records(min_dim=1)
    words = -(-config.n // 64)
    masks = np.zeros((len(recs), words), dtype=np.uint64)
    for i, r in enumerate(recs):
        for j in r.incident:
            masks[i, j // 64] |= np.uint64(1) << np.uint64(j % 64)
    rng = np.random.default_rng(0)
    covers = [rng.integers(0, 2**63, size=words, dtype=np.uint64) for _ in range(200)]

    def run(fn):
        return [fn(masks, c) for c in covers]

    results = {}
    t, ref = best_of(lambda: run(_pykernels.coverage_gains), repeat)
    results["python"] = t
    if _ckernels is not None:
        t, got = best_of(lambda: run(_ckernels.coverage_gains), repeat)
        assert all((a == b).all() for a, b in zip(ref, got)), "compiled coverage kernel disagrees"
        results["cython"] = t
    return len(recs), results


def bench_end_to_end(m):
    code = (
        "import time;from flatspan.constructions import gen_crosspolytope_construction as g;"
        "from flatspan.enumeration import enumerate_spanned as e;"
        f"c=g(2,{m});t=time.perf_counter();e(c);print(time.perf_counter()-t)"
    )
    out = {}
    for backend in ("python", "cython"):
        env = dict(os.environ, FLATSPAN_KERNELS="python" if backend == "python" else "")
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        out[backend] = float(res.stdout.strip())
    return out


def report(name, count, results):
    line = f"{name:<28} items={count:<7}" + "".join(f" {k}={v * 1000:9.1f} ms" for k, v in results.items())
    if "cython" in results:
        line += f"  speedup={results['python'] / results['cython']:.1f}x"
    print(line)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--m", type=int, default=50)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; timing the Python fallback only")
    config = gen_crosspolytope_construction(2, args.m)
    print(f"cross-polytope construction j=2, m={args.m}: n={config.n} in P^{config.ambient}")
    report("residual grouping (4-flats)", *bench_residuals(config, 4, args.repeat))
    report("coverage popcount x200", *bench_coverage(config, args.repeat))
    if _ckernels is not None:
        res = bench_end_to_end(args.m)
        report("full enumeration", 1, res)


if __name__ == "__main__":
    main()
