"""Named checks of exact statements about f_k, g_k and covers.

Every check returns a ``ClaimReport`` whose status comes from integer or
rational comparisons only.  A check is ``not-applicable`` exactly when its
hypothesis fails for the given configuration and parameters.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Sequence

from .config import Config, project_config
from .constructions import RaiseSpec, raise_dimension, raise_terms
from .enumeration import (
    FVector,
    SpannedFlats,
    enumerate_spanned,
    f_vector,
    weight_function,
    weighted_sum,
    weighted_sum_via_projection,
)
from .errors import ConstructionError, PreconditionError
from .essential import GVector, g_vector, minimality_excess, projection_degeneracy_check
from .geometry import span

PASS, FAIL, NA = "pass", "fail", "not-applicable"


@dataclass
class ClaimReport:
    claim_id: str
    status: str
    details: dict[str, Any] = field(default_factory=dict)
    runtime_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_dict(self, runtime: bool = False) -> dict[str, Any]:
        out = {"claim_id": self.claim_id, "status": self.status, "details": self.details}
        if runtime:
            out["runtime_ms"] = round(self.runtime_ms, 3)
        return out


def _q(x: Fraction | int) -> str | int:
    """Rationals as exact strings, integers as integers."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    return x


class Analysis:
    """Lazily computed, shared quantities for one configuration."""

    def __init__(self, config: Config):
        self.config = config

    @cached_property
    def flats(self) -> SpannedFlats:
        return enumerate_spanned(self.config)

    @cached_property
    def fvec(self) -> FVector:
        return f_vector(self.config, flats=self.flats)

    @cached_property
    def gvec(self) -> GVector:
        return g_vector(self.config, self.flats)

    @property
    def K(self) -> int:
        return self.gvec.K

    def f(self, k: int) -> int:
        return self.fvec.f(k)


def _timed(fn):
    def wrapper(*args, **kwargs) -> ClaimReport:
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.runtime_ms = (time.perf_counter() - t0) * 1000
        return rep

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _analysis(x: Config | Analysis) -> Analysis:
    return x if isinstance(x, Analysis) else Analysis(x)


@_timed
def check_flat_count_drop(config: Config | Analysis, k: int | None = None) -> ClaimReport:
    """For k >= K: f_{k-1} > f_k, or both vanish."""
    a = _analysis(config)
    cid = "flat-count-drop"
    K = a.K
    if k is None:
        k = K
    if k < K or k < 0:
        return ClaimReport(cid, NA, {"k": k, "K": K})
    lo, hi = a.f(k - 1), a.f(k)
    ok = lo > hi or lo == hi == 0
    return ClaimReport(cid, PASS if ok else FAIL, {"k": k, "K": K, "f_k_minus_1": lo, "f_k": hi})


@_timed
def check_debruijn_erdos(config: Config | Analysis) -> ClaimReport:
    """f_1 >= n unless collinear; equality only for a near-pencil."""
    a = _analysis(config)
    cid = "debruijn-erdos"
    n = a.config.n
    if n < 2:
        return ClaimReport(cid, NA, {"n": n})
    collinear = a.config.span().dim <= 1
    f1 = a.f(1) if a.config.ambient >= 1 else 0
    details: dict[str, Any] = {"n": n, "f_1": f1, "collinear": collinear}
    if collinear:
        return ClaimReport(cid, PASS, details)
    richest = max(r.multiplicity for r in a.flats[1])
    equality = f1 == n
    details["equality"] = equality
    details["richest_line"] = richest
    if equality:
        details["near_pencil"] = richest == n - 1
    ok = f1 > n or (equality and richest == n - 1)
    return ClaimReport(cid, PASS if ok else FAIL, details)


@_timed
def check_weighted_monotone(
    config: Config | Analysis, k: int | None = None, F_name: str = "reciprocal"
) -> ClaimReport:
    """For k >= K and f_k >= 1: sum F(W) over k-flats < sum over (k-1)-flats."""
    F = weight_function(F_name)
    a = _analysis(config)
    cid = "weighted-monotone"
    K = a.K
    if k is None:
        k = K
    fk = a.f(k) if k <= a.config.ambient else 0
    details: dict[str, Any] = {"k": k, "K": K, "F": F.name, "f_k": fk}
    if k < K or fk < 1 or k < 1:
        return ClaimReport(cid, NA, details)
    hi = weighted_sum(a.config, k, F, a.flats)
    lo = weighted_sum(a.config, k - 1, F, a.flats)
    details.update(sum_k=_q(hi), sum_k_minus_1=_q(lo))
    return ClaimReport(cid, PASS if hi < lo else FAIL, details)


@_timed
def check_log_concavity(config: Config | Analysis) -> ClaimReport:
    """Report f_k^2 / (f_{k-1} f_{k+1}); informational only."""
    a = _analysis(config)
    ratios = {}
    for k in range(1, a.config.ambient):
        if a.f(k + 1) > 0 and a.f(k - 1) > 0:
            ratios[k] = _q(Fraction(a.f(k) ** 2, a.f(k - 1) * a.f(k + 1)))
    return ClaimReport("log-concavity", PASS, {"ratios": ratios})


@_timed
def check_rewrite_identity(config: Config | Analysis, k: int = 1, F_name: str = "reciprocal") -> ClaimReport:
    """Sum of F(W) over k-flats equals its regrouping by projection from each point."""
    F = weight_function(F_name)
    a = _analysis(config)
    cid = "rewrite-identity"
    if not 1 <= k <= a.config.ambient:
        return ClaimReport(cid, NA, {"k": k})
    lhs = weighted_sum(a.config, k, F, a.flats)
    rhs = weighted_sum_via_projection(a.config, k, F)
    return ClaimReport(cid, PASS if lhs == rhs else FAIL, {"k": k, "F": F.name, "lhs": _q(lhs), "rhs": _q(rhs)})


@_timed
def check_projection_bijection(config: Config | Analysis) -> ClaimReport:
    """k-flats through p correspond to (k-1)-flats of the projection from p."""
    a = _analysis(config)
    cid = "projection-bijection"
    d = a.config.ambient
    if d < 1 or a.config.n == 0:
        return ClaimReport(cid, NA, {})
    mismatches = []
    for i, p in enumerate(a.config.points):
        proj, _ = project_config(a.config, span([p]))
        pf = f_vector(proj)
        for k in range(1, d + 1):
            through = sum(1 for r in a.flats.containing(k, i))
            if through != pf.f(k - 1):
                mismatches.append({"point": i, "k": k, "through_p": through, "projected": pf.f(k - 1)})
    return ClaimReport(cid, FAIL if mismatches else PASS, {"mismatches": mismatches[:10]})


@_timed
def check_contained_flats(config: Config | Analysis) -> ClaimReport:
    """Each spanned k-flat with k >= K contains at least k + 1 - K flats of G_K."""
    a = _analysis(config)
    cid = "contained-flats"
    K = a.K
    cover = a.gvec.witnesses[-1].flats
    worst: dict[int, int] = {}
    bad = []
    for k in range(max(K, 0), a.config.ambient + 1):
        need = k + 1 - K
        for rec in a.flats[k]:
            have = sum(1 for g in cover if rec.flat.contains(g))
            if k not in worst or have - need < worst[k]:
                worst[k] = have - need
            if have < need:
                bad.append({"k": k, "flat": [list(map(_q, r)) for r in rec.flat.basis], "contained": have})
    details = {"K": K, "min_slack": worst, "violations": bad[:5]}
    return ClaimReport(cid, FAIL if bad else PASS, details)


@_timed
def check_cover_minimality(config: Config | Analysis) -> ClaimReport:
    """No two or more flats of a G_k meet a spanned probe in total dimension >= its own."""
    a = _analysis(config)
    cid = "cover-minimality"
    probes = a.flats.records(min_dim=0)
    bad = []
    checked = 0
    for k, w in enumerate(a.gvec.witnesses):
        if w.cardinality < 2:
            continue
        for rec in probes:
            checked += 1
            if minimality_excess(w, rec.flat) >= 0:
                bad.append({"k": k, "probe_dim": rec.dim, "probe_points": list(rec.incident)})
    return ClaimReport(cid, FAIL if bad else PASS, {"pairs_checked": checked, "violations": bad[:5]})


@_timed
def check_projection_degeneracy(
    config: Config | Analysis, k: int | None = None, p: int | None = None
) -> ClaimReport:
    """Projecting the points of G_k from p outside them loses at most k^2 points and g_i grows by at most k^2."""
    a = _analysis(config)
    cid = "projection-degeneracy"
    K = a.K
    ks = range(0, K) if k is None else [k]
    cases = []
    fails = []
    for kk in ks:
        if not 0 <= kk < K:
            return ClaimReport(cid, NA, {"k": kk, "K": K})
        A = set(a.gvec.witnesses[kk].covered)
        ps = [q for q in range(a.config.n) if q not in A] if p is None else [p]
        for q in ps:
            if q in A:
                return ClaimReport(cid, NA, {"k": kk, "point": q, "reason": "point lies on G_k"})
            rep = projection_degeneracy_check(a.config, kk, q, a.gvec)
            row = {
                "k": kk,
                "point": q,
                "image_size": rep.image_size,
                "size_bound": rep.size_bound,
                "g_image": list(rep.g_image),
                "g_bound": list(rep.g_bound),
            }
            cases.append(row)
            if not rep.ok:
                fails.append(row)
    details = {"K": K, "cases": len(cases), "failures": fails[:5]}
    if cases:
        details["min_size_slack"] = min(c["image_size"] - c["size_bound"] for c in cases)
    return ClaimReport(cid, FAIL if fails else PASS, details)


def default_partition(n: int) -> tuple[int, ...]:
    return tuple(range(0, n, 2))


@_timed
def check_split_bound(
    config: Config | Analysis, part: Sequence[int] | None = None, k: int | None = None
) -> ClaimReport:
    """f_k <= sum_{i=-1}^{k} f_i(P1) f_{k-i-1}(P2) for the partition P1 = part."""
    a = _analysis(config)
    cid = "split-bound"
    n, d = a.config.n, a.config.ambient
    p1 = sorted(set(default_partition(n) if part is None else part))
    if any(not 0 <= i < n for i in p1):
        raise PreconditionError("partition indices out of range")
    p2 = [i for i in range(n) if i not in set(p1)]
    f1 = f_vector(a.config.subset(p1))
    f2 = f_vector(a.config.subset(p2))
    ks = range(0, d + 1) if k is None else [k]
    rows = {}
    bad = []
    for kk in ks:
        bound = sum(f1.f(i) * f2.f(kk - i - 1) for i in range(-1, kk + 1))
        rows[kk] = [a.f(kk), bound]
        if a.f(kk) > bound:
            bad.append(kk)
    return ClaimReport(cid, FAIL if bad else PASS, {"part": p1, "f_k_and_bound": rows, "violations": bad})


@_timed
def check_raise_count(config: Config | Analysis, m: int = 3) -> ClaimReport:
    """Treat the configuration as a base in x1 = 0 and compare predicted and direct counts after raising."""
    a = _analysis(config)
    cid = "raise-count"
    try:
        spec = RaiseSpec(a.config, m)
    except ConstructionError as exc:
        return ClaimReport(cid, NA, {"reason": str(exc)})
    raised, _ = raise_dimension(spec)
    direct = f_vector(raised)
    rows = {}
    bad = []
    for t in raise_terms(spec, a.flats):
        rows[t.k] = {"direct": direct.f(t.k), "predicted": t.predicted, "literal": t.literal}
        if direct.f(t.k) != t.predicted:
            bad.append(t.k)
    return ClaimReport(cid, FAIL if bad else PASS, {"m": m, "counts": rows, "violations": bad})


CHECKS: dict[str, Callable[..., ClaimReport]] = {
    "flat-count-drop": check_flat_count_drop,
    "debruijn-erdos": check_debruijn_erdos,
    "weighted-monotone": check_weighted_monotone,
    "log-concavity": check_log_concavity,
    "rewrite-identity": check_rewrite_identity,
    "projection-bijection": check_projection_bijection,
    "contained-flats": check_contained_flats,
    "cover-minimality": check_cover_minimality,
    "projection-degeneracy": check_projection_degeneracy,
    "split-bound": check_split_bound,
    "raise-count": check_raise_count,
}
