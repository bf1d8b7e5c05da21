"""Full analysis of one configuration as a deterministic JSON-ready dict."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .claims import (
    FAIL,
    Analysis,
    ClaimReport,
    check_contained_flats,
    check_cover_minimality,
    check_debruijn_erdos,
    check_flat_count_drop,
    check_log_concavity,
    check_projection_bijection,
    check_projection_degeneracy,
    check_raise_count,
    check_rewrite_identity,
    check_split_bound,
    check_weighted_monotone,
)
from .config import Config
from .enumeration import enumerate_spanned, f_vector
from .geometry import Flat, Point

SCHEMA = 1


@dataclass(frozen=True)
class Limits:
    """Size caps above which the costlier checks are skipped unless forced."""

    projection_points: int = 40
    minimality_pairs: int = 200_000


def _coords(p: Point) -> list[str]:
    vals = p.affine_coords() if p.is_affine else p.coords
    return [str(x) for x in vals]


def _flat(f: Flat) -> list[list[str]]:
    return [[str(x) for x in row] for row in f.basis]


def _config_block(config: Config) -> dict[str, Any]:
    return {
        "n": config.n,
        "ambient": config.ambient,
        "origin": None if config.origin is None else _coords(config.origin),
        "origin_index": config.origin_index,
        "origin_is_homogeneous": None if config.origin is None else not config.origin.is_affine,
        "weights": None if config.weights is None else [str(w) for w in config.weights],
    }


def analyze(
    config: Config,
    kmax: int | None = None,
    force: bool = False,
    limits: Limits = Limits(),
    F_name: str = "reciprocal",
) -> dict[str, Any]:
    """Counts, covers and every applicable check; no timings, so reruns match byte for byte."""
    d = config.ambient
    full = kmax is None or kmax >= d
    out: dict[str, Any] = {"schema": SCHEMA, "config": _config_block(config)}
    skipped: list[str] = []
    claims: list[ClaimReport] = []

    if not full:
        flats = enumerate_spanned(config, kmax)
        fv = f_vector(config, flats=flats)
        a = None
        skipped.append("g-vector and all cover-based checks (kmax below the ambient dimension)")
    else:
        a = Analysis(config)
        fv = a.fvec

    out["f_vector"] = {str(k): fv.f(k) for k in range(-1, fv.k_max + 1)}
    out["histograms"] = {
        str(k): {str(c): v for c, v in fv.histograms[k + 1].items()} for k in range(0, fv.k_max + 1)
    }
    if fv.origin_split is not None:
        out["origin_split"] = {
            str(k): {"through": fv.through_origin(k), "avoiding": fv.avoiding_origin(k)}
            for k in range(0, fv.k_max + 1)
        }
    out["rich_lines"] = {str(t): c for t, c in fv.rich_lines().items()}

    if a is not None:
        gv = a.gvec
        out["essential_dimension"] = gv.K
        out["g_vector"] = list(gv.g)
        out["n_minus_g"] = [config.n - g for g in gv.g]
        out["witnesses"] = [
            {
                "k": k,
                "covered": list(w.covered),
                "cardinality": w.cardinality,
                "total_dim": w.total_dim,
                "flats": [_flat(f) for f in w.flats],
            }
            for k, w in enumerate(gv.witnesses)
        ]
        claims.append(check_flat_count_drop(a))
        claims.append(check_debruijn_erdos(a))
        claims.append(check_weighted_monotone(a, None, F_name))
        claims.append(check_log_concavity(a))
        for k in range(1, min(d, 2) + 1):
            for name in ("one", "reciprocal"):
                claims.append(check_rewrite_identity(a, k, name))
        claims.append(check_contained_flats(a))
        pairs = sum(len(a.flats.records(min_dim=0)) for w in gv.witnesses if w.cardinality >= 2)
        if force or pairs <= limits.minimality_pairs:
            claims.append(check_cover_minimality(a))
        else:
            skipped.append("cover-minimality")
        if force or config.n <= limits.projection_points:
            claims.append(check_projection_bijection(a))
            claims.append(check_projection_degeneracy(a))
        else:
            skipped.extend(["projection-bijection", "projection-degeneracy"])
        claims.append(check_split_bound(a))
        claims.append(check_raise_count(a))

    out["claims"] = [c.to_dict() for c in claims]
    out["all_passed"] = not any(c.status == FAIL for c in claims)
    out["skipped"] = skipped
    return out


def to_json(report: dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def to_text(report: dict[str, Any]) -> str:
    cfg = report["config"]
    lines = [f"n = {cfg['n']} points in P^{cfg['ambient']}"]
    if cfg["origin"] is not None:
        where = f"point {cfg['origin_index']}" if cfg["origin_index"] is not None else "not a listed point"
        lines.append(f"origin: ({', '.join(cfg['origin'])}) [{where}]")
    fv = report["f_vector"]
    lines.append("f-vector: " + ", ".join(f"f_{k}={v}" for k, v in fv.items()))
    if "origin_split" in report:
        lines.append(
            "through/avoiding origin: "
            + ", ".join(f"k={k}: {s['through']}/{s['avoiding']}" for k, s in report["origin_split"].items())
        )
    for k, h in report["histograms"].items():
        if k != "0" and h:
            lines.append(f"  {k}-flats by points: " + ", ".join(f"{c}:{v}" for c, v in h.items()))
    if report["rich_lines"]:
        lines.append("lines with >= t points: " + ", ".join(f"t={t}: {c}" for t, c in report["rich_lines"].items()))
    if "g_vector" in report:
        lines.append(f"essential dimension K = {report['essential_dimension']}")
        lines.append("g: " + ", ".join(str(g) for g in report["g_vector"]))
        lines.append("n - g: " + ", ".join(str(g) for g in report["n_minus_g"]))
        for w in report["witnesses"][1:]:
            lines.append(
                f"  G_{w['k']}: {w['cardinality']} flat(s), total dim {w['total_dim']}, covers {len(w['covered'])}"
            )
    for c in report["claims"]:
        lines.append(f"[{c['status']}] {c['claim_id']}: {_short(c['details'])}")
    for s in report["skipped"]:
        lines.append(f"[skipped] {s}")
    return "\n".join(lines) + "\n"


def _short(details: dict[str, Any]) -> str:
    parts = []
    for k, v in details.items():
        text = json.dumps(v, sort_keys=True) if not isinstance(v, (str, Fraction)) else str(v)
        if len(text) > 80:
            text = text[:77] + "..."
        parts.append(f"{k}={text}")
    return ", ".join(parts)
