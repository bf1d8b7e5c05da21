"""Command-line front end.

Exit codes: 0 when every check passes or does not apply, 1 when a check
fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .claims import CHECKS, FAIL, Analysis
from .config import Config, project_config
from .constructions import GENERATORS, RaiseSpec, generate, raise_dimension, raise_terms
from .errors import FlatspanError
from .geometry import span
from .io import dumps, load_config, save_config
from .report import analyze, to_json, to_text


class InputError(Exception):
    pass


def _write(config: Config, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(dumps(config))
    else:
        save_config(config, out)


def _load(path: str) -> Config:
    if path == "-":
        from .io import loads

        return loads(sys.stdin.read())
    return load_config(path)


def _indices(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated point indices, got {text!r}") from None


def cmd_gen(args) -> int:
    params = {}
    for item in args.params:
        if "=" not in item:
            raise InputError(f"generator parameters look like key=value, got {item!r}")
        k, v = item.split("=", 1)
        params[k.strip()] = v.strip()
    _write(generate(args.name, params), args.output)
    return 0


def cmd_analyze(args) -> int:
    config = _load(args.file)
    if args.origin is not None:
        config = config.with_origin(args.origin)
    report = analyze(config, kmax=args.kmax, force=args.force)
    sys.stdout.write(to_json(report) if args.json else to_text(report))
    return 1 if not report["all_passed"] else 0


def cmd_check(args) -> int:
    config = _load(args.file)
    if args.origin is not None:
        config = config.with_origin(args.origin)
    fn = CHECKS.get(args.claim)
    if fn is None:
        raise InputError(f"unknown claim {args.claim!r}; choose from {', '.join(CHECKS)}")
    a = Analysis(config)
    kw: dict = {}
    name = args.claim
    if name in ("flat-count-drop", "weighted-monotone", "rewrite-identity", "split-bound", "projection-degeneracy"):
        if args.k is not None:
            kw["k"] = args.k
        elif name == "rewrite-identity":
            kw["k"] = 1
    if name in ("weighted-monotone", "rewrite-identity"):
        kw["F_name"] = args.F
    if name == "split-bound" and args.part is not None:
        kw["part"] = _indices(args.part)
    if name == "projection-degeneracy" and args.point is not None:
        kw["p"] = args.point
    if name == "raise-count":
        kw["m"] = args.m
    rep = fn(a, **kw)
    if args.json:
        sys.stdout.write(json.dumps(rep.to_dict(runtime=True), sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(f"[{rep.status}] {rep.claim_id} ({rep.runtime_ms:.1f} ms)\n")
        for k, v in rep.details.items():
            sys.stdout.write(f"  {k}: {json.dumps(v, sort_keys=True)}\n")
    return 1 if rep.status == FAIL else 0


def cmd_project(args) -> int:
    config = _load(args.file)
    idx = _indices(args.center)
    if not idx:
        raise InputError("--center needs at least one point index")
    for i in idx:
        if not 0 <= i < config.n:
            raise InputError(f"center index {i} out of range for {config.n} points")
    center = span([config.points[i] for i in idx])
    image, fibres = project_config(config, center)
    if not args.keep_weights:
        image = image.with_weights(None)
    _write(image, args.output)
    merged = sum(1 for f in fibres if len(f) > 1)
    sys.stderr.write(f"projected from a {center.dim}-flat: {image.n} image points, {merged} merged fibres\n")
    return 0


def cmd_raise(args) -> int:
    base = _load(args.file)
    if args.origin is not None:
        base = base.with_origin(args.origin)
    spec = RaiseSpec(base, args.m)
    config, predicted = raise_dimension(spec)
    _write(config, args.output)
    for t in raise_terms(spec):
        sys.stderr.write(
            f"predicted f_{t.k} = {t.m}*{t.avoiding} + {t.origin_term} + {t.base} + {t.axis} = {t.predicted}\n"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flatspan", description="Exact counts of flats spanned by point sets.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a configuration", description="Generators: " + "; ".join(
        f"{name} {usage}" for name, (usage, _) in GENERATORS.items()))
    g.add_argument("name", choices=sorted(GENERATORS))
    g.add_argument("params", nargs="*", help="key=value")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("analyze", help="f-vector, g-vector, covers and all checks")
    a.add_argument("file")
    a.add_argument("--json", action="store_true")
    a.add_argument("--kmax", type=int)
    a.add_argument("--origin", type=int, help="designate point i as the origin")
    a.add_argument("--force", action="store_true", help="run costly checks regardless of size")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("check", help="run one named check")
    c.add_argument("claim", choices=sorted(CHECKS))
    c.add_argument("file")
    c.add_argument("--k", type=int)
    c.add_argument("--F", default="reciprocal", help="one, reciprocal or step:<t>")
    c.add_argument("--part", help="point indices of the first part (split-bound)")
    c.add_argument("--point", type=int, help="projection point (projection-degeneracy)")
    c.add_argument("--m", type=int, default=3, help="axis points (raise-count)")
    c.add_argument("--origin", type=int)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    pr = sub.add_parser("project", help="project from the span of some points")
    pr.add_argument("file")
    pr.add_argument("--center", required=True, help="comma-separated point indices")
    pr.add_argument("--keep-weights", action="store_true", help="keep merged fibre sizes as weights")
    pr.add_argument("-o", "--output")
    pr.set_defaults(func=cmd_project)

    r = sub.add_parser("raise", help="add m axis points through the origin")
    r.add_argument("file")
    r.add_argument("--m", type=int, required=True)
    r.add_argument("--origin", type=int)
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_raise)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (FlatspanError, InputError, ValueError, OSError) as exc:
        sys.stderr.write(f"flatspan: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
