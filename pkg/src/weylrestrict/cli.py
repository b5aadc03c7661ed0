"""Command-line front end.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on usage
errors (bad flags, unknown check ids, parameters out of range, size caps).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .checks import GROUPS, MatrixOptions, UnknownCheck, any_failed, run_suite
from .invariants import char_poly_family
from .propagation import PropagationError, catalog_lookup, catalog_rows, class_one_weights, make_pair
from .rootsys import RankError, fmt_vector, quiet_build
from .spectral import WeightError, branch, weyl_dim
from .weylgrp import WeylGroup

SCHEMA = "weyl-restrict/1"
DUMP_CAP = 50_000
TYPES = ("A", "B", "C", "D")


class UsageError(Exception):
    pass


def _dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str)


def _weight(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(p.strip()) for p in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse weight {text!r}") from exc


def _system(args):
    if args.type is None or args.rank is None:
        raise UsageError("--type and --rank are required")
    return quiet_build(args.type, args.rank)


# verify

def cmd_verify(args) -> int:
    only = {}
    for key in ("type", "n", "k", "rank"):
        value = getattr(args, key)
        if value is not None and not (key == "type" and args.all):
            only[key] = value
    requested = max([v for v in (args.n, args.k, args.rank) if v is not None], default=0)
    opts = MatrixOptions(max_rank=max(args.max_rank, requested), samples=args.samples,
                         trials=args.trials, seed=args.seed, only=only)
    try:
        reports = run_suite(args.check, opts, jobs=args.jobs)
    except UnknownCheck as exc:
        raise UsageError(f"unknown check id {exc}; known groups: {', '.join(GROUPS)}") from exc
    failed = any_failed(reports)
    counts = {s: sum(r.status == s for r in reports) for s in ("PASS", "FAIL", "SKIPPED")}
    if args.json:
        print(_dumps({
            "schema": SCHEMA,
            "command": "verify",
            "check": args.check,
            "options": {"max_rank": opts.max_rank, "samples": opts.samples, "trials": opts.trials,
                        "seed": opts.seed, "filter": only},
            "reports": [r.to_dict(timing=args.timing) for r in reports],
            "summary": {"total": len(reports), **counts},
        }))
    else:
        for r in reports:
            params = " ".join(f"{k}={v}" for k, v in r.params.items())
            line = f"{r.status:<7} {r.check:<28} {params}"
            if args.timing and r.seconds is not None:
                line += f"  ({r.seconds:.2f}s)"
            print(line)
            if r.check == "radius" and args.check == "radius":
                print(f"        R = {r.details['radius']}")
        print(f"{len(reports)} checks: {counts['PASS']} PASS, {counts['FAIL']} FAIL, "
              f"{counts['SKIPPED']} SKIPPED")
    return 1 if failed else 0


# dump

def dump_rootsys(args) -> dict:
    return _system(args).to_dict()


def dump_weyl(args) -> dict:
    group = WeylGroup(_system(args), extended=args.extended)
    if group.order > DUMP_CAP:
        raise UsageError(f"group order {group.order} exceeds the dump cap {DUMP_CAP}")
    return {"type": group.rs.type, "rank": group.rs.rank, "extended": args.extended,
            "order": group.order, "elements": [w.to_json() for w in group.sorted_elements()]}


def dump_invariants(args) -> dict:
    fam = char_poly_family(args.type, _system(args).rank)
    return {"type": args.type, "rank": args.rank, "nvars": fam.nvars,
            "generators": [{"index": i, "degree": g.degree(), "text": g.to_text(), "terms": g.to_json()}
                           for i, g in enumerate(fam.generators, start=1)]}


def dump_catalog(args) -> dict:
    return {"families": catalog_rows()}


def dump_xi(args) -> dict:
    xi = class_one_weights(_system(args))
    return {"type": args.type, "rank": args.rank, "xi": [fmt_vector(v) for v in xi.xi]}


DUMPERS = {"rootsys": dump_rootsys, "weyl": dump_weyl, "invariants": dump_invariants,
           "catalog": dump_catalog, "xi": dump_xi}


def cmd_dump(args) -> int:
    data = DUMPERS[args.entity](args)
    if args.json or args.entity != "xi":
        print(_dumps({"schema": SCHEMA, "entity": args.entity, **data}))
    else:
        for j, v in enumerate(data["xi"], start=1):
            print(f"xi_{j} = ({', '.join(v)})")
    return 0


# catalog

def cmd_catalog(args) -> int:
    if args.family is None:
        rows = catalog_rows()
        if args.json:
            print(_dumps({"schema": SCHEMA, "families": rows}))
        else:
            for r in rows:
                print(f"{r['id']:>2}  {r['label']:<8} {r['G_noncompact']:<16} K = {r['K']:<24} "
                      f"rank {r['rank']}, dim {r['dim']}")
        return 0
    params = {k: getattr(args, k) for k in ("p", "q", "j", "n") if getattr(args, k) is not None}
    family = int(args.family) if args.family.isdigit() else args.family
    try:
        entry = catalog_lookup(family, **params)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc).strip("'\"")) from exc
    if args.json:
        print(_dumps({"schema": SCHEMA, "entry": entry.to_dict()}))
    else:
        for key, value in entry.to_dict().items():
            print(f"{key:<16} {value}")
    return 0


# branch

def cmd_branch(args) -> int:
    if None in (args.type, args.n, args.k) or args.weight is None:
        raise UsageError("branch needs --type, --n, --k and --lambda")
    pair = make_pair(args.type, args.n, args.k)
    mu = _weight(args.weight)
    parts = branch(pair, mu)
    rows = sorted(parts.items(), key=lambda kv: kv[0], reverse=True)
    total = sum(m * weyl_dim(pair.small, v) for v, m in rows)
    if args.json:
        print(_dumps({"schema": SCHEMA, "type": args.type, "n": args.n, "k": args.k,
                      "lambda": fmt_vector(mu), "dim": weyl_dim(pair.large, mu),
                      "components": [{"weight": fmt_vector(v), "multiplicity": m,
                                      "dim": weyl_dim(pair.small, v)} for v, m in rows]}))
    else:
        print(f"{pair.large.label} module ({', '.join(fmt_vector(mu))}), "
              f"dim {weyl_dim(pair.large, mu)}, restricted to {pair.small.label}:")
        for v, m in rows:
            print(f"  {m} x ({', '.join(fmt_vector(v))})  dim {weyl_dim(pair.small, v)}")
        print(f"  total dim {total}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weylrestrict",
                                     description="Exact checks for propagated classical root systems.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, ranks=True):
        p.add_argument("--type", choices=TYPES)
        if ranks:
            p.add_argument("--n", type=int)
            p.add_argument("--k", type=int)
        p.add_argument("--rank", type=int)
        p.add_argument("--json", action="store_true", help="emit a JSON document")

    v = sub.add_parser("verify", help="run checks from the verification matrix")
    v.add_argument("check", help=f"'all', a group ({', '.join(GROUPS)}), a check id or a glob")
    common(v)
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--trials", type=int, default=10)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--max-rank", type=int, default=4)
    v.add_argument("--all", action="store_true", help="ignore --type and cover every type")
    v.add_argument("--jobs", type=int, default=min(4, os.cpu_count() or 1))
    v.add_argument("--timing", action="store_true", help="include wall-clock seconds")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("dump", help="serialize a constructed object")
    d.add_argument("entity", choices=sorted(DUMPERS))
    common(d, ranks=False)
    d.add_argument("--extended", action="store_true", help="include the odd sign change for type D")
    d.set_defaults(func=cmd_dump)

    c = sub.add_parser("catalog", help="list or look up symmetric-space families")
    c.add_argument("--family", help="family id or label")
    for name in ("p", "q", "j", "n"):
        c.add_argument(f"--{name}", type=int)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_catalog)

    b = sub.add_parser("branch", help="decompose a large-rank module over the small-rank group")
    common(b)
    b.add_argument("--lambda", "--weight", dest="weight", help="comma-separated highest weight")
    b.set_defaults(func=cmd_branch)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, RankError, PropagationError, WeightError) as exc:
        print(f"weylrestrict: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
