"""Command-line front end.

Subcommands: verify (batch or per-entry), commutators (bracket table for one
entry), transform (apply an equivalence transform and re-verify), parse
(canonical form of one expression), serve (HTTP service).

Exit codes: 0 success, 1 usage or file errors, 2 unexpected verification
failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from importlib import resources

from .catalog import (
    CatalogEntry,
    entry_records,
    instantiate_params,
    load_catalog,
    summarize,
    verify_catalog,
    verify_entry,
    _bind,
    _bind_field,
)
from .equivtrans import (
    EquivalenceTransform,
    pushforward_domain,
    pushforward_field,
    transform_F,
)
from .errors import LieverifyError, NonInvertible, ParseError
from .determine import verify_pair
from .liealg import bracket_strings, match_algebra, structure_constants
from .parser import parse_expr, print_expr
from .simplify import normalize

USAGE_EXIT = 1
FAIL_EXIT = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; the contract reserves 2 for
    # verification failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def default_catalog_path() -> str:
    return str(resources.files("lieverify").joinpath("data/catalog.lcat"))


def _default_seed() -> int:
    raw = os.environ.get("LIEVERIFY_SEED")
    if raw is None:
        return 42
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"lieverify: bad LIEVERIFY_SEED {raw!r}")


def _common(p: _Parser, *, points: bool = True) -> None:
    p.add_argument("--catalog", default=None, metavar="PATH")
    p.add_argument("--seed", type=int, default=None, metavar="N")
    if points:
        p.add_argument("--points", type=int, default=32, metavar="N")
    p.add_argument("--format", choices=("text", "jsonl"), default="text")


def build_parser() -> _Parser:
    top = _Parser(prog="lieverify", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pv = sub.add_parser("verify", help="verify entries against both oracles")
    _common(pv)
    pv.add_argument("--entry", action="append", default=None, metavar="ID")
    pv.add_argument("--jobs", type=int, default=1, metavar="N")

    pc = sub.add_parser("commutators", help="print the bracket table of one entry")
    _common(pc, points=False)
    pc.add_argument("--entry", required=True, metavar="ID")

    pt = sub.add_parser(
        "transform",
        help="apply an equivalence transform to an entry and re-verify",
    )
    _common(pt)
    pt.add_argument("--entry", required=True, metavar="ID")
    pt.add_argument(
        "spec",
        nargs="*",
        metavar="KEY=VALUE",
        help="gamma, gamma1, gamma2, epsilon as rationals; rho, theta as expressions",
    )

    pp = sub.add_parser("parse", help="print the canonical form of an expression")
    pp.add_argument("expression")

    ps = sub.add_parser("serve", help="run the HTTP service")
    ps.add_argument("--catalog", default=None, metavar="PATH")
    ps.add_argument("--host", default="127.0.0.1")
    ps.add_argument("--port", type=int, default=8000)

    return top


def _load(args) -> list[CatalogEntry]:
    path = args.catalog or default_catalog_path()
    return load_catalog(path)


def _select(entries: list[CatalogEntry], ids: list[str] | None) -> list[CatalogEntry]:
    if not ids:
        return entries
    by_id = {e.id: e for e in entries}
    missing = [i for i in ids if i not in by_id]
    if missing:
        raise LieverifyError(f"unknown entry id(s): {', '.join(missing)}")
    return [by_id[i] for i in ids]


def _resolve_seed(args) -> int:
    return args.seed if args.seed is not None else _default_seed()


def cmd_verify(args) -> int:
    seed = _resolve_seed(args)
    if args.points < 8:
        print("lieverify: --points must be at least 8", file=sys.stderr)
        return USAGE_EXIT
    if args.jobs < 1:
        print("lieverify: --jobs must be at least 1", file=sys.stderr)
        return USAGE_EXIT
    entries = _select(_load(args), args.entry)
    reports = verify_catalog(entries, seed=seed, points=args.points, jobs=args.jobs)

    if args.format == "jsonl":
        for r in reports:
            for rec in entry_records(r):
                print(json.dumps(rec, sort_keys=True))
        print(json.dumps({"check": "summary", "seed": seed, **summarize(reports)},
                         sort_keys=True))
    else:
        for r in reports:
            line = f"{r.id:24s} {r.status}"
            if r.status != "pass" and r.note:
                line += f"  [{r.note}]"
            print(line)
            if r.status == "unexpected-fail":
                for rec in entry_records(r):
                    v = str(rec.get("verdict", ""))
                    if v.startswith("fail") or v == "nonzero" or v.startswith("error"):
                        print(f"    {rec['check']}: {v}")
        s = summarize(reports)
        print(
            f"summary: {s['pass']} pass, {s['known-discrepancy']} known-discrepancy, "
            f"{s['unexpected-fail']} unexpected-fail, {s['unexpected-pass']} unexpected-pass"
        )

    return FAIL_EXIT if any(r.status == "unexpected-fail" for r in reports) else 0


def cmd_commutators(args) -> int:
    seed = _resolve_seed(args)
    entries = _select(_load(args), [args.entry])
    entry = entries[0]
    bindings = instantiate_params(entry, seed)
    fields = entry.parsed_generators()
    domain = entry.domain()
    out = []
    for bi, binding in enumerate(bindings):
        bfields = tuple(_bind_field(f, binding) for f in fields)
        rec: dict = {"id": entry.id, "binding": {k: str(v) for k, v in sorted(binding.items())}}
        try:
            c = structure_constants(
                bfields, seed=seed, key=f"{entry.id}|b{bi}|sc", domain=domain
            )
            rec["brackets"] = bracket_strings(c)
            m = match_algebra(c)
            rec["matched"] = m.name if m else None
            if m and m.parameter:
                rec["parameter"] = f"{m.parameter[0]} = {m.parameter[1]}"
        except LieverifyError as err:
            rec["error"] = str(err)
        out.append(rec)

    if args.format == "jsonl":
        for rec in out:
            print(json.dumps(rec, sort_keys=True))
        return 0
    for rec in out:
        if rec["binding"]:
            bound = ", ".join(f"{k} = {v}" for k, v in rec["binding"].items())
            print(f"{rec['id']} with {bound}:")
        else:
            print(f"{rec['id']}:")
        if "error" in rec:
            print(f"  bracket computation failed: {rec['error']}")
            continue
        for line in rec["brackets"]:
            print(f"  {line}")
        print(f"  matched table: {rec['matched'] or 'none'}"
              + (f" ({rec['parameter']})" if "parameter" in rec else ""))
    return 0


def _parse_transform_spec(pairs: list[str]) -> EquivalenceTransform:
    kw: dict = {}
    for item in pairs:
        if "=" not in item:
            raise LieverifyError(f"transform spec item {item!r} is not KEY=VALUE")
        key, _, val = item.partition("=")
        key = key.strip()
        val = val.strip()
        if key in ("gamma", "gamma1", "gamma2"):
            try:
                kw[key] = Fraction(val)
            except (ValueError, ZeroDivisionError) as err:
                raise LieverifyError(f"bad rational for {key}: {val!r}") from err
        elif key == "epsilon":
            if val not in ("1", "-1", "+1"):
                raise LieverifyError("epsilon must be 1 or -1")
            kw[key] = int(val)
        elif key in ("rho", "theta"):
            kw[key] = parse_expr(val)
        else:
            raise LieverifyError(f"unknown transform key {key!r}")
    kw.setdefault("gamma", Fraction(1))
    return EquivalenceTransform(**kw)


def cmd_transform(args) -> int:
    seed = _resolve_seed(args)
    if args.points < 8:
        print("lieverify: --points must be at least 8", file=sys.stderr)
        return USAGE_EXIT
    entries = _select(_load(args), [args.entry])
    entry = entries[0]
    T = _parse_transform_spec(args.spec)

    bindings = instantiate_params(entry, seed)
    fields = entry.parsed_generators()
    F = entry.parsed_F()
    base_dom = entry.domain()
    new_dom = pushforward_domain(T, base_dom)

    ok = True
    records = []
    for bi, binding in enumerate(bindings):
        bfields = [_bind_field(f, binding) for f in fields]
        bF = _bind(F, binding)
        Ft = transform_F(T, bF)
        pushed = [pushforward_field(T, f) for f in bfields]
        key = f"{entry.id}|T|b{bi}"

        c_old = structure_constants(
            tuple(bfields), seed=seed, key=key + "|sc0", domain=base_dom
        )
        c_new = structure_constants(
            tuple(pushed), seed=seed, key=key + "|sc1", domain=new_dom
        )
        preserved = c_old == c_new

        verdicts = [
            verify_pair(g, Ft, seed=seed, key=f"{key}|g{gi}", domain=new_dom,
                        points=args.points)
            for gi, g in enumerate(pushed)
        ]
        all_ok = preserved and all(v.ok for v in verdicts)
        ok = ok and all_ok
        records.append(
            {
                "id": entry.id,
                "binding": {k: str(v) for k, v in sorted(binding.items())},
                "transformed_F": print_expr(Ft),
                "generators": [str(g) for g in pushed],
                "structure_constants_preserved": preserved,
                "reverified": all(v.ok for v in verdicts),
                "seed": seed,
            }
        )

    if args.format == "jsonl":
        for rec in records:
            print(json.dumps(rec, sort_keys=True))
    else:
        print(f"transform: gamma={T.gamma} gamma1={T.gamma1} gamma2={T.gamma2} "
              f"epsilon={T.epsilon} rho={print_expr(T.rho)} theta={print_expr(T.theta)}")
        for rec in records:
            if rec["binding"]:
                print("binding " + ", ".join(f"{k} = {v}" for k, v in rec["binding"].items()))
            print(f"  F~ = {rec['transformed_F']}")
            for gi, g in enumerate(rec["generators"], start=1):
                print(f"  e{gi}~ = {g}")
            print(f"  structure constants preserved: {rec['structure_constants_preserved']}")
            print(f"  re-verification: {'pass' if rec['reverified'] else 'FAIL'}")

    if entry.expected == "pass" and not ok:
        return FAIL_EXIT
    return 0


def cmd_parse(args) -> int:
    e = parse_expr(args.expression)
    print(print_expr(normalize(e)))
    return 0


def cmd_serve(args) -> int:
    try:
        import uvicorn
    except ImportError:
        print("lieverify: uvicorn is not installed", file=sys.stderr)
        return USAGE_EXIT
    from .service import create_app

    app = create_app(catalog_path=args.catalog)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


_COMMANDS = {
    "verify": cmd_verify,
    "commutators": cmd_commutators,
    "transform": cmd_transform,
    "parse": cmd_parse,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ParseError as err:
        print(f"lieverify: parse error: {err}", file=sys.stderr)
        return USAGE_EXIT
    except NonInvertible as err:
        print(f"lieverify: bad transform: {err}", file=sys.stderr)
        return USAGE_EXIT
    except LieverifyError as err:
        print(f"lieverify: {err}", file=sys.stderr)
        return USAGE_EXIT


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
