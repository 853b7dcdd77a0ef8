"""Command-line interface.

Subcommands: test, classify, pairs, enumerate, census, verify.  A field
is selected either with --q (preset or prime order) or with the explicit
--p/--r/--modulus triple.  Output formats: text (default), json, csv;
json and text carry identical numeric content.  Exit codes: 0 all
requested checks pass, 1 a verification mismatch, 2 usage or parse
errors (including budget refusals).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__, verify as verify_mod
from .errors import (
    BudgetExceeded,
    Ortho7Error,
    ParseError,
    UnsupportedOrder,
)
from .families import is_pp_by_table
from .field import FieldSpec, build_field, field_for
from .pairs import (
    count_ops,
    enumerate_ops,
    search_pairs_direct,
    search_pairs_table_based,
)
from .perm import (
    CensusQuery,
    DEFAULT_BUDGET,
    census,
    is_complete_mapping,
    is_orthomorphism,
    is_permutation,
)
from .canon import canonicalize
from .families import table_for
from .poly import format_poly, parse_poly


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ortho7",
        description="degree-7 orthomorphism polynomials over small finite "
                    "fields: tests, classification, pair search, census")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add_field_args(sp):
        sp.add_argument("--q", type=int, help="field order (preset or prime)")
        sp.add_argument("--p", type=int, help="characteristic")
        sp.add_argument("--r", type=int, default=1, help="extension degree")
        sp.add_argument("--modulus",
                        help="comma-separated ascending modulus coefficients")

    def add_common(sp, field=True):
        if field:
            add_field_args(sp)
        sp.add_argument("--format", choices=("text", "json", "csv"),
                        default="text")
        sp.add_argument("--workers", type=int, default=2)
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        sp.add_argument("--out", help="write output to this path")

    sp = sub.add_parser("test", help="property test for one polynomial")
    sp.add_argument("poly", help="polynomial literal ('x^7+2x' or '0,2,...,1')")
    sp.add_argument("--property", choices=("pp", "op", "cpp"), default="pp")
    add_common(sp)

    sp = sub.add_parser("classify", help="canonical form and matching class")
    sp.add_argument("poly")
    add_common(sp)

    sp = sub.add_parser("pairs", help="orthomorphism pair search per family")
    sp.add_argument("--family", type=int, help="family ordinal (default all)")
    sp.add_argument("--all", action="store_true", help="all families")
    sp.add_argument("--method", choices=("direct", "table", "both"),
                    default="direct")
    add_common(sp)

    sp = sub.add_parser("enumerate", help="count or emit all orthomorphisms")
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--emit", help="write one coefficient vector per record "
                                   "to this path")
    add_common(sp)

    sp = sub.add_parser("census", help="exhaustive coefficient-space count")
    sp.add_argument("--degree", type=int, default=7)
    sp.add_argument("--canonical", action="store_true",
                    help="restrict to zero constant term")
    sp.add_argument("--property", choices=("pp", "op", "cpp"), default="op")
    add_common(sp)

    sp = sub.add_parser("verify", help="re-check the published results")
    sp.add_argument("--suite", choices=("paper", "reference"), default="paper",
                    help="verification suite (published-results fixtures)")
    sp.add_argument("--field", type=int,
                    help="restrict the totals check to one order")
    sp.add_argument("--deep", action="store_true",
                    help="include census tiers q=8,11,13")
    sp.add_argument("--deeper", action="store_true",
                    help="census tiers incl. q=17 (hundreds of seconds)")
    sp.add_argument("--audit-n", type=int, default=100_000)
    add_common(sp)
    return p


def resolve_field(args):
    if getattr(args, "workers", 1) < 1:
        raise ParseError("--workers must be >= 1")
    has_q = args.q is not None
    has_explicit = args.p is not None
    if has_q == has_explicit:
        raise ParseError("select the field with exactly one of --q or "
                         "--p/--r/--modulus")
    if has_q:
        return field_for(args.q)
    if args.r > 1:
        if not args.modulus:
            raise ParseError("--modulus is required when --r > 1")
        modulus = tuple(int(v) for v in args.modulus.split(","))
    else:
        modulus = (0, 1)
    return build_field(FieldSpec(args.p, args.r, modulus))


# ---------------------------------------------------------------------------


def _emit(args, payload: dict, text_lines: list[str], csv_rows: list[list]):
    if args.format == "json":
        out = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        out = "\n".join(",".join(str(v) for v in row) for row in csv_rows)
        out += "\n"
    else:
        out = "\n".join(text_lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def cmd_test(args) -> int:
    field = resolve_field(args)
    t0 = time.perf_counter()
    f = parse_poly(field, args.poly)
    checks = {"pp": is_permutation, "op": is_orthomorphism,
              "cpp": is_complete_mapping}
    verdict = checks[args.property](f)
    results = {"poly": format_poly(f), "property": args.property,
               "verdict": verdict}
    lines = [f"{format_poly(f)} over F_{field.q}: {args.property} = {verdict}"]
    if args.property == "pp" and f.degree == 7:
        try:
            entry = is_pp_by_table(f)
        except UnsupportedOrder:
            lines.append("(no class table for this order; direct verdict only)")
        else:
            if entry is None:
                results["family"] = None
                lines.append("class table: no matching family")
            else:
                results["family"] = {"ordinal": entry.ordinal,
                                     "exceptional": entry.exceptional}
                kind = "exceptional" if entry.exceptional else "non-exceptional"
                lines.append(f"class table: family {entry.ordinal} ({kind})")
    payload = {"q": field.q, "command": "test", "results": results,
               "totals": {}, "timings": {"elapsed_s": time.perf_counter() - t0}}
    _emit(args, payload, lines,
          [[field.q, format_poly(f, "vector"), args.property, verdict]])
    return 0


def cmd_classify(args) -> int:
    field = resolve_field(args)
    t0 = time.perf_counter()
    f = parse_poly(field, args.poly)
    entry = is_pp_by_table(f)
    results: dict = {"poly": format_poly(f)}
    lines = []
    if field.p != 7:
        cf, t = canonicalize(f)
        tup = [field.format_element(c) for c in cf.tuple5]
        results["canonical_tuple"] = tup
        results["transform"] = [field.format_element(v) for v in t.as_tuple()]
        lines.append(f"canonical form: ({', '.join(tup)})  [t-index {cf.t_index}]")
        lines.append("witnessing transform (a, b, c, d): "
                     f"({', '.join(results['transform'])})")
    else:
        results["canonical_tuple"] = None
        lines.append("characteristic 7: classification by linear-relation "
                     "search against the class table")
        if entry is not None:
            from .canon import solve_linear_relation

            # same direction as canonicalize: transform sending the input
            # polynomial onto the stored class representative
            witness = solve_linear_relation(entry.poly(field), f)[0]
            results["transform"] = [field.format_element(v)
                                    for v in witness.as_tuple()]
            lines.append("witnessing transform (a, b, c, d): "
                         f"({', '.join(results['transform'])})")
    if entry is None:
        results["family"] = None
        lines.append("not a permutation polynomial")
    else:
        results["family"] = {"ordinal": entry.ordinal,
                             "exceptional": entry.exceptional,
                             "tuple": [field.format_element(c)
                                       for c in entry.coeffs]}
        kind = "exceptional" if entry.exceptional else "non-exceptional"
        lines.append(f"family {entry.ordinal} ({kind})")
    payload = {"q": field.q, "command": "classify", "results": results,
               "totals": {}, "timings": {"elapsed_s": time.perf_counter() - t0}}
    _emit(args, payload, lines,
          [[field.q, format_poly(f, "vector"),
            results["family"]["ordinal"] if entry else ""]])
    return 0


def cmd_pairs(args) -> int:
    field = resolve_field(args)
    t0 = time.perf_counter()
    table = table_for(field.q)
    entries = table.entries
    if args.family is not None and not args.all:
        entries = [table.entries[args.family - 1]]
    fmt = field.format_element
    results = []
    lines = []
    csv_rows = [["q", "family", "method", "alpha", "beta"]]
    agree = True
    for entry in entries:
        recs = {}
        if args.method in ("direct", "both"):
            recs["direct"] = search_pairs_direct(field, entry)
        if args.method in ("table", "both"):
            recs["table"] = search_pairs_table_based(field, entry)
        if args.method == "both":
            same = recs["direct"].pairs == recs["table"].pairs
            agree &= same
        shown = recs.get("direct") or recs.get("table")
        pair_lits = [[fmt(a), fmt(b)] for a, b in shown.pairs]
        rec = {"ordinal": entry.ordinal, "exceptional": entry.exceptional,
               "tuple": [fmt(c) for c in entry.coeffs],
               "pair_count": shown.pair_count, "pairs": pair_lits}
        if args.method == "both":
            rec["methods_agree"] = recs["direct"].pairs == recs["table"].pairs
        results.append(rec)
        lines.append(f"family {entry.ordinal} ({', '.join(rec['tuple'])})"
                     f"{' [exceptional]' if entry.exceptional else ''}: "
                     f"{shown.pair_count} pairs")
        if shown.pairs:
            lines.append("  " + " ".join(f"({a},{b})" for a, b in pair_lits))
        if args.method == "both":
            lines.append(f"  methods agree: {rec['methods_agree']}")
        for a, b in pair_lits:
            csv_rows.append([field.q, entry.ordinal, args.method, a, b])
    total = sum(r["pair_count"] for r in results)
    payload = {"q": field.q, "command": "pairs",
               "results": {"families": results,
                           "methods_agree": agree if args.method == "both" else None},
               "totals": {"pair_total": total},
               "timings": {"elapsed_s": time.perf_counter() - t0}}
    lines.append(f"pair total: {total}")
    _emit(args, payload, lines, csv_rows)
    if args.method == "both" and not agree:
        return 1
    return 0


def cmd_enumerate(args) -> int:
    field = resolve_field(args)
    t0 = time.perf_counter()
    report = count_ops(field.q)
    payload = {"q": field.q, "command": "enumerate",
               "results": report.to_dict(field)["families"],
               "totals": report.to_dict(field)["totals"],
               "timings": {}}
    payload["results_notes"] = report.notes
    lines = [f"q={field.q}: pair_total={report.pair_total} "
             f"op_total={report.op_total} "
             f"(exceptional pairs {report.exceptional_pair_total})"]
    lines += [f"note: {n}" for n in report.notes]
    csv_rows = [["q", "family", "pair_count"]]
    for r in report.per_family:
        csv_rows.append([field.q, r.family.ordinal, r.pair_count])
    if args.emit:
        n = 0
        with open(args.emit, "w") as fh:
            for poly in enumerate_ops(field.q, report):
                coeffs = list(poly.coeffs) + [0] * (8 - len(poly.coeffs))
                fh.write(",".join(field.format_element(c) for c in coeffs))
                fh.write("\n")
                n += 1
        lines.append(f"wrote {n} coefficient vectors to {args.emit}")
        payload["results_emitted"] = n
    payload["timings"]["elapsed_s"] = time.perf_counter() - t0
    _emit(args, payload, lines, csv_rows)
    return 0


def cmd_census(args) -> int:
    field = resolve_field(args)
    query = CensusQuery(field, args.degree, args.canonical, args.property)
    t0 = time.perf_counter()
    count = census(query, workers=args.workers, budget=args.budget)
    dt = time.perf_counter() - t0
    space = query.space()
    payload = {"q": field.q, "command": "census",
               "results": {"degree": args.degree, "canonical": args.canonical,
                           "property": args.property, "count": count},
               "totals": {"count": count, "candidates": space},
               "timings": {"elapsed_s": dt,
                           "candidates_per_s": space / dt if dt else None}}
    lines = [f"q={field.q} degree={args.degree} "
             f"{'canonical ' if args.canonical else ''}{args.property}-census: "
             f"{count}  ({space} candidates in {dt:.2f}s)"]
    _emit(args, payload, lines,
          [[field.q, args.degree, int(args.canonical), args.property, count]])
    return 0


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    if args.field is not None:
        from .pairs import verify_nonexistence
        from .verify import load_reference

        ref = load_reference()
        q = args.field
        want = ref["op_totals"].get(str(q))
        if want is None:
            raise UnsupportedOrder(f"no reference totals for q={q}")
        if q in verify_mod.NONEXISTENCE_ORDERS:
            ok = verify_nonexistence(q)
            got = 0 if ok else -1
        else:
            got = count_ops(q).op_total
            ok = got == want
        payload = {"q": q, "command": "verify",
                   "results": {"op_total": got, "expected": want, "ok": ok},
                   "totals": {"pass": int(ok), "fail": int(not ok)},
                   "timings": {"elapsed_s": time.perf_counter() - t0}}
        _emit(args, payload, [f"q={q}: op_total {got} expected {want}: "
                              f"{'PASS' if ok else 'FAIL'}"],
              [[q, got, want, "pass" if ok else "fail"]])
        return 0 if ok else 1

    results = verify_mod.run_suite(deep=args.deep, deeper=args.deeper,
                                   workers=args.workers, audit_n=args.audit_n)
    ok = all(r.ok for r in results)
    payload = {"q": None, "command": "verify",
               "results": [{"name": r.name, "ok": r.ok, "detail": r.detail,
                            "elapsed_s": r.elapsed} for r in results],
               "totals": {"pass": sum(r.ok for r in results),
                          "fail": sum(not r.ok for r in results)},
               "timings": {"elapsed_s": time.perf_counter() - t0}}
    lines = [r.line() for r in results]
    lines.append(f"{'all checks passed' if ok else 'FAILURES PRESENT'}")
    _emit(args, payload, lines,
          [[r.name, int(r.ok), r.detail] for r in results])
    return 0 if ok else 1


_COMMANDS = {
    "test": cmd_test,
    "classify": cmd_classify,
    "pairs": cmd_pairs,
    "enumerate": cmd_enumerate,
    "census": cmd_census,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    try:
        return _COMMANDS[args.command](args)
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Ortho7Error as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
