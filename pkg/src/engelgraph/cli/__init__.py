"""Command line: ``engel analyze | verify | survey | export``.

Exit codes: 0 success, 1 usage or parse error, 2 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

EXIT_OK, EXIT_USAGE, EXIT_CAP = 0, 1, 2


def _mode(args):
    from ..engel import GraphMode

    if args.mode == "gamma_n" and args.n is None:
        raise ValueError("--mode gamma_n needs --n")
    return GraphMode.parse(args.mode, args.n)


def _print_record(rec: dict, fmt: str):
    if fmt == "json":
        print(json.dumps(rec, sort_keys=True))
    else:
        width = max(len(k) for k in rec)
        for k, v in rec.items():
            print(f"{k:<{width}}  {v}")


def cmd_analyze(args) -> int:
    from ..report import analyze

    rec = analyze(args.expr, _mode(args), diameter=args.diameter,
                  equivariance=False if args.no_equivariance else None)
    d = rec.to_dict()
    _print_record(d, args.output_format)
    if args.store:
        from .store import append_records

        append_records(args.store, [d])
    return EXIT_OK


def cmd_verify(args) -> int:
    from ..verify import run_suite

    results = run_suite(args.suite, budget_seconds=args.budget)
    failed = 0
    for r in results:
        print(r.line(), flush=True)
        failed += r.status == "FAIL"
    print(f"{len(results) - failed}/{len(results)} claims passed or inconclusive")
    return EXIT_OK if failed == 0 else EXIT_USAGE


def survey_expressions(family: str, lo: int, hi: int) -> list[str]:
    from ..fields import is_prime

    if family in ("PSL2", "PSL"):
        return [f"PSL(2,{p})" for p in range(lo, hi + 1) if p > 2 and is_prime(p)]
    if family in ("S", "A", "C", "D", "Q", "Sz"):
        return [f"{family}({k})" for k in range(lo, hi + 1)]
    raise ValueError(f"unknown survey family {family!r}")


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"range must look like LO..HI, got {text!r}")
    return int(lo), int(hi)


def cmd_survey(args) -> int:
    from ..catalog import ConstraintError
    from ..group import CapExceeded
    from ..report import analyze
    from .store import append_records, read_store, record_key

    mode = _mode(args)
    lo, hi = _parse_range(args.range)
    exprs = survey_expressions(args.family, lo, hi)
    done, corrupt = read_store(args.store)
    for no in corrupt:
        print(f"warning: corrupt store line {no} skipped", file=sys.stderr)
    have = {record_key(r) for r in done}
    added = 0
    status = EXIT_OK
    for e in exprs:
        if (e, str(mode), mode.n) in have:
            continue
        try:
            rec = analyze(e, mode, diameter=args.diameter)
        except ConstraintError as exc:
            print(f"skip {e}: {exc}", file=sys.stderr)
            continue
        except CapExceeded as exc:
            print(f"skip {e}: {exc}", file=sys.stderr)
            status = EXIT_CAP
            continue
        append_records(args.store, [rec.to_dict()])
        added += 1
        print(f"{e}\t{rec.verdict}\t{rec.wall_time:.2f}s", flush=True)
    print(f"{added} new record(s)")
    return status


def cmd_export(args) -> int:
    from ..report import export_graph

    text = export_graph(args.expr, _mode(args), args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="engel", description="Engel graphs of finite groups")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_flags(sp):
        sp.add_argument("--mode", choices=["gamma", "gamma_n", "lambda", "delta"], default="gamma")
        sp.add_argument("--n", type=int, default=None, help="Engel length for --mode gamma_n")

    a = sub.add_parser("analyze", help="connectivity report for one group")
    a.add_argument("expr", help='group expression, e.g. "PSL(2,11)"')
    graph_flags(a)
    a.add_argument("--diameter", action="store_true", help="also compute diameters")
    a.add_argument("--no-equivariance", action="store_true", help="evaluate every row directly")
    a.add_argument("--store", help="append the record to this result store")
    a.add_argument("--output-format", choices=["text", "json"], default="text")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="re-check the claim suites")
    v.add_argument("suite", choices=["core", "extended", "nightly"], nargs="?", default="core")
    v.add_argument("--budget", type=float, default=4 * 3600.0, help="seconds for budgeted claims")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("survey", help="analyze a family over a range, resumably")
    s.add_argument("family", help="PSL2, S, A, C, D, Q")
    s.add_argument("range", help="LO..HI")
    graph_flags(s)
    s.add_argument("--store", required=True)
    s.add_argument("--diameter", action="store_true")
    s.set_defaults(func=cmd_survey)

    e = sub.add_parser("export", help="write the graph as DOT or an edge list")
    e.add_argument("expr")
    graph_flags(e)
    e.add_argument("--format", choices=["dot", "edgelist"], default="edgelist")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    from ..catalog import ConstraintError
    from ..group import CapExceeded
    from .parser import ParseError

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (ParseError, ConstraintError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapExceeded, MemoryError) as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
