"""Command-line interface: fmt, bench, check-factory, serve.

Exit codes: 0 success, 1 input error, 2 no layout, 3 factory counterexample.
"""

from __future__ import annotations

import argparse
import sys

from .bench import FAMILIES, BenchSpec, run_bench
from .costs import CHECKABLE_FACTORIES, FACTORIES, check_factory_validity
from .frontends import ParseError, StyleConfig, json_to_doc, parse_doc_ir, sexp_to_doc
from .resolver import ResolverConfig, print_doc
from .semantics import NoLayoutError

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_NO_LAYOUT = 2
EXIT_COUNTEREXAMPLE = 3


def _add_width_args(p):
    p.add_argument("--page-width", type=int, default=80)
    p.add_argument("--computation-width", type=int, default=100)
    p.add_argument("--factory", choices=sorted(FACTORIES), default="quadratic")


def build_parser():
    parser = argparse.ArgumentParser(prog="optiprint", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = sub.add_parser("fmt", help="format a file (or stdin) optimally")
    fmt.add_argument("--syntax", choices=("json", "sexp", "docir"), default="json")
    _add_width_args(fmt)
    fmt.add_argument("--indent", type=int, default=2, help="indent width for JSON")
    fmt.add_argument("--report-tainted", action="store_true")
    fmt.add_argument("input", nargs="?", default="-", help="input file, or - for stdin")

    bench = sub.add_parser("bench", help="run a seeded benchmark family")
    bench.add_argument("--family", choices=FAMILIES, required=True)
    bench.add_argument("--size", type=int, required=True)
    bench.add_argument("--seed", type=int, default=0)
    _add_width_args(bench)
    bench.add_argument("--dump", help="write the resulting layout to this file")

    chk = sub.add_parser("check-factory", help="randomized cost-factory validity check")
    chk.add_argument("name")
    chk.add_argument("--trials", type=int, default=10000)
    chk.add_argument("--seed", type=int, default=0)
    chk.add_argument("--page-width", type=int, default=6)

    serve = sub.add_parser("serve", help="run the HTTP formatting service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)

    return parser


def cmd_fmt(args):
    try:
        if args.input == "-":
            source = sys.stdin.read()
        else:
            with open(args.input, "r", encoding="utf-8") as f:
                source = f.read()
    except OSError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_INPUT_ERROR

    style = StyleConfig(indent_width=args.indent)
    try:
        if args.syntax == "json":
            doc = json_to_doc(source, style)
        elif args.syntax == "sexp":
            doc = sexp_to_doc(source, style)
        else:
            doc = parse_doc_ir(source)
    except (ParseError, ValueError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_INPUT_ERROR

    factory = FACTORIES[args.factory](args.page_width)
    cfg = ResolverConfig(factory=factory, width_limit=args.computation_width)
    try:
        result = print_doc(doc, cfg)
    except NoLayoutError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_NO_LAYOUT
    sys.stdout.write("\n".join(result.layout) + "\n")
    if args.report_tainted:
        print("tainted: %s" % ("yes" if result.tainted else "no"), file=sys.stderr)
    return EXIT_OK


def cmd_bench(args):
    try:
        spec = BenchSpec(
            family=args.family,
            size=args.size,
            seed=args.seed,
            page_width=args.page_width,
            width_limit=args.computation_width,
            factory_name=args.factory,
        )
    except ValueError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_INPUT_ERROR
    report = run_bench(spec)
    print("gen_ms: %.3f" % report.gen_ms)
    print("time_ms: %.3f" % report.time_ms)
    print("lines: %d" % report.lines)
    print("tainted: %s" % ("yes" if report.tainted else "no"))
    if args.dump:
        with open(args.dump, "w", encoding="utf-8") as f:
            f.write("\n".join(report.layout) + "\n")
    return EXIT_OK


def cmd_check_factory(args):
    cls = CHECKABLE_FACTORIES.get(args.name)
    if cls is None:
        print("error: unknown factory %r" % args.name, file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        report = check_factory_validity(cls(args.page_width), args.trials, args.seed)
    except ValueError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_INPUT_ERROR
    print(report.describe())
    return EXIT_OK if report.ok else EXIT_COUNTEREXAMPLE


def cmd_serve(args):
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "fmt":
        return cmd_fmt(args)
    if args.command == "bench":
        return cmd_bench(args)
    if args.command == "check-factory":
        return cmd_check_factory(args)
    return cmd_serve(args)


if __name__ == "__main__":
    sys.exit(main())
