"""Command line entry point: ``affinemod run`` and ``affinemod corpus``."""

import argparse
import json
import sys

from . import corpus
from .config import Config, use_config
from .dsl import parse
from .errors import AffineModError, ParseError
from .runner import exit_code, render_text, run, to_document


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_run(args):
    try:
        text = _read(args.script)
    except OSError as exc:
        print(f"affinemod: cannot read {args.script}: {exc.strerror}", file=sys.stderr)
        return 1
    config = Config.from_env(seed=args.seed, max_basis=args.cap_groebner, chain_cap=args.cap_chain)
    try:
        script = parse(text)
    except ParseError as exc:
        if args.json:
            doc = {
                "schema": 1,
                "reports": [],
                "error": {
                    "command": None,
                    "class": "ParseError",
                    "exit_code": exc.exit_code,
                    "message": str(exc),
                    "line": exc.line,
                    "column": exc.column,
                    "expected": exc.expected,
                },
            }
            print(json.dumps(doc, indent=2))
        else:
            print(f"{args.script}:{exc}", file=sys.stderr)
        return exc.exit_code
    with use_config(config):
        reports, error = run(script, timing=args.timing)
    if args.json:
        print(json.dumps(to_document(reports, error, timing=args.timing), indent=2, ensure_ascii=False))
    else:
        sys.stdout.write(render_text(reports, None, timing=args.timing))
        if error is not None:
            echo, exc = error
            print(f"error in '{echo}' ({type(exc).__name__}): {exc}", file=sys.stderr)
    return exit_code(error)


def cmd_corpus(args):
    entries = [n for n in corpus.names() if args.filter is None or args.filter in n]
    if not entries:
        print(f"no corpus entries match {args.filter!r}", file=sys.stderr)
        return 3
    failed = 0
    for name in entries:
        if args.update:
            corpus.update(name)
            print(f"updated {name}")
            continue
        try:
            ok = corpus.check(name)
        except AffineModError as exc:
            print(f"ERROR {name}: {exc}")
            failed += 1
            continue
        print(f"{'ok  ' if ok else 'FAIL'} {name}")
        failed += not ok
    return 1 if failed else 0


def build_parser():
    parser = argparse.ArgumentParser(prog="affinemod", description="Affine modifications and derivations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="execute a script")
    p.add_argument("script", help="script file, or - for stdin")
    p.add_argument("--json", action="store_true", help="emit the versioned JSON report")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--cap-groebner", type=int, default=None, metavar="N", help="maximum basis size")
    p.add_argument("--cap-chain", type=int, default=None, metavar="N", help="largest-ideal chain cap")
    p.add_argument("--timing", action="store_true", help="include per-command wall time")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("corpus", help="replay the worked examples against their golden reports")
    p.add_argument("--filter", default=None, metavar="NAME", help="substring of entry names")
    p.add_argument("--update", action="store_true", help="rewrite the golden files")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
