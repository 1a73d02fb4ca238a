"""Command-line entry point: ``traceideal run FILE`` and ``traceideal check``."""

from __future__ import annotations

import argparse
import sys

from ..core import order_from_name
from .session import Options, run_text


def _common(p: argparse.ArgumentParser):
    p.add_argument("--json", action="store_true", help="one JSON object per command")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks (default 0)")
    p.add_argument("--order", choices=("degrevlex", "lex"), default="degrevlex")
    p.add_argument("--oracle", choices=("groebner", "linear", "both"), default="both")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="traceideal", description="Trace ideals and Gorenstein tests.")
    sub = parser.add_subparsers(dest="cmd", required=True)
    run = sub.add_parser("run", help="execute a session file ('-' reads stdin)")
    run.add_argument("file")
    _common(run)
    check = sub.add_parser("check", help="run a built-in verification suite")
    check.add_argument("--suite", choices=("paper", "property", "all"), default="all")
    _common(check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    options = Options(json=args.json, seed=args.seed, order=order_from_name(args.order), oracle=args.oracle)
    if args.cmd == "run":
        try:
            if args.file == "-":
                data = sys.stdin.buffer.read()
            else:
                with open(args.file, "rb") as fh:
                    data = fh.read()
        except OSError as exc:
            print(f"cannot read {args.file}: {exc.strerror}", file=sys.stderr)
            return 2
        result = run_text(data, options)
        for line in result.lines:
            print(line)
        if result.error:
            print(result.error, file=sys.stderr)
        return result.exit_code

    from .suites import run_suite

    ok = run_suite(args.suite, options, out=sys.stdout)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
