"""``mapspace`` command-line interface.

Exit status: 0 success, 1 a non-splitting verdict under ``--strict``, 2 bad
input (syntax, names, degrees, connectivity, cap), 3 internal-consistency
failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from . import report as R
from .commands import (EXIT_INPUT, Options, cmd_analyze, cmd_decompose, cmd_map_model, cmd_selftest,
                       cmd_split_check, guard)
from .parser import InputError, parse


def _rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}")


def _positive_int(s: str) -> int:
    try:
        n = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=_positive_int,
                        help="degree bound (default: 2 x largest generator degree + 2)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", type=Path, help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="mapspace", description="Rational models of based mapping spaces.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="invariants of the models in a file")
    a.add_argument("file", type=Path)
    a.add_argument("blocks", nargs="*", help="block names (default: all)")
    a.add_argument("--q", type=_rational, help="value of the attaching scale q")

    m = sub.add_parser("map-model", parents=[common], help="model of F_*(X, Y)")
    m.add_argument("file", type=Path)
    m.add_argument("--x", help="lie block modelling X")
    m.add_argument("--y", help="sullivan block modelling Y")
    m.add_argument("--q", type=_rational, help="value of the attaching scale q")
    m.add_argument("--minimal", action="store_true", help="also reduce to the minimal model")

    s = sub.add_parser("split-check", parents=[common], help="does attaching a cell split F_*(-, Y)?")
    s.add_argument("file", type=Path)
    s.add_argument("--attach", help="attach declaration (default: the only one)")
    s.add_argument("--y", help="sullivan block modelling Y")
    s.add_argument("--q", type=_rational, help="value of the attaching scale q")
    s.add_argument("--strict", action="store_true", help="exit 1 unless the verdict is Splits")

    d = sub.add_parser("decompose", parents=[common], help="cell-by-cell product decomposition")
    d.add_argument("file", type=Path)
    d.add_argument("--x", help="lie block whose generators are the cells")
    d.add_argument("--y", help="sullivan block modelling Y")
    d.add_argument("--q", type=_rational, help="value of the attaching scale q")
    d.add_argument("--strict", action="store_true", help="exit 1 unless every cell splits")

    t = sub.add_parser("selftest", parents=[common], help="run the built-in fixture suite")
    t.add_argument("--only", action="append", help="run only the named fixture (repeatable)")
    return p


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "selftest":
        rep, code = cmd_selftest(Options(cap=args.cap), only=args.only)
    else:
        try:
            mf = parse(args.file)
        except InputError as e:
            print(f"mapspace: {e}", file=sys.stderr)
            return EXIT_INPUT
        opts = Options(cap=args.cap, q=args.q, minimal=getattr(args, "minimal", False),
                       strict=getattr(args, "strict", False))
        if args.command == "analyze":
            rep, code, err = guard(cmd_analyze, mf, opts, args.blocks)
        elif args.command == "map-model":
            rep, code, err = guard(cmd_map_model, mf, opts, x=args.x, y=args.y)
        elif args.command == "split-check":
            rep, code, err = guard(cmd_split_check, mf, opts, attach=args.attach, y=args.y)
        else:
            rep, code, err = guard(cmd_decompose, mf, opts, x=args.x, y=args.y)
        if rep is None:
            print(f"mapspace: {err}", file=sys.stderr)
            return code
    if args.format == "json" or args.out is not None:
        for w in rep["warnings"]:
            print(f"mapspace: warning: {w}", file=sys.stderr)
    _emit(R.to_json(rep) if args.format == "json" else R.to_text(rep), args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
