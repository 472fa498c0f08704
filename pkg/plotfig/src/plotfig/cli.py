"""plotfig <kind> <in.csv> <out.img> [--sqrt-n <value>] [--gauss]

Exit codes: 0 success, 1 validation/schema failure, 2 I/O failure.
"""

from __future__ import annotations

import argparse
import sys

from .render import KINDS, PlotJob, SchemaError, render


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, "%s: error: %s\n" % (self.prog, message))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="plotfig", description=__doc__.splitlines()[0])
    parser.add_argument("kind", choices=KINDS)
    parser.add_argument("csv_path", metavar="in.csv")
    parser.add_argument("out_path", metavar="out.img")
    parser.add_argument("--sqrt-n", type=float, help="draw a vertical reference line here")
    parser.add_argument("--gauss", action="store_true", help="overlay a moment-matched normal curve")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    job = PlotJob(
        kind=args.kind,
        csv_path=args.csv_path,
        out_path=args.out_path,
        sqrt_n=args.sqrt_n,
        gauss=args.gauss,
    )
    try:
        render(job)
    except SchemaError as exc:
        print("plotfig: schema error: %s" % exc, file=sys.stderr)
        return 1
    except ValueError as exc:
        print("plotfig: error: %s" % exc, file=sys.stderr)
        return 1
    except OSError as exc:
        print("plotfig: i/o error: %s" % exc, file=sys.stderr)
        return 2
    return 0


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
