"""Command-line front end for the verification campaigns.

Exit codes: 0 when every trial passes, 1 on a bound violation, 2 when a
generated map leaves the spectral unit ball, 3 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .campaign import CampaignConfig, example_table, example_table_ok, run_campaign
from .errors import InvalidInputError

EXIT_OK, EXIT_VIOLATION, EXIT_GENERATOR, EXIT_USAGE = 0, 1, 2, 3

COMMANDS = {
    "verify-thm1": ("thm1", "two-point inequality for random holomorphic disc maps"),
    "verify-thm2": ("thm2", "growth bound for random self-maps of the spectral ball"),
    "verify-globevnik": ("globevnik", "disc maps vanishing at a point"),
    "verify-ransford-white": ("ransford-white", "self-maps fixing the origin"),
    "sharpness": ("sharpness", "equality for the extremal maps"),
    "counterexample": ("counterexample", "failure of the naive self-map bound"),
    "subharmonic": ("subharmonic", "sub-mean-value property on circles"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _sizes(text: str) -> tuple:
    try:
        sizes = tuple(int(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not sizes or min(sizes) < 2:
        raise argparse.ArgumentTypeError("matrix sizes must be at least 2")
    return sizes


def _common(p):
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--quiet", action="store_true", help="suppress the summary line")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spectral-schwarz", description="Numerical checks of Schwarz-type bounds on the spectral unit ball.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, helptext) in COMMANDS.items():
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--n", type=_sizes, default=(2, 3, 4), help="matrix sizes, e.g. 2,3,4")
        p.add_argument("--trials", type=int, default=100)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--degree", type=int, default=3, help="polynomial degree bound for disc maps")
        p.add_argument("--depth", type=int, default=3, help="composition depth bound for self-maps")
        p.add_argument("--pairs", type=int, default=5, help="point pairs or matrices per sampled map")
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--per-trial", action="store_true", help="include every trial in the JSON report")
        _common(p)
    p = sub.add_parser("repro-example", help="spectral radius of the nilpotent-origin example maps")
    _common(p)
    return parser


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)


def _repro(args) -> int:
    rows = example_table()
    ok = example_table_ok(rows)
    if args.format == "json":
        text = json.dumps({"rows": rows, "pass": ok}, sort_keys=True, indent=2)
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    _emit(text, args.out)
    if not args.quiet and args.out is not None:
        print(f"repro-example: rows={len(rows)} pass={ok}")
    return EXIT_OK if ok else EXIT_VIOLATION


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "repro-example":
            return _repro(args)
        config = CampaignConfig(
            theorem=COMMANDS[args.command][0],
            n=args.n,
            trials=args.trials,
            degree=args.degree,
            depth=args.depth,
            seed=args.seed,
            tol=args.tol,
            pairs=args.pairs,
            per_trial=args.per_trial,
            jobs=max(1, args.jobs),
        )
        report = run_campaign(config)
        _emit(report.to_json() if args.format == "json" else report.to_csv(), args.out)
    except InvalidInputError as exc:
        print(f"spectral-schwarz: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"spectral-schwarz: cannot write report: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not args.quiet and args.out is not None:
        print(report.summary())
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
