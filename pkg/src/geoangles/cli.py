"""Command-line interface.

Exit codes: 0 ok, 2 golden mismatch, 3 pole, 4 precision unreachable,
64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from decimal import Decimal

from .angles import format_angle, parse
from .convergence import convergence_rows, fit_decay
from .errors import DomainError, ParseError, PoleError
from .euler_tables import TABLES, golden_diff
from .identities import IDENTITIES, verify_identity
from .pi_methods import METHODS, PrecisionUnreachable, compute_pi
from .precision import DEFAULT_DIGITS, PrecisionConfig
from .series import TruncationSpec, tangent_series

EXIT_OK = 0
EXIT_GOLDEN = 2
EXIT_POLE = 3
EXIT_UNREACHABLE = 4
EXIT_USAGE = 64

PRECISION_ENV = "GEOANGLES_PRECISION"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if not raw:
        return DEFAULT_DIGITS
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{PRECISION_ENV} must be an integer, got {raw!r}")


def _angle(text: str):
    try:
        return parse(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _ratios(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad ratio list {text!r}")
    bad = [r for r in values if r not in (2, 3, 4, 5)]
    if bad or not values:
        raise argparse.ArgumentTypeError(f"ratios must be drawn from 2,3,4,5; got {text!r}")
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-P", "--precision", type=int, default=None, help="working digits (default 40 or $%s)" % PRECISION_ENV)
    common.add_argument("--output", choices=("text", "json", "csv"), default=None)
    common.add_argument("--euler-style", action="store_true", help="decimal comma and degree/prime glyphs")
    common.add_argument("--decimal-minutes", action="store_true", help="print minute fractions as decimals")
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="geoangles", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("table", parents=[common], help="reproduce a historical table")
    p.add_argument("which", choices=sorted(TABLES))

    p = sub.add_parser("verify", parents=[common], help="check an identity on random angles")
    p.add_argument("identity", choices=sorted(IDENTITIES))
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--angle", type=_angle, action="append", help="check this angle instead (repeatable)")

    p = sub.add_parser("series", parents=[common], help="evaluate a tangent series")
    p.add_argument("--ratio", type=int, choices=(2, 3, 4, 5), default=2)
    p.add_argument("--arc", type=_angle, required=True)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--epsilon", type=Decimal, default=None, help="stop once a term falls below this")
    p.add_argument("--tail", choices=("asymptotic", "rigorous"), default="asymptotic")

    p = sub.add_parser("converge", parents=[common], help="error per depth for several ratios")
    p.add_argument("--ratios", type=_ratios, default=[2, 3, 4, 5])
    p.add_argument("--arc", type=_angle, default=parse("90d"))
    p.add_argument("--max-depth", type=int, default=20)

    p = sub.add_parser("pi", parents=[common], help="compute pi by one of the series")
    p.add_argument("--method", choices=METHODS, default="tangent")
    p.add_argument("--digits", type=int, default=15)
    p.add_argument("--ratio", type=int, choices=(2, 3, 4, 5), default=2, help="ratio for the tangent method")
    p.add_argument("--euler-pipeline", action="store_true", help="reproduce the 7-place historical value")
    return parser


def _num(d, euler_style: bool) -> str:
    text = d if isinstance(d, str) else str(d)
    return text.replace(".", ",") if euler_style else text


def cmd_table(args, cfg, out) -> int:
    table = TABLES[args.which](cfg)
    diff = golden_diff(table)
    fmt = args.output or "text"
    if fmt == "json":
        data = table.to_json()
        data["golden_match"] = diff is None
        json.dump(data, out, indent=2, ensure_ascii=False)
        out.write("\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["label", "value", "kind"])
        for line, row in zip(table.lines(args.euler_style), table.rows):
            label, value = line.split(";", 1)
            w.writerow([label, value, row.kind])
        w.writerow(["π" if args.euler_style else "pi", table.lines(args.euler_style)[-1].split(";", 1)[1], "final"])
    else:
        lines = table.lines(args.euler_style)
        width = max(len(line.split(";", 1)[0]) for line in lines[:-1])
        for line in lines[:-1]:
            label, value = line.split(";", 1)
            out.write(f"{label:<{width}} = {value}\n")
        label, value = lines[-1].split(";", 1)
        out.write(f"{label} = {value}\n")
    for note in table.diagnostics:
        print(f"note: {note}", file=sys.stderr)
    if diff is not None:
        line, expected, got = diff
        print(f"golden mismatch at line {line}: expected {expected!r}, got {got!r}", file=sys.stderr)
        return EXIT_GOLDEN
    return EXIT_OK


def cmd_verify(args, cfg, out) -> int:
    reports = verify_identity(args.identity, args.samples, cfg, seed=args.seed, angles=args.angle)
    worst = max((abs(r.residual) for r in reports), default=None)
    failed = sum(not r.passed for r in reports)
    fmt = args.output or "text"
    if fmt == "json":
        json.dump(
            {
                "identity": args.identity,
                "samples": len(reports),
                "precision": cfg.working_digits,
                "max_residual": None if worst is None else str(worst.rounded(6)),
                "failed": failed,
            },
            out,
            indent=2,
        )
        out.write("\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["sample", "residual", "passed"])
        for i, r in enumerate(reports):
            w.writerow([i, str(r.residual.rounded(6)), r.passed])
    else:
        out.write(f"identity      {args.identity}\n")
        out.write(f"samples       {len(reports)}\n")
        out.write(f"precision     {cfg.working_digits}\n")
        out.write(f"tolerance     1E-{cfg.working_digits - 3}\n")
        out.write(f"max residual  {'n/a' if worst is None else worst.rounded(6)}\n")
        out.write(f"failed        {failed}\n")
    return EXIT_OK if failed == 0 else 1


def cmd_series(args, cfg, out) -> int:
    if args.epsilon is not None:
        depth = TruncationSpec.threshold(args.epsilon)
    elif args.depth is not None:
        depth = args.depth
    else:
        raise UsageError("series needs --depth or --epsilon")
    res = tangent_series(args.arc, args.ratio, depth, cfg, tail=args.tail)
    style = "historical" if args.euler_style else "ascii"
    fmt = args.output or "text"
    if fmt == "json":
        data = res.to_json()
        data["ratio"] = args.ratio
        data["arc"] = args.arc.to_json()
        json.dump(data, out, indent=2, ensure_ascii=False)
        out.write("\n")
        return EXIT_OK
    rows = [
        (t.k, t.label, format_angle(t.angle, style, args.decimal_minutes), _num(t.value.rounded(), args.euler_style))
        for t in res.terms
    ]
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["k", "label", "angle", "value"])
        w.writerows(rows)
        return EXIT_OK
    for k, label, _, value in rows:
        out.write(f"{k:>3}  {label:<32} {value}\n")
    out.write(f"value              {_num(res.value.rounded(), args.euler_style)}\n")
    out.write(f"depth              {res.depth_used}{'' if res.converged else ' (cap reached)'}\n")
    if res.tail_estimate is not None:
        out.write(f"tail ({res.tail_bound_kind:<10}) {_num(res.tail_estimate.rounded(), args.euler_style)}\n")
    out.write(f"1/s                {_num(res.limit.rounded(), args.euler_style)}\n")
    out.write(f"telescoping resid. {res.identity_residual.rounded(6)}\n")
    return EXIT_OK


def cmd_converge(args, cfg, out) -> int:
    rows = convergence_rows(args.ratios, args.arc, args.max_depth, cfg)
    fits = {r: fit_decay([x for x in rows if x.ratio == r]) for r in args.ratios}
    fmt = args.output or "csv"
    if fmt == "json":
        json.dump(
            {
                "arc": args.arc.to_json(),
                "rows": [{"ratio": x.ratio, "depth": x.depth, "abs_error": str(x.abs_error.rounded(8))} for x in rows],
                "decay_per_step": {str(r): None if f is None else str(round(f, 4)) for r, f in fits.items()},
            },
            out,
            indent=2,
        )
        out.write("\n")
        return EXIT_OK
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["ratio", "depth", "abs_error"])
        for x in rows:
            w.writerow([x.ratio, x.depth, str(x.abs_error.rounded(8))])
        fit_out = sys.stderr
    else:
        for x in rows:
            out.write(f"r={x.ratio}  n={x.depth:>3}  |error|={x.abs_error.rounded(8)}\n")
        fit_out = out
    for r, f in fits.items():
        expected = (Decimal(r * r)).log10()
        shown = "n/a" if f is None else f"{round(f, 4)}"
        print(f"# ratio {r}: error falls by 10^-{shown} per step (log10 r^2 = {round(expected, 4)})", file=fit_out)
    return EXIT_OK


def cmd_pi(args, cfg, out) -> int:
    res = compute_pi(args.method, args.digits, cfg, ratio=args.ratio, euler_pipeline=args.euler_pipeline)
    fmt = args.output or "text"
    historical = res.historical or args.euler_style
    if fmt == "json":
        json.dump(res.to_json(), out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["method", "digits", "depth", "pi", "reference", "matches"])
        w.writerow([res.method, res.digits, res.depth, res.text, res.reference, res.matches])
    else:
        out.write(f"{_num(res.text, historical)}\n")
        if res.historical:
            print(f"note: historical pipeline; reference pi to {res.digits} places is {res.reference}", file=sys.stderr)
        else:
            print(f"note: depth {res.depth}, error bound {res.error_bound.rounded(3)}", file=sys.stderr)
    return EXIT_OK if res.matches else 1


COMMANDS = {
    "table": cmd_table,
    "verify": cmd_verify,
    "series": cmd_series,
    "converge": cmd_converge,
    "pi": cmd_pi,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        digits = args.precision if args.precision is not None else _default_precision()
        cfg = PrecisionConfig(digits)
        return COMMANDS[args.command](args, cfg, out)
    except PoleError as exc:
        print(f"pole: {exc}" + (f" [{exc.where}]" if exc.where else ""), file=sys.stderr)
        return EXIT_POLE
    except PrecisionUnreachable as exc:
        print(f"unreachable: {exc}", file=sys.stderr)
        return EXIT_UNREACHABLE
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
