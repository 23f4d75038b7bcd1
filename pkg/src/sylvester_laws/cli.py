"""Command-line front end.

Exit codes: 0 success, 1 law/brute-force mismatch, 2 invalid arguments,
3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .fock import standard_input
from .hadamard import CapacityError, build_fourier, build_sylvester, log2_exact
from .interference import DEFAULT_BUDGET, BudgetError, Statistics, distribution, format_decimal, format_fraction
from .laws import count_suppressed, suppression_table, table_to_csv, verify_law
from .parallel import default_threads
from .stats import occupancy_profile, occupancy_ratio_curve, ratio_curve_csv

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json", "pretty"), default="csv", help="output format (default: csv)")
    common.add_argument("--out", help="write to this file instead of stdout")
    common.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_BUDGET,
        help="maximum number of output states to enumerate "
        f"(default: $SYLVESTER_LAWS_BUDGET or {DEFAULT_BUDGET})",
    )
    common.add_argument(
        "--threads", type=int, default=default_threads(), help="worker processes (default: CPU count)"
    )
    common.add_argument("--c", type=int, dest="c_flag", help="input block offset c (alternative to the positional)")
    return common


def _stat_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("n", type=int, help="particle count, a power of two")
    p.add_argument("m", type=int, help="mode count, a power of two >= n")
    p.add_argument("rest", nargs="+", metavar="[c] statistics", help="optional block offset c, then boson|fermion")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="sylvester-laws",
        description="Exact multi-particle interference and suppression laws in Sylvester interferometers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("matrix", parents=[common], help="print a Sylvester or Fourier matrix core")
    p.add_argument("kind", choices=("sylvester", "fourier"))
    p.add_argument("size", type=int, help="exponent p for sylvester, mode count m for fourier")

    p = sub.add_parser("dist", parents=[common], help="full output distribution for a standard block input")
    _stat_args(p)

    p = sub.add_parser("verify", parents=[common], help="check the suppression law against brute force")
    _stat_args(p)

    p = sub.add_parser("count", parents=[common], help="count suppressed output states")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("statistics", choices=("boson", "fermion"))
    p.add_argument("--method", choices=("dp", "enumerate"), default="dp")

    sub.add_parser("tables", parents=[common], help="reproduce the boson and fermion suppression tables")

    p = sub.add_parser("figure2", parents=[common], help="occupied-mode statistics plot data")
    p.add_argument("part", choices=("a", "b"))
    return parser


def _parse_c_and_stats(parser, args) -> tuple[int, Statistics]:
    rest = args.rest
    if len(rest) == 1:
        c, stat = args.c_flag or 0, rest[0]
    elif len(rest) == 2:
        try:
            c = int(rest[0])
        except ValueError:
            parser.error(f"invalid block offset {rest[0]!r}")
        stat = rest[1]
    else:
        parser.error("expected [c] statistics")
    if stat not in ("boson", "fermion", "distinguishable"):
        parser.error(f"invalid statistics {stat!r}")
    return c, Statistics(stat)


def _emit(text: str, args) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_matrix(args) -> str:
    U = build_sylvester(args.size) if args.kind == "sylvester" else build_fourier(args.size)
    if args.format == "json":
        return U.to_json() + "\n"
    if args.format == "pretty":
        lines = [f"{args.kind} m={U.m} scale={U.scale_label()}"]
        lines += [" ".join(f"{x:>2}" if isinstance(x, int) else f"{x:.3f}" for x in row) for row in U.entries]
        return "\n".join(lines) + "\n"
    return U.to_csv()


def _cmd_dist(args, c: int, stat: Statistics) -> str:
    U = build_sylvester(log2_exact(args.m))
    table = distribution(U, standard_input(args.n, c, args.m), stat, args.budget, args.threads)
    if args.format == "json":
        return table.to_json() + "\n"
    if args.format == "pretty":
        lines = [f"{stat} n={args.n} m={args.m} input={table.input} total={format_fraction(table.total)}"]
        lines += [f"{str(s):<30} {format_fraction(p):>24} {format_decimal(p)}" for s, p in table.rows]
        return "\n".join(lines) + "\n"
    return table.to_csv()


def _cmd_tables(args) -> str:
    tables = {st: suppression_table(st) for st in (Statistics.BOSON, Statistics.FERMION)}
    if args.format == "json":
        payload = {
            st.value: [
                {"n": n, "m": m, "suppressed": cell.suppressed, "total": cell.total, "decimal": format_decimal(cell.fraction)}
                for (n, m), cell in table.items()
            ]
            for st, table in tables.items()
        }
        return json.dumps(payload, indent=1) + "\n"
    parts = []
    for st, table in tables.items():
        parts.append(f"# {st.value}\n" + table_to_csv(table, st))
    return "".join(parts)


def _cmd_figure2(args) -> str:
    if args.part == "a":
        curves = {n: occupancy_ratio_curve(n, [m for m in (2, 4, 8, 16, 32) if m >= n]) for n in (2, 4, 8)}
        if args.format == "json":
            return json.dumps(
                {str(n): [[m, format_fraction(r), format_decimal(r)] for m, r in c] for n, c in curves.items()},
                indent=1,
            ) + "\n"
        return ratio_curve_csv(curves)
    inp = standard_input(8, 0, 8)
    sylvester = build_sylvester(3)
    profiles = {
        "sylvester-boson": occupancy_profile(sylvester, inp, Statistics.BOSON, budget=args.budget, threads=args.threads),
        "fourier-boson": occupancy_profile(build_fourier(8), inp, Statistics.BOSON, budget=args.budget, threads=args.threads),
        "distinguishable": occupancy_profile(
            sylvester, inp, Statistics.DISTINGUISHABLE, budget=args.budget, threads=args.threads
        ),
    }
    if args.format == "json":
        payload = {
            name: {
                "mean": format_decimal(prof.mean),
                "histogram": {str(k): format_decimal(p) for k, p in sorted(prof.histogram.items())},
            }
            for name, prof in profiles.items()
        }
        return json.dumps(payload, indent=1) + "\n"
    out = ["series,occupied_modes,probability,decimal\n"]
    for name, prof in profiles.items():
        out.append(prof.to_csv(name).split("\n", 1)[1])
    out.append("".join(f"# mean {name} {format_decimal(p.mean)}\n" for name, p in profiles.items()))
    return "".join(out)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget <= 0:
        parser.error("--budget must be positive")
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        if args.command == "matrix":
            _emit(_cmd_matrix(args), args)
        elif args.command == "dist":
            c, stat = _parse_c_and_stats(parser, args)
            _emit(_cmd_dist(args, c, stat), args)
        elif args.command == "verify":
            c, stat = _parse_c_and_stats(parser, args)
            report = verify_law(args.n, args.m, c, stat, args.budget, args.threads)
            _emit(report.to_json() + "\n", args)
            return EXIT_OK if report.ok else EXIT_MISMATCH
        elif args.command == "count":
            counts = count_suppressed(args.n, args.m, args.statistics, args.method, args.budget, args.threads)
            if args.format == "json":
                text = json.dumps({"n": counts.n, "m": counts.m, "statistics": counts.statistics.value,
                                   "suppressed": counts.suppressed, "total": counts.total}) + "\n"
            else:
                text = f"{counts.cell()},{format_decimal(Fraction(counts.suppressed, counts.total))}\n"
            _emit(text, args)
        elif args.command == "tables":
            _emit(_cmd_tables(args), args)
        elif args.command == "figure2":
            _emit(_cmd_figure2(args), args)
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, IndexError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
