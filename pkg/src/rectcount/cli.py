"""Command-line front end.

Counts are always written as exact decimal strings (quoted in JSON) so that
consumers limited to 64-bit integers cannot silently truncate them.

Exit codes: 0 success, 1 usage error, 2 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from . import oracle
from .recursion import load_or_fill, parity_report, t_of_ms, t_of_mrs, t_total
from .topology import wedge_report

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2

DEFAULT_MAX = {
    "table": 12,
    "sequence": 28,
    "kn": 28,
    "parity": 28,
    "verify": oracle.DEFAULT_BOUND,
    "symmetric": oracle.DEFAULT_BOUND,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    common = _Parser(add_help=False, allow_abbrev=False)
    common.add_argument("--max-m", "--max-n", dest="max_m", type=int, default=None, metavar="N")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--cache", default=None, metavar="PATH", help="count-table cache file")
    common.add_argument("--sparse", action="store_true", help="omit zero rows of the table")
    common.add_argument("--threads", type=int, default=1, metavar="N")
    common.add_argument("--force", action="store_true", help="allow brute force up to m=7")
    common.add_argument("-v", "--verbose", action="store_true")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="rectcount",
        description="Exact counts of rectangulations of a square and related invariants.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _common()
    sub.add_parser("table", parents=[common], help="t(m, s) for every m and s")
    sub.add_parser("sequence", parents=[common], help="total counts t(m)")
    sub.add_parser("kn", parents=[common], help="Euler characteristic and sphere count k_n")
    sub.add_parser("parity", parents=[common], help="t(n) mod 2 against the period-8 pattern")
    verify = sub.add_parser("verify", parents=[common], help="brute-force cross-check")
    verify.add_argument("--dump", metavar="PATH", help="write the class dump to PATH")
    sub.add_parser("symmetric", parents=[common], help="brute-force D8-symmetric counts")
    trs = sub.add_parser("trs", parents=[common], help="a single value t(m, r, s)")
    trs.add_argument("--m", dest="m", type=int, required=True)
    trs.add_argument("--r", dest="r", type=int, required=True)
    trs.add_argument("--s", dest="s", type=int, required=True)
    return parser


def _emit(out, fmt: str, header: list[str], rows: list[list], extra: dict | None = None) -> None:
    if fmt == "json":
        records = [{h: _json_value(h, v) for h, v in zip(header, row)} for row in rows]
        payload = records if extra is None else {**extra, "rows": records}
        out.write(json.dumps(payload, indent=2) + "\n")
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([[int(v) if isinstance(v, bool) else v for v in row] for row in rows])
    out.write(buf.getvalue())


# indices and residues stay JSON numbers; every other int is a count
_SMALL_KEYS = {"m", "n", "r", "s", "t_mod_2", "s_mod_2", "conjectured"}


def _json_value(key: str, value):
    if isinstance(value, int) and not isinstance(value, bool) and key not in _SMALL_KEYS:
        return str(value)
    return value


def _max(args, command: str) -> int:
    value = DEFAULT_MAX[command] if args.max_m is None else args.max_m
    if value < 1:
        raise UsageError(f"--max-m must be >= 1, got {value}")
    return value


def _oracle_bound(args, n: int) -> int:
    bound = oracle.EXTENDED_BOUND if args.force else oracle.DEFAULT_BOUND
    if n > bound:
        hint = "" if args.force else f" (use --force for up to {oracle.EXTENDED_BOUND})"
        raise UsageError(f"brute force is limited to {bound} tiles{hint}")
    return bound


def cmd_table(args, out) -> int:
    max_m = _max(args, "table")
    table = load_or_fill(max_m, args.cache, args.threads)
    rows = []
    for m in range(1, max_m + 1):
        for s in range(m):
            t = t_of_ms(m, s, table)
            if t or not args.sparse:
                rows.append([m, s, t])
    _emit(out, args.format, ["m", "s", "t"], rows)
    return EXIT_OK


def cmd_sequence(args, out) -> int:
    max_m = _max(args, "sequence")
    table = load_or_fill(max_m, args.cache, args.threads)
    _emit(out, args.format, ["m", "t"], [[m, t_total(m, table)] for m in range(1, max_m + 1)])
    return EXIT_OK


def cmd_kn(args, out) -> int:
    max_n = _max(args, "kn")
    table = load_or_fill(max_n, args.cache, args.threads)
    rows = []
    for n in range(1, max_n + 1):
        rep = wedge_report(n, table)
        rows.append([rep.n, rep.euler, rep.k])
    _emit(out, args.format, ["n", "euler", "k"], rows)
    return EXIT_OK


def cmd_parity(args, out) -> int:
    max_m = _max(args, "parity")
    table = load_or_fill(max_m, args.cache, args.threads)
    report = parity_report(max_m, table)
    rows = [[e.n, e.parity, e.conjectured, e.agrees] for e in report.entries]
    _emit(out, args.format, ["n", "t_mod_2", "conjectured", "agrees"], rows,
          extra={"all_agree": report.all_agree} if args.format == "json" else None)
    if not report.all_agree:
        bad = [e.n for e in report.entries if not e.agrees]
        print(f"parity pattern broken at n = {bad}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_verify(args, out) -> int:
    max_m = _max(args, "verify")
    bound = _oracle_bound(args, max_m)
    table = load_or_fill(max_m, args.cache, args.threads)
    report = oracle.cross_check(max_m, table, bound)
    bad = {(m, r, s) for m, r, s, _, _ in report.mismatches}
    rows = []
    for m in range(1, max_m + 1):
        counts = oracle.census(oracle.enumerate_rectangulations(m, bound))
        for r in range(m):
            for s in range(m):
                rows.append([m, r, s, counts.get((m, r, s), 0), table.get(m, r, s), (m, r, s) not in bad])
    extra = None
    if args.format == "json":
        extra = {
            "max_m": max_m,
            "classes": report.classes_checked,
            "ok": report.ok,
            "mismatches": [[str(v) for v in row] for row in report.mismatches],
            "invariant_failures": report.invariant_failures,
            "euler_mismatches": [[str(v) for v in row] for row in report.euler_mismatches],
        }
    _emit(out, args.format, ["m", "r", "s", "oracle", "recursion", "match"], rows, extra)
    if args.dump:
        lines = []
        for m in range(1, max_m + 1):
            lines.extend(oracle.dump_classes(oracle.enumerate_rectangulations(m, bound)))
        with open(args.dump, "w", encoding="utf-8") as fh:
            fh.write("\n".join(sorted(lines, key=lambda line: line.rsplit(" ", 1)[1])) + "\n")
    print(
        f"checked {report.classes_checked} classes for m <= {max_m}: "
        f"{len(report.mismatches)} count mismatches, "
        f"{len(report.invariant_failures)} invariant failures, "
        f"{len(report.euler_mismatches)} Euler mismatches",
        file=sys.stderr,
    )
    for m, r, s, expected, got in report.mismatches:
        print(f"mismatch t({m},{r},{s}): oracle {expected}, recursion {got}", file=sys.stderr)
    for line in report.invariant_failures + [str(e) for e in report.euler_mismatches]:
        print(f"failure: {line}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def symmetric_checks(s_values: dict[int, int], t_values: dict[int, int]) -> list[str]:
    """Consistency checks tying symmetric counts to total counts.

    Orbits of the square's symmetry group have even size except for fixed
    points, so s_n and t_n agree mod 2; a symmetric tiling has 4k or 4k + 1
    tiles; and splitting the central tile into four gives s_{4k+1} = s_{4k+4}.
    """
    failures = []
    for n, s_n in s_values.items():
        if s_n % 2 != t_values[n] % 2:
            failures.append(f"n={n}: s_n={s_n} and t_n={t_values[n]} differ mod 2")
        if n % 4 not in (0, 1) and s_n != 0:
            failures.append(f"n={n}: s_n={s_n} but n is not 4k or 4k+1")
        if n % 4 == 1 and n + 3 in s_values and s_values[n + 3] != s_n:
            failures.append(f"s_{n}={s_n} != s_{n + 3}={s_values[n + 3]}")
    return failures


def cmd_symmetric(args, out) -> int:
    max_n = _max(args, "symmetric")
    bound = _oracle_bound(args, max_n)
    table = load_or_fill(max_n, args.cache, args.threads)
    s_values = {n: oracle.d8_symmetric_count(n, bound) for n in range(1, max_n + 1)}
    t_values = {n: t_total(n, table) for n in range(1, max_n + 1)}
    failures = symmetric_checks(s_values, t_values)
    rows = [[n, s_values[n], t_values[n] % 2, s_values[n] % 2] for n in range(1, max_n + 1)]
    extra = {"ok": not failures, "failures": failures} if args.format == "json" else None
    _emit(out, args.format, ["n", "s_n", "t_mod_2", "s_mod_2"], rows, extra)
    for line in failures:
        print(f"failure: {line}", file=sys.stderr)
    return EXIT_MISMATCH if failures else EXIT_OK


def cmd_trs(args, out) -> int:
    if args.m < 1 or not 0 <= args.r < args.m or args.s < 0:
        raise UsageError(f"need m >= 1, 0 <= r <= m - 1, s >= 0 (got m={args.m}, r={args.r}, s={args.s})")
    table = load_or_fill(args.m, args.cache, args.threads)
    value = table.get(args.m, args.r, args.s) if args.s < args.m else t_of_mrs(args.m, args.r, args.s, table)
    _emit(out, args.format, ["m", "r", "s", "t"], [[args.m, args.r, args.s, value]])
    return EXIT_OK


COMMANDS = {
    "table": cmd_table,
    "sequence": cmd_sequence,
    "kn": cmd_kn,
    "parity": cmd_parity,
    "verify": cmd_verify,
    "symmetric": cmd_symmetric,
    "trs": cmd_trs,
}


def main(argv: list[str] | None = None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.threads < 1:
        print("rectcount: error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out or sys.stdout)
    except (UsageError, ValueError) as exc:
        print(f"rectcount: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
