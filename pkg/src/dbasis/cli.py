"""Command line front end: ``dbasis run | relevance | bench``.

Exit codes: 0 success, 1 usage / IO / parse error, 2 target not usable.
"""

from __future__ import annotations

import argparse
import contextlib
import logging
import sys
from typing import Iterator, Sequence

from .bench import emit_csv, sweep
from .pipeline import FULL, SMALL_SPACE, RunConfig, TargetRefused, run
from .report import (
    tsup_summary,
    write_implications,
    write_relevance_csv,
    write_tsup_csv,
)
from .table import BinaryTable, TableParseError, read_table

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNUSABLE = 2

PIPELINES = {"full": FULL, "small": SMALL_SPACE}
ENGINES = {"rs": "reverse_search", "bf": "bruteforce"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dbasis", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--input", required=True, help="0/1 table file")
        sp.add_argument("--minsup", type=_nonneg, default=1, help="minimum support (default 1)")

    r = sub.add_parser("run", help="mine implications / total supports for one target")
    common(r)
    r.add_argument("--target", required=True, help="1-based column number or header name")
    r.add_argument("--pipeline", choices=sorted(PIPELINES), default="small")
    r.add_argument("--engine", choices=sorted(ENGINES), default="rs")
    r.add_argument("--negate", action="store_true", help="complement the target column first")
    r.add_argument("--emit-implications", metavar="PATH", help="implication list (full only)")
    r.add_argument("--emit-tsup", metavar="PATH", help="total supports as CSV")
    r.add_argument("--cap", type=_positive, help="stop after N transversals")

    rel = sub.add_parser("relevance", help="rank attributes against a target")
    common(rel)
    rel.add_argument("--target", required=True, help="1-based column number or header name")
    rel.add_argument("--out", metavar="PATH", help="CSV destination (default stdout)")

    b = sub.add_parser("bench", help="compare both pipelines over a target range")
    common(b)
    b.add_argument("--targets", required=True, help="range A-B, list 1,4,7, or a single column")
    b.add_argument("--out", metavar="PATH", help="CSV destination (default stdout)")
    b.add_argument("--workers", type=_positive, default=1)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def parse_targets(text: str, n_cols: int) -> list[int]:
    """``"1-22"`` / ``"3,5,9"`` / ``"5"`` (1-based, inclusive) -> 0-based indices."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        lo, sep, hi = part.partition("-")
        try:
            a = int(lo)
            b = int(hi) if sep else a
        except ValueError:
            raise UsageError(f"bad target range {part!r}") from None
        if a > b:
            raise UsageError(f"empty target range {part!r}")
        for c in (a, b):
            if not 1 <= c <= n_cols:
                raise UsageError(f"target {c} out of range 1..{n_cols}")
        out.extend(range(a - 1, b))
    if not out:
        raise UsageError("no targets given")
    return out


def _target(table: BinaryTable, label: str) -> int:
    try:
        return table.column_index(label)
    except (KeyError, IndexError) as exc:
        raise UsageError(str(exc).strip("'\"")) from None


@contextlib.contextmanager
def _output(path: str | None) -> Iterator:
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def cmd_run(args: argparse.Namespace) -> int:
    table = read_table(args.input)
    t = _target(table, args.target)
    pipeline = PIPELINES[args.pipeline]
    if pipeline == SMALL_SPACE and args.engine != "rs":
        raise UsageError("--pipeline small requires --engine rs")
    if pipeline == SMALL_SPACE and args.emit_implications:
        raise UsageError("--emit-implications needs --pipeline full")
    cfg = RunConfig(t, args.minsup, ENGINES[args.engine], pipeline, args.negate, args.cap)
    report = run(table, cfg)

    out = sys.stdout
    for note in report.reduction.notes():
        out.write(note + "\n")
    for k, imp in enumerate(report.implications, start=1):
        out.write(imp.format(k) + "\n")
    out.write(tsup_summary(report.accumulator.tsup) + "\n")
    if report.truncated:
        out.write(f"truncated after {report.transversal_count} transversals\n")

    if args.emit_implications:
        with _output(args.emit_implications) as fh:
            write_implications(fh, report)
    if args.emit_tsup:
        with _output(args.emit_tsup) as fh:
            write_tsup_csv(fh, report.accumulator.tsup)
    return EXIT_OK


def cmd_relevance(args: argparse.Namespace) -> int:
    table = read_table(args.input)
    t = _target(table, args.target)
    totals = []
    for negate, which in ((False, "target"), (True, "negated target")):
        try:
            rep = run(table, RunConfig(t, args.minsup, negate_target=negate))
        except TargetRefused as exc:
            print(f"dbasis: {which} column {t + 1} not usable: {exc}", file=sys.stderr)
            return EXIT_UNUSABLE
        totals.append(rep.accumulator.tsup)
    with _output(args.out) as fh:
        write_relevance_csv(fh, t, totals[0], totals[1])
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    table = read_table(args.input)
    targets = parse_targets(args.targets, table.n_cols)
    rows = sweep(table, targets, args.minsup, args.workers)
    with _output(args.out) as fh:
        emit_csv(rows, fh)
    return EXIT_OK


COMMANDS = {"run": cmd_run, "relevance": cmd_relevance, "bench": cmd_bench}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return COMMANDS[args.command](args)
    except TargetRefused as exc:
        print(f"dbasis: target column {exc.target + 1} not usable: {exc}", file=sys.stderr)
        return EXIT_UNUSABLE
    except (UsageError, TableParseError, OSError, ValueError) as exc:
        print(f"dbasis: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
