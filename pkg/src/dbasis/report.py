"""Text and CSV renderings of run results (all column and row numbers 1-based)."""

from __future__ import annotations

import csv
import re
from fractions import Fraction
from typing import IO, Iterable, NamedTuple, Sequence

from .pipeline import Implication, RunReport, relevance

__all__ = [
    "format_decimal",
    "implication_lines",
    "write_implications",
    "write_tsup_csv",
    "read_tsup_csv",
    "relevance_rows",
    "write_relevance_csv",
    "tsup_summary",
    "ParsedImplication",
    "parse_implication_line",
]


def format_decimal(x: float | Fraction) -> str:
    """Round to 2 decimals and drop trailing zeros: 32/3 -> '10.67', 2 -> '2'."""
    s = f"{float(x):.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def implication_lines(implications: Iterable[Implication]) -> list[str]:
    return [imp.format(k) for k, imp in enumerate(implications, start=1)]


def write_implications(out: IO[str], report: RunReport) -> None:
    for note in report.reduction.notes():
        out.write(note + "\n")
    for line in implication_lines(report.implications):
        out.write(line + "\n")


def write_tsup_csv(out: IO[str], tsup: Sequence[Fraction | float]) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["column", "tsup"])
    for c, v in enumerate(tsup, start=1):
        w.writerow([c, repr(float(v))])


def read_tsup_csv(lines: Iterable[str]) -> list[float]:
    rows = list(csv.DictReader(lines))
    return [float(r["tsup"]) for r in sorted(rows, key=lambda r: int(r["column"]))]


def relevance_rows(
    target: int, tsup_t: Sequence[Fraction], tsup_not_t: Sequence[Fraction]
) -> list[tuple[int, Fraction, Fraction, Fraction]]:
    """``(column, tsup_t, tsup_not_t, relevance)`` for every non-target column.

    Sorted by relevance, highest first, ties by ascending column.  ``target``
    and the returned columns are 0-based.
    """
    rel = relevance(tsup_t, tsup_not_t)
    rows = [(c, tsup_t[c], tsup_not_t[c], rel[c]) for c in range(len(rel)) if c != target]
    rows.sort(key=lambda r: (-r[3], r[0]))
    return rows


def write_relevance_csv(
    out: IO[str], target: int, tsup_t: Sequence[Fraction], tsup_not_t: Sequence[Fraction]
) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["column", "tsup_t", "tsup_not_t", "relevance"])
    for c, a, b, r in relevance_rows(target, tsup_t, tsup_not_t):
        w.writerow([c + 1, repr(float(a)), repr(float(b)), repr(float(r))])


def tsup_summary(tsup: Sequence[Fraction | float]) -> str:
    """One line of nonzero totals, e.g. ``tsup: 1=10.67 4=2``."""
    parts = [f"{c}={format_decimal(v)}" for c, v in enumerate(tsup, start=1) if v]
    return "tsup: " + (" ".join(parts) if parts else "(all zero)")


class ParsedImplication(NamedTuple):
    index: int
    antecedent: tuple[int, ...]
    consequent: int
    support: int
    rows: tuple[int, ...]


_LINE = re.compile(
    r"^(\d+);\s*([\d ]*?)\s*->\s*(\d+)\s*;\s*Support\s*=\s*(\d+);\s*rows\s*=\s*([\d,\s]*)$"
)


def parse_implication_line(line: str) -> ParsedImplication:
    """Parse one implication line back into 0-based indices."""
    m = _LINE.match(line.strip())
    if m is None:
        raise ValueError(f"not an implication line: {line!r}")
    k, lhs, rhs, sup, rows = m.groups()
    return ParsedImplication(
        int(k),
        tuple(int(y) - 1 for y in lhs.split()),
        int(rhs) - 1,
        int(sup),
        tuple(int(r) - 1 for r in rows.replace(",", " ").split()),
    )
