"""Original-versus-Small-Space comparison over a range of targets.

Memory is measured in logical units through :class:`~dbasis.meter.Meter`
rather than allocator bytes:

* the full pipeline holds the ``|A|``-word accumulator, one ``|Y| + 1`` word
  record per collected transversal and one ``|Y| + |rows| + 2`` word record
  per kept implication, plus the engine's working set;
* the Small Space pipeline holds the accumulator and the engine's working set.

Wall time is recorded for information only.
"""

from __future__ import annotations

import csv
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from statistics import fmean
from typing import IO, Iterable, Sequence

from .meter import Meter
from .pipeline import FULL, SMALL_SPACE, RunConfig, TargetRefused, run
from .table import BinaryTable, check_target_status

__all__ = [
    "AccountedRun",
    "ComparisonRow",
    "account_run",
    "account_peak",
    "sweep",
    "emit_csv",
    "CSV_HEADER",
]

log = logging.getLogger(__name__)

OK = "ok"
STARRED = "starred"
FAILED = "failed"

CSV_HEADER = [
    "target",
    "status",
    "orig_peak",
    "small_peak",
    "peak_diff",
    "peak_savings_pct",
    "orig_ms",
    "small_ms",
    "ms_diff",
    "transversals",
    "kept",
]


@dataclass
class AccountedRun:
    target: int
    status: str
    peak_retained_units: int = 0
    transversal_count: int = 0
    kept_count: int = 0
    wall_ms: float = 0.0
    tsup: list[Fraction] = field(default_factory=list, repr=False)
    message: str = ""


@dataclass
class ComparisonRow:
    target: int
    original: AccountedRun
    small: AccountedRun
    status: str = OK

    @property
    def peak_diff(self) -> int:
        return self.small.peak_retained_units - self.original.peak_retained_units

    @property
    def peak_savings_pct(self) -> float:
        orig = self.original.peak_retained_units
        if orig == 0:
            return 0.0
        return (orig - self.small.peak_retained_units) / orig * 100

    @property
    def ms_diff(self) -> float:
        return self.small.wall_ms - self.original.wall_ms


def account_run(
    table: BinaryTable, target: int, minsup: int = 1, pipeline: str = SMALL_SPACE
) -> AccountedRun:
    """Run one pipeline under a fresh meter."""
    meter = Meter()
    try:
        rep = run(table, RunConfig(target, minsup, pipeline=pipeline), meter)
    except TargetRefused as exc:
        return AccountedRun(target, STARRED, meter.peak, message=str(exc))
    return AccountedRun(
        target,
        OK,
        meter.peak,
        rep.transversal_count,
        rep.accumulator.implications_kept,
        rep.wall_ms,
        list(rep.accumulator.tsup),
    )


def account_peak(table: BinaryTable, cfg: RunConfig) -> int:
    meter = Meter()
    run(table, cfg, meter)
    return meter.peak


def _compare(table: BinaryTable, target: int, minsup: int) -> ComparisonRow:
    status = check_target_status(table, target)
    if not status.usable:
        starred = AccountedRun(target, STARRED, message=status.explanation)
        return ComparisonRow(target, starred, starred, STARRED)
    try:
        orig = account_run(table, target, minsup, FULL)
        small = account_run(table, target, minsup, SMALL_SPACE)
    except Exception as exc:  # one bad target must not sink the sweep
        log.exception("target %d failed", target + 1)
        failed = AccountedRun(target, FAILED, message=str(exc))
        return ComparisonRow(target, failed, failed, FAILED)
    if orig.tsup != small.tsup:
        log.error("target %d: pipelines disagree on tsup", target + 1)
        return ComparisonRow(target, orig, small, FAILED)
    return ComparisonRow(target, orig, small, OK)


def sweep(
    table: BinaryTable, targets: Iterable[int], minsup: int = 1, workers: int = 1
) -> list[ComparisonRow]:
    """Compare both pipelines on each target (0-based), in the given order."""
    targets = list(targets)
    for t in targets:
        if not 0 <= t < table.n_cols:
            raise IndexError(f"target {t} out of range 0..{table.n_cols - 1}")
    if workers <= 1:
        return [_compare(table, t, minsup) for t in targets]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda t: _compare(table, t, minsup), targets))


def _data_row(r: ComparisonRow) -> list:
    return [
        r.target + 1,
        r.status,
        r.original.peak_retained_units,
        r.small.peak_retained_units,
        r.peak_diff,
        round(r.peak_savings_pct, 2),
        round(r.original.wall_ms, 3),
        round(r.small.wall_ms, 3),
        round(r.ms_diff, 3),
        r.small.transversal_count,
        r.small.kept_count,
    ]


def _footer(label: str, data: Sequence[list]) -> list:
    if not data:
        return [label, ""] + [""] * (len(CSV_HEADER) - 2)
    cols = zip(*(d[2:] for d in data))
    return [label, ""] + [round(fmean(c), 4) for c in cols]


def emit_csv(rows: Sequence[ComparisonRow], out: IO[str]) -> None:
    """Write the comparison table with ``AVG`` and ``AVG (no *)`` footers."""
    data = [_data_row(r) for r in rows]
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_HEADER)
    w.writerows(data)
    w.writerow(_footer("AVG", data))
    w.writerow(_footer("AVG (no *)", [d for d in data if d[1] == OK]))
