"""Full and Small Space runs for a single target.

Both runs share the front end: optionally complement the target column,
refuse unusable targets, reduce the table, build the target's hypergraph and
dualize it.  They differ only in what happens to each minimal transversal
``Y``:

* ``run_full`` collects every transversal, then turns each into an
  implication ``Y -> t``, drops those below ``minsup`` and accumulates the
  rest.  The report carries the kept implication list.
* ``run_small_space`` tests ``minsup`` and accumulates inside the sink and
  forgets ``Y`` immediately.  Only totals come back.

Totals are exact fractions accumulated in emission order, so the two runs
agree bit for bit.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ._bits import bits, mask_of
from .dualize import Hypergraph, dualize
from .meter import Meter
from .relations import TargetContext, build_hypergraph, compute_d_row
from .table import (
    BinaryTable,
    ReductionLog,
    TargetStatus,
    check_target_status,
    extent,
    negate_column,
    reduce_table,
)

__all__ = [
    "Implication",
    "TotalSupportAccumulator",
    "RunConfig",
    "RunReport",
    "TargetRefused",
    "implication_support",
    "accumulate",
    "run",
    "run_full",
    "run_small_space",
    "relevance",
]

FULL = "full"
SMALL_SPACE = "small_space"


class TargetRefused(Exception):
    """The target column is reducible or has an empty extent; nothing was mined."""

    def __init__(self, target: int, status: TargetStatus):
        super().__init__(status.explanation)
        self.target = target
        self.status = status


@dataclass(frozen=True)
class Implication:
    """``antecedent -> consequent`` in original column indices.

    The antecedent keeps the order in which the dualization engine produced
    its vertices; compare antecedents as sets.
    """

    antecedent: tuple[int, ...]
    consequent: int
    support_rows: tuple[int, ...]

    @property
    def support(self) -> int:
        return len(self.support_rows)

    def format(self, k: int) -> str:
        lhs = " ".join(str(y + 1) for y in self.antecedent)
        rows = "".join(f" {r + 1}," for r in self.support_rows)
        return f"{k}; {lhs} -> {self.consequent + 1} ; Support = {self.support}; rows ={rows}"


class TotalSupportAccumulator:
    """Running ``tsup`` values, one exact fraction per original column."""

    def __init__(self, n_cols: int, meter: Meter | None = None):
        self.tsup = [Fraction(0)] * n_cols
        self.implications_seen = 0
        self.implications_kept = 0
        self._meter = meter
        if meter is not None:
            meter.charge(n_cols, "accumulator")

    def add(self, antecedent: Sequence[int], support: int) -> None:
        share = Fraction(support, len(antecedent))
        for y in antecedent:
            self.tsup[y] += share
        self.implications_kept += 1

    def as_floats(self) -> list[float]:
        return [float(v) for v in self.tsup]

    def close(self) -> None:
        if self._meter is not None:
            self._meter.release(len(self.tsup), "accumulator")
            self._meter = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TotalSupportAccumulator):
            return NotImplemented
        return (
            self.tsup == other.tsup
            and self.implications_seen == other.implications_seen
            and self.implications_kept == other.implications_kept
        )

    def __repr__(self) -> str:
        nz = {i + 1: float(v) for i, v in enumerate(self.tsup) if v}
        return f"TotalSupportAccumulator(kept={self.implications_kept}, tsup={nz})"


def accumulate(
    acc: TotalSupportAccumulator, antecedent: Sequence[int], support: int
) -> TotalSupportAccumulator:
    """Add ``support / |antecedent|`` to every attribute of the antecedent."""
    if not antecedent:
        raise ValueError("antecedent must be non-empty")
    if support < 0:
        raise ValueError("support must be non-negative")
    acc.add(antecedent, support)
    return acc


@dataclass(frozen=True)
class RunConfig:
    """Parameters of one run.  ``target`` is a 0-based column of the input table."""

    target: int
    minsup: int = 1
    engine: str = "reverse_search"
    pipeline: str = SMALL_SPACE
    negate_target: bool = False
    cap: int | None = None

    def __post_init__(self) -> None:
        if self.minsup < 0:
            raise ValueError("minsup must be non-negative")
        if self.pipeline not in (FULL, SMALL_SPACE):
            raise ValueError(f"unknown pipeline {self.pipeline!r}")
        if self.cap is not None and self.cap < 1:
            raise ValueError("cap must be positive")


@dataclass
class RunReport:
    config: RunConfig
    reduction: ReductionLog
    accumulator: TotalSupportAccumulator
    implications: list[Implication] = field(default_factory=list)
    transversal_count: int = 0
    wall_ms: float = 0.0
    truncated: bool = False
    context: TargetContext | None = None


def implication_support(
    table: BinaryTable, antecedent: Iterable[int], t: int
) -> tuple[int, frozenset[int]]:
    """Rows holding all of ``antecedent`` and ``t``, with their count."""
    ys = list(antecedent)
    for y in ys + [t]:
        if not 0 <= y < table.n_cols:
            raise IndexError(f"attribute {y} out of range 0..{table.n_cols - 1}")
    rows = frozenset(bits(extent(table, mask_of(ys) | (1 << t))))
    return len(rows), rows


class _Prepared:
    """Shared front end of both pipelines."""

    def __init__(self, table: BinaryTable, cfg: RunConfig):
        if not 0 <= cfg.target < table.n_cols:
            raise IndexError(f"target {cfg.target} out of range 0..{table.n_cols - 1}")
        work = negate_column(table, cfg.target) if cfg.negate_target else table
        status = check_target_status(work, cfg.target)
        if not status.usable:
            raise TargetRefused(cfg.target, status)
        reduced, log = reduce_table(work)
        rt = log.index_map[cfg.target]
        ctx = compute_d_row(reduced, rt)
        h = build_hypergraph(ctx)
        # relabel vertices to original columns so supports are read off `work`
        kept = log.kept
        self.table = work
        self.log = log
        self.context = TargetContext(
            cfg.target,
            frozenset(kept[y] for y in ctx.d_row),
            ctx.up_rows,
            tuple(frozenset(kept[y] for y in m) for m in ctx.maximal_sets),
        )
        self.hypergraph = Hypergraph(
            tuple(kept[v] for v in h.vertices),
            tuple(frozenset(kept[v] for v in e) for e in h.edges),
            h.unsatisfiable,
        )
        self.target_col = work.cols[cfg.target]

    def support(self, antecedent: Sequence[int]) -> int:
        ext = self.target_col
        cols = self.table.cols
        for y in antecedent:
            ext &= cols[y]
        return ext


def run_full(table: BinaryTable, cfg: RunConfig, meter: Meter | None = None) -> RunReport:
    start = time.perf_counter()
    prep = _Prepared(table, cfg)
    acc = TotalSupportAccumulator(table.n_cols, meter)
    collected: list[tuple[int, ...]] = []
    stopped = False

    def collect(y: tuple[int, ...]):
        nonlocal stopped
        collected.append(y)
        if meter is not None:
            meter.charge(len(y) + 1, "transversals")
        if cfg.cap is not None and len(collected) >= cfg.cap:
            stopped = True
            return False

    n = dualize(prep.hypergraph, collect, cfg.engine, meter)
    kept: list[Implication] = []
    for y in collected:
        acc.implications_seen += 1
        if not y:
            continue
        ext = prep.support(y)
        support = ext.bit_count()
        if support < cfg.minsup:
            continue
        imp = Implication(y, cfg.target, tuple(bits(ext)))
        kept.append(imp)
        if meter is not None:
            meter.charge(len(y) + support + 2, "implications")
        accumulate(acc, y, support)
    report = RunReport(
        cfg,
        prep.log,
        acc,
        kept,
        transversal_count=n,
        truncated=stopped,
        context=prep.context,
    )
    if meter is not None:
        meter.release(sum(len(y) + 1 for y in collected), "transversals")
        meter.release(sum(len(i.antecedent) + i.support + 2 for i in kept), "implications")
        acc.close()
    report.wall_ms = (time.perf_counter() - start) * 1000
    return report


def run_small_space(table: BinaryTable, cfg: RunConfig, meter: Meter | None = None) -> RunReport:
    if cfg.engine != "reverse_search":
        raise ValueError("the small space pipeline streams from reverse search only")
    start = time.perf_counter()
    prep = _Prepared(table, cfg)
    acc = TotalSupportAccumulator(table.n_cols, meter)
    minsup = cfg.minsup
    cap = cfg.cap
    cols = prep.table.cols
    target_col = prep.target_col
    stopped = False

    def absorb(y: tuple[int, ...]):
        nonlocal stopped
        acc.implications_seen += 1
        if y:
            ext = target_col
            for a in y:
                ext &= cols[a]
            support = ext.bit_count()
            if support >= minsup:
                acc.add(y, support)
        if cap is not None and acc.implications_seen >= cap:
            stopped = True
            return False

    n = dualize(prep.hypergraph, absorb, "reverse_search", meter)
    if meter is not None:
        acc.close()
    report = RunReport(
        cfg,
        prep.log,
        acc,
        transversal_count=n,
        truncated=stopped,
        context=prep.context,
    )
    report.wall_ms = (time.perf_counter() - start) * 1000
    return report


def run(table: BinaryTable, cfg: RunConfig, meter: Meter | None = None) -> RunReport:
    if cfg.pipeline == FULL:
        return run_full(table, cfg, meter)
    return run_small_space(table, cfg, meter)


def relevance(
    tsup_t: Sequence[Fraction | float], tsup_not_t: Sequence[Fraction | float]
) -> list[Fraction | float]:
    """Elementwise ``tsup_t / (tsup_not_t + 1)``."""
    if len(tsup_t) != len(tsup_not_t):
        raise ValueError(f"length mismatch: {len(tsup_t)} vs {len(tsup_not_t)}")
    return [a / (b + 1) for a, b in zip(tsup_t, tsup_not_t)]
