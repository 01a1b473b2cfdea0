"""Arrow relations, the D-relation row of a target and its hypergraph.

No concept lattice is built: both arrows come straight from the definitions,
comparing row intents (for the up arrow) and column extents (for the down
arrow).

    (u, x) in up    iff  u lacks x, and every row whose intent strictly
                         contains u's intent has x
    (u, y) in down  iff  u lacks y, and u has every attribute whose extent
                         strictly contains y's extent

Rows repeating an earlier row's intent are skipped (the object set is
clarified), so each maximal closed set not containing ``x`` is the intent of
exactly one up-arrow row of ``x``.  ``xD`` collects the attributes ``y``
having a row that is up-arrow for ``x`` and down-arrow for ``y``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._bits import bits, iter_bits, mask_of
from .dualize import Hypergraph
from .table import BinaryTable

__all__ = [
    "ArrowRelations",
    "TargetContext",
    "compute_up_arrow",
    "compute_down_arrow",
    "compute_arrows",
    "compute_d_row",
    "build_hypergraph",
]


@dataclass(frozen=True)
class ArrowRelations:
    up: frozenset[tuple[int, int]]
    down: frozenset[tuple[int, int]]


@dataclass(frozen=True)
class TargetContext:
    """Everything about target ``x`` needed to build its hypergraph.

    ``maximal_sets[i]`` is the intent of ``up_rows[i]``.
    """

    target: int
    d_row: frozenset[int]
    up_rows: tuple[int, ...]
    maximal_sets: tuple[frozenset[int], ...]


def _distinct_rows(table: BinaryTable) -> list[int]:
    seen = set()
    out = []
    for u, row in enumerate(table.rows):
        if row not in seen:
            seen.add(row)
            out.append(u)
    return out


def _up_rows_mask(table: BinaryTable, x: int) -> int:
    bit = 1 << x
    lacking = [u for u in _distinct_rows(table) if not table.rows[u] & bit]
    out = 0
    for u in lacking:
        iu = table.rows[u]
        # a strictly larger intent lacking x would refute the arrow
        if not any(table.rows[v] != iu and table.rows[v] & iu == iu for v in lacking):
            out |= 1 << u
    return out


def _strict_upper_attrs(table: BinaryTable) -> list[int]:
    """For each attribute y, the mask of attributes whose extent strictly contains y's."""
    cols = table.cols
    upper = []
    for y, ey in enumerate(cols):
        m = 0
        for z, ez in enumerate(cols):
            if ez != ey and ez & ey == ey:
                m |= 1 << z
        upper.append(m)
    return upper


def _is_down(row: int, y: int, upper_y: int) -> bool:
    return not (row >> y) & 1 and upper_y & ~row == 0


def compute_up_arrow(table: BinaryTable) -> frozenset[tuple[int, int]]:
    return frozenset(
        (u, x) for x in range(table.n_cols) for u in iter_bits(_up_rows_mask(table, x))
    )


def compute_down_arrow(table: BinaryTable) -> frozenset[tuple[int, int]]:
    upper = _strict_upper_attrs(table)
    return frozenset(
        (u, y)
        for u in _distinct_rows(table)
        for y in range(table.n_cols)
        if _is_down(table.rows[u], y, upper[y])
    )


def compute_arrows(table: BinaryTable) -> ArrowRelations:
    return ArrowRelations(compute_up_arrow(table), compute_down_arrow(table))


def compute_d_row(table: BinaryTable, x: int) -> TargetContext:
    """Collect ``xD``, the up-arrow rows of ``x`` and their intents.

    ``x`` itself is never placed in ``xD``, even when some row is both up-
    and down-arrow for it.
    """
    if not 0 <= x < table.n_cols:
        raise IndexError(f"target {x} out of range 0..{table.n_cols - 1}")
    up_rows = bits(_up_rows_mask(table, x))
    upper = _strict_upper_attrs(table)
    d = 0
    for u in up_rows:
        row = table.rows[u]
        for y in range(table.n_cols):
            if y != x and _is_down(row, y, upper[y]):
                d |= 1 << y
    maximal = tuple(frozenset(bits(table.rows[u])) for u in up_rows)
    return TargetContext(x, frozenset(bits(d)), tuple(up_rows), maximal)


def build_hypergraph(ctx: TargetContext) -> Hypergraph:
    """Hypergraph on ``xD`` with one edge ``xD - M_i`` per maximal set."""
    d = mask_of(ctx.d_row)
    raw = [frozenset(bits(d & ~mask_of(m))) for m in ctx.maximal_sets]
    return Hypergraph.from_edges(sorted(ctx.d_row), raw)
