"""Binary tables: parsing, support functions, closure and column reduction.

A table ``T = (U, A, R)`` is held twice, as row bitsets (bit ``c`` of
``rows[r]`` is set iff ``(r, c)`` is in ``R``) and as column bitsets (bit
``r`` of ``cols[c]``).  The Python API indexes rows and columns from 0;
text surfaces (files, CLI, reports) use 1-based numbers.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from ._bits import bits, full_mask, iter_bits

__all__ = [
    "BinaryTable",
    "TableParseError",
    "ReductionLog",
    "TargetStatus",
    "StatusKind",
    "parse_table",
    "read_table",
    "support_of_attrs",
    "support_of_rows",
    "closure",
    "extent",
    "intent",
    "reduce_table",
    "check_target_status",
    "negate_column",
]


class TableParseError(ValueError):
    """Malformed table text.  ``line`` and ``token`` are 1-based when known."""

    def __init__(self, message: str, line: int | None = None, token: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if token is not None:
                where += f", token {token}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.token = token


@dataclass(frozen=True)
class BinaryTable:
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    n_rows: int
    n_cols: int
    attr_names: tuple[str, ...] | None = None

    @classmethod
    def from_matrix(
        cls, matrix: Sequence[Sequence[int]], attr_names: Sequence[str] | None = None
    ) -> "BinaryTable":
        n_rows = len(matrix)
        n_cols = len(matrix[0]) if n_rows else 0
        rows = []
        cols = [0] * n_cols
        for r, line in enumerate(matrix):
            if len(line) != n_cols:
                raise ValueError(f"row {r} has {len(line)} entries, expected {n_cols}")
            m = 0
            for c, v in enumerate(line):
                if v not in (0, 1, True, False):
                    raise ValueError(f"entry ({r}, {c}) is {v!r}, expected 0 or 1")
                if v:
                    m |= 1 << c
                    cols[c] |= 1 << r
            rows.append(m)
        if attr_names is not None:
            attr_names = tuple(attr_names)
            if len(attr_names) != n_cols:
                raise ValueError(f"{len(attr_names)} names for {n_cols} columns")
        return cls(tuple(rows), tuple(cols), n_rows, n_cols, attr_names)

    @classmethod
    def from_columns(
        cls, cols: Sequence[int], n_rows: int, attr_names: Sequence[str] | None = None
    ) -> "BinaryTable":
        rows = [0] * n_rows
        for c, col in enumerate(cols):
            for r in iter_bits(col):
                rows[r] |= 1 << c
        names = tuple(attr_names) if attr_names is not None else None
        return cls(tuple(rows), tuple(cols), n_rows, len(cols), names)

    @property
    def all_rows(self) -> int:
        return full_mask(self.n_rows)

    @property
    def all_cols(self) -> int:
        return full_mask(self.n_cols)

    def to_matrix(self) -> list[list[int]]:
        return [[(row >> c) & 1 for c in range(self.n_cols)] for row in self.rows]

    def name(self, c: int) -> str:
        """Label for column ``c``: its header name, else its 1-based number."""
        if self.attr_names is not None:
            return self.attr_names[c]
        return str(c + 1)

    def column_index(self, label: str) -> int:
        """Resolve a header name or a 1-based column number to a 0-based index."""
        if self.attr_names is not None and label in self.attr_names:
            return self.attr_names.index(label)
        try:
            c = int(label)
        except ValueError:
            raise KeyError(f"no column named {label!r}") from None
        if not 1 <= c <= self.n_cols:
            raise IndexError(f"column {c} out of range 1..{self.n_cols}")
        return c - 1

    def to_text(self) -> str:
        lines = []
        if self.attr_names is not None:
            lines.append("# " + " ".join(self.attr_names))
        for row in self.to_matrix():
            lines.append(" ".join(map(str, row)))
        return "\n".join(lines) + "\n"


_SPLIT = re.compile(r"[\s,]+")


def _tokens(line: str) -> list[str]:
    return [tok for tok in _SPLIT.split(line.strip()) if tok]


def parse_table(text: str) -> BinaryTable:
    """Parse a 0/1 table.

    An optional first line starting with ``#`` names the columns; later ``#``
    lines are comments.  Tokens are separated by whitespace or commas and
    blank lines are ignored.
    """
    names: list[str] | None = None
    matrix: list[list[int]] = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if lineno == 1:
                names = _tokens(line[1:]) or None
            continue
        toks = _tokens(line)
        row = []
        for k, tok in enumerate(toks, start=1):
            if tok not in ("0", "1"):
                raise TableParseError(f"expected 0 or 1, got {tok!r}", lineno, k)
            row.append(int(tok))
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise TableParseError(f"ragged row: {len(row)} entries, expected {width}", lineno)
        matrix.append(row)
    if not matrix:
        raise TableParseError("empty table")
    if width < 2:
        raise TableParseError("a table needs a target and at least one other column")
    if names is not None and len(names) != width:
        raise TableParseError(f"header names {len(names)} columns but rows have {width}", 1)
    return BinaryTable.from_matrix(matrix, names)


def read_table(path: str | Path) -> BinaryTable:
    return parse_table(Path(path).read_text())


# -- support functions ------------------------------------------------------


def extent(table: BinaryTable, attr_mask: int) -> int:
    """Row mask of objects having every attribute in ``attr_mask``."""
    ext = table.all_rows
    for c in iter_bits(attr_mask):
        ext &= table.cols[c]
    return ext


def intent(table: BinaryTable, row_mask: int) -> int:
    """Attribute mask shared by every object in ``row_mask``."""
    common = table.all_cols
    for r in iter_bits(row_mask):
        common &= table.rows[r]
    return common


def _checked(indices: Iterable[int], bound: int, what: str) -> int:
    m = 0
    for i in indices:
        if not 0 <= i < bound:
            raise IndexError(f"{what} index {i} out of range 0..{bound - 1}")
        m |= 1 << i
    return m


def support_of_attrs(table: BinaryTable, attrs: Iterable[int]) -> frozenset[int]:
    """Objects possessing all of ``attrs``; the empty set maps to every object."""
    return frozenset(bits(extent(table, _checked(attrs, table.n_cols, "attribute"))))


def support_of_rows(table: BinaryTable, objects: Iterable[int]) -> frozenset[int]:
    """Attributes shared by all of ``objects``; the empty set maps to every attribute."""
    return frozenset(bits(intent(table, _checked(objects, table.n_rows, "object"))))


def closure(table: BinaryTable, attrs: Iterable[int]) -> frozenset[int]:
    m = _checked(attrs, table.n_cols, "attribute")
    return frozenset(bits(intent(table, extent(table, m))))


# -- reduction --------------------------------------------------------------


@dataclass(frozen=True)
class ReductionLog:
    """What ``reduce_table`` did, in 0-based original column indices.

    ``index_map`` sends each original column to its reduced index, or to
    ``None`` when the column was dropped (all ones) or merged into
    ``merged_duplicates``' representative.
    """

    removed_full_columns: tuple[int, ...] = ()
    merged_duplicates: tuple[tuple[int, int], ...] = ()
    index_map: dict[int, int | None] = field(default_factory=dict)
    kept: tuple[int, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.removed_full_columns and not self.merged_duplicates

    def original(self, reduced_index: int) -> int:
        return self.kept[reduced_index]

    def notes(self) -> list[str]:
        """Reduction notes, 1-based: ``6 <=>`` for all ones, ``8 <=> 7`` for duplicates."""
        out = [(c, f"{c + 1} <=>") for c in self.removed_full_columns]
        out += [(c, f"{c + 1} <=> {rep + 1}") for c, rep in self.merged_duplicates]
        return [text for _, text in sorted(out)]


def reduce_table(table: BinaryTable) -> tuple[BinaryTable, ReductionLog]:
    """Drop all-ones columns and keep one column (the lowest index) per duplicate group.

    All-zero columns are left in place.
    """
    full = table.all_rows
    first_seen: dict[int, int] = {}
    removed, merged, kept = [], [], []
    index_map: dict[int, int | None] = {}
    for c, col in enumerate(table.cols):
        if col == full:
            removed.append(c)
            index_map[c] = None
        elif col in first_seen:
            merged.append((c, first_seen[col]))
            index_map[c] = None
        else:
            first_seen[col] = c
            index_map[c] = len(kept)
            kept.append(c)
    names = None
    if table.attr_names is not None:
        names = [table.attr_names[c] for c in kept]
    reduced = BinaryTable.from_columns([table.cols[c] for c in kept], table.n_rows, names)
    log = ReductionLog(tuple(removed), tuple(merged), index_map, tuple(kept))
    return reduced, log


class StatusKind(enum.Enum):
    USABLE = "usable"
    REDUCIBLE = "reducible"
    EMPTY_EXTENT = "empty_extent"


@dataclass(frozen=True)
class TargetStatus:
    kind: StatusKind
    explanation: str = ""

    @property
    def usable(self) -> bool:
        return self.kind is StatusKind.USABLE


def check_target_status(table: BinaryTable, t: int) -> TargetStatus:
    """Decide whether column ``t`` (0-based, unreduced table) can serve as a target.

    Reducible when the column is all ones, duplicates a lower-numbered column,
    or its extent is the intersection of the extents strictly containing it.
    The last test is a reconstruction: the original tool only reports that a
    target "is reduced to other columns" without saying how it decides that.
    """
    if not 0 <= t < table.n_cols:
        raise IndexError(f"target {t} out of range 0..{table.n_cols - 1}")
    ext = table.cols[t]
    label = t + 1
    if ext == table.all_rows:
        return TargetStatus(StatusKind.REDUCIBLE, f"column {label} is reduced, a column with all 1s")
    for z in range(t):
        if table.cols[z] == ext:
            return TargetStatus(
                StatusKind.REDUCIBLE, f"column {label} is reduced, equal to column {z + 1}"
            )
    if ext == 0:
        return TargetStatus(StatusKind.EMPTY_EXTENT, f"column {label} has no 1s")
    above = [z for z, col in enumerate(table.cols) if col != ext and col & ext == ext]
    if above:
        meet = table.all_rows
        for z in above:
            meet &= table.cols[z]
        if meet == ext:
            cols = ", ".join(str(z + 1) for z in above)
            return TargetStatus(
                StatusKind.REDUCIBLE,
                f"column {label} is reduced, the intersection of columns {cols}",
            )
    return TargetStatus(StatusKind.USABLE)


def negate_column(table: BinaryTable, t: int) -> BinaryTable:
    """Return a copy of ``table`` with column ``t`` complemented."""
    if not 0 <= t < table.n_cols:
        raise IndexError(f"column {t} out of range 0..{table.n_cols - 1}")
    cols = list(table.cols)
    cols[t] = table.all_rows & ~cols[t]
    names = table.attr_names
    return BinaryTable.from_columns(cols, table.n_rows, names)
