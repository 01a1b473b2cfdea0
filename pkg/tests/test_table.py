from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dbasis import (
    BinaryTable,
    StatusKind,
    TableParseError,
    check_target_status,
    closure,
    negate_column,
    parse_table,
    reduce_table,
    support_of_attrs,
    support_of_rows,
)

from . import oracles

T, A1, A2, B1, B2, S = range(6)


@st.composite
def matrices(draw, max_rows=8, max_cols=7):
    n = draw(st.integers(1, max_rows))
    m = draw(st.integers(2, max_cols))
    return draw(
        st.lists(st.lists(st.integers(0, 1), min_size=m, max_size=m), min_size=n, max_size=n)
    )


# -- parsing ----------------------------------------------------------------


def test_parse_table1(table1):
    assert (table1.n_rows, table1.n_cols) == (9, 6)
    assert table1.attr_names == ("t", "a1", "a2", "b1", "b2", "s")
    assert table1.to_matrix()[4] == [1, 1, 1, 1, 1, 0]
    assert table1.column_index("b1") == B1
    assert table1.column_index("4") == B1


def test_parse_single_row():
    t = parse_table("0 1\n")
    assert (t.n_rows, t.n_cols) == (1, 2)
    assert t.to_matrix() == [[0, 1]]


def test_parse_bad_token_reports_position():
    with pytest.raises(TableParseError) as exc:
        parse_table("0 2 1\n")
    assert exc.value.line == 1 and exc.value.token == 2


@pytest.mark.parametrize(
    "text",
    ["", "# only a header\n", "0 1\n0 1 1\n", "1\n0\n", "# a b c\n0 1\n", "0 x\n"],
)
def test_parse_rejects(text):
    with pytest.raises(TableParseError):
        parse_table(text)


def test_parse_commas_comments_and_blank_lines():
    t = parse_table("# x y\n1,0\n\n# a comment\n0, 1\n")
    assert t.to_matrix() == [[1, 0], [0, 1]]
    assert t.attr_names == ("x", "y")


def test_text_roundtrip(table1, liver):
    for tab in (table1, liver):
        assert parse_table(tab.to_text()) == tab


def test_column_index_errors(table1):
    with pytest.raises(KeyError):
        table1.column_index("nope")
    with pytest.raises(IndexError):
        table1.column_index("7")


# -- supports and closure -----------------------------------------------------


def test_support_of_attrs_examples(table1):
    assert support_of_attrs(table1, {A2, B2}) == {2, 4, 7, 8}
    assert support_of_attrs(table1, set()) == frozenset(range(9))
    assert support_of_attrs(table1, {T}) == {1, 4, 6, 7, 8}


def test_support_of_rows_examples(table1):
    assert support_of_rows(table1, {5, 6}) == {B1, B2}
    assert support_of_rows(table1, set()) == frozenset(range(6))
    assert support_of_rows(table1, range(9)) == frozenset()


def test_closure_examples(table1):
    assert closure(table1, {A1, A2}) == {T, A1, A2, B1, B2}
    assert T in closure(table1, {A1, B2})
    assert T not in closure(table1, {A1})


def test_out_of_range_indices(table1):
    with pytest.raises(IndexError):
        support_of_attrs(table1, {6})
    with pytest.raises(IndexError):
        support_of_rows(table1, {9})
    with pytest.raises(IndexError):
        closure(table1, {-1})


@settings(max_examples=150, deadline=None)
@given(matrices(), st.data())
def test_supports_match_oracle(matrix, data):
    tab = BinaryTable.from_matrix(matrix)
    ys = data.draw(st.sets(st.integers(0, len(matrix[0]) - 1)))
    zs = data.draw(st.sets(st.integers(0, len(matrix) - 1)))
    assert support_of_attrs(tab, ys) == oracles.sup_attrs(matrix, ys)
    assert support_of_rows(tab, zs) == oracles.sup_rows(matrix, zs)
    assert closure(tab, ys) == oracles.closure(matrix, ys)


# -- reduction -----------------------------------------------------------------


def test_reduce_liver(liver):
    reduced, log = reduce_table(liver)
    assert log.removed_full_columns == (5,)
    assert log.merged_duplicates == ((7, 6),)
    assert log.notes() == ["6 <=>", "8 <=> 7"]
    assert reduced.n_cols == 20
    assert log.index_map[5] is None and log.index_map[7] is None
    assert log.index_map[21] == 19 and log.original(19) == 21


def test_reduce_table1_is_identity(table1):
    reduced, log = reduce_table(table1)
    assert log.is_empty
    assert reduced == table1


def test_reduce_all_ones_leaves_no_columns():
    reduced, log = reduce_table(BinaryTable.from_matrix([[1, 1], [1, 1]]))
    assert reduced.n_cols == 0
    assert log.removed_full_columns == (0, 1)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_reduce_properties(matrix):
    tab = BinaryTable.from_matrix(matrix)
    reduced, log = reduce_table(tab)
    again, log2 = reduce_table(reduced)
    assert again == reduced and log2.is_empty
    assert len(set(reduced.cols)) == reduced.n_cols
    assert tab.all_rows not in reduced.cols or tab.n_rows == 0
    for c, r in log.index_map.items():
        if r is not None:
            assert reduced.cols[r] == tab.cols[c]
            assert log.original(r) == c


# -- target status --------------------------------------------------------------


def test_status_liver_starred(liver):
    s6 = check_target_status(liver, 5)
    assert s6.kind is StatusKind.REDUCIBLE and "all 1s" in s6.explanation
    s8 = check_target_status(liver, 7)
    assert s8.kind is StatusKind.REDUCIBLE and "equal to column 7" in s8.explanation
    assert check_target_status(liver, 21).usable


def test_status_table1_target_usable(table1):
    assert check_target_status(table1, T).usable
    assert not oracles.is_reducible_by_intersection(table1.to_matrix(), T)


def test_status_empty_extent():
    tab = BinaryTable.from_matrix([[0, 1], [0, 0]])
    assert check_target_status(tab, 0).kind is StatusKind.EMPTY_EXTENT


def test_status_intersection():
    # column 3 is exactly columns 1 and 2 together
    tab = BinaryTable.from_matrix([[1, 1, 1], [1, 0, 0], [0, 1, 0], [0, 0, 0]])
    st_ = check_target_status(tab, 2)
    assert st_.kind is StatusKind.REDUCIBLE and "intersection" in st_.explanation


def test_status_first_of_duplicates_is_usable():
    tab = BinaryTable.from_matrix([[1, 1, 0], [0, 0, 1]])
    assert check_target_status(tab, 0).usable
    assert not check_target_status(tab, 1).usable


def test_status_matches_intersection_oracle():
    rng = random.Random(11)
    for _ in range(300):
        m = oracles.random_matrix(rng, rng.randint(1, 7), rng.randint(2, 6))
        tab = BinaryTable.from_matrix(m)
        for t in range(tab.n_cols):
            col = oracles.column(m, t)
            expect_reducible = (
                len(col) == len(m)
                or any(oracles.column(m, z) == col for z in range(t))
                or (bool(col) and oracles.is_reducible_by_intersection(m, t))
            )
            status = check_target_status(tab, t)
            if not col and not expect_reducible:
                assert status.kind is StatusKind.EMPTY_EXTENT
            else:
                assert (status.kind is StatusKind.REDUCIBLE) == expect_reducible


# -- negation ------------------------------------------------------------------


def test_negate_examples(table1):
    neg = negate_column(table1, T)
    assert support_of_attrs(neg, {T}) == {0, 2, 3, 5}
    assert neg.attr_names == table1.attr_names
    assert negate_column(parse_table("0 1\n"), 0).to_matrix() == [[1, 1]]
    with pytest.raises(IndexError):
        negate_column(table1, 6)


@settings(max_examples=100, deadline=None)
@given(matrices(), st.data())
def test_negate_involution(matrix, data):
    tab = BinaryTable.from_matrix(matrix)
    t = data.draw(st.integers(0, tab.n_cols - 1))
    neg = negate_column(tab, t)
    assert negate_column(neg, t) == tab
    for c in range(tab.n_cols):
        if c != t:
            assert neg.cols[c] == tab.cols[c]
