from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dbasis import (
    CapacityError,
    Hypergraph,
    Meter,
    dualize,
    dualize_bruteforce,
    dualize_reverse_search,
    minimize_edges,
)
from dbasis.dualize import MAX_BRUTEFORCE_VERTICES, format_transversal

from . import oracles


def collect(engine, h, meter=None):
    out = []
    engine(h, out.append, meter)
    return out


def random_hypergraph(rng, max_vertices=12, max_edges=10):
    n = rng.randint(1, max_vertices)
    vs = list(range(n))
    edges = [set(rng.sample(vs, rng.randint(1, n))) for _ in range(rng.randint(0, max_edges))]
    return Hypergraph.from_edges(vs, edges)


@st.composite
def hypergraphs(draw):
    n = draw(st.integers(1, 9))
    edges = draw(
        st.lists(st.sets(st.integers(0, n - 1), min_size=1), max_size=8)
    )
    return Hypergraph.from_edges(range(n), edges)


TABLE1_H = Hypergraph.from_edges([1, 2, 3, 4], [{2, 4}, {1, 3}, {1, 2}])


def test_minimize_edges():
    assert minimize_edges([{1, 2}, {1}, {1}, {2, 3}, {1, 2, 3}]) == [{1}, {2, 3}]
    assert minimize_edges([]) == []


def test_minimize_matches_oracle():
    rng = random.Random(1)
    for _ in range(300):
        edges = [set(rng.sample(range(6), rng.randint(1, 6))) for _ in range(rng.randint(0, 8))]
        got = minimize_edges(edges)
        assert len(got) == len(set(got))
        assert set(got) == oracles.minimal_edges(edges)


def test_from_edges_validates_vertices():
    with pytest.raises(ValueError):
        Hypergraph.from_edges([0, 1], [{2}])


@pytest.mark.parametrize("engine", [dualize_bruteforce, dualize_reverse_search])
def test_table1_hypergraph(engine):
    got = collect(engine, TABLE1_H)
    assert {frozenset(y) for y in got} == {frozenset({1, 2}), frozenset({2, 3}), frozenset({1, 4})}
    assert len(got) == 3


@pytest.mark.parametrize("engine", [dualize_bruteforce, dualize_reverse_search])
def test_single_edge(engine):
    assert sorted(collect(engine, Hypergraph.from_edges([0, 1], [{0, 1}]))) == [(0,), (1,)]


@pytest.mark.parametrize("engine", [dualize_bruteforce, dualize_reverse_search])
def test_no_edges_yields_empty_transversal(engine):
    assert collect(engine, Hypergraph.from_edges([0, 1, 2], [])) == [()]


@pytest.mark.parametrize("engine", [dualize_bruteforce, dualize_reverse_search])
def test_unsatisfiable_yields_nothing(engine):
    h = Hypergraph.from_edges([0, 1], [{0}, set()])
    assert h.unsatisfiable
    assert collect(engine, h) == []


def test_bruteforce_capacity():
    n = MAX_BRUTEFORCE_VERTICES + 1
    with pytest.raises(CapacityError):
        dualize_bruteforce(Hypergraph.from_edges(range(n), [{0}]), lambda y: None)


def test_reverse_search_handles_many_vertices():
    # 8 disjoint pairs: 2**8 transversals over 16 vertices, then 30 vertices in one edge
    h = Hypergraph.from_edges(range(16), [{2 * i, 2 * i + 1} for i in range(8)])
    assert len(collect(dualize_reverse_search, h)) == 256
    big = Hypergraph.from_edges(range(30), [set(range(30))])
    assert len(collect(dualize_reverse_search, big)) == 30


def test_unknown_engine():
    with pytest.raises(ValueError):
        dualize(TABLE1_H, lambda y: None, "magic")


def test_reverse_search_matches_bruteforce_random():
    rng = random.Random(2024)
    for _ in range(300):
        h = random_hypergraph(rng)
        rs = collect(dualize_reverse_search, h)
        bf = collect(dualize_bruteforce, h)
        assert len(rs) == len(set(map(frozenset, rs)))
        assert {frozenset(y) for y in rs} == {frozenset(y) for y in bf}
        assert {frozenset(y) for y in bf} == oracles.minimal_transversals(h.vertices, h.edges)


@settings(max_examples=200, deadline=None)
@given(hypergraphs())
def test_emissions_are_minimal_transversals(h):
    for y in collect(dualize_reverse_search, h):
        s = set(y)
        assert len(s) == len(y)
        assert oracles.is_transversal(s, h.edges)
        # every vertex has a critical edge
        for v in s:
            assert not oracles.is_transversal(s - {v}, h.edges)


@settings(max_examples=100, deadline=None)
@given(hypergraphs())
def test_deterministic(h):
    assert collect(dualize_reverse_search, h) == collect(dualize_reverse_search, h)
    assert collect(dualize_bruteforce, h) == collect(dualize_bruteforce, h)


def test_bruteforce_order_is_size_then_lexicographic():
    got = collect(dualize_bruteforce, TABLE1_H)
    assert got == [(1, 2), (1, 4), (2, 3)]


@pytest.mark.parametrize("engine", [dualize_bruteforce, dualize_reverse_search])
def test_stop_signal(engine):
    h = Hypergraph.from_edges(range(10), [{2 * i, 2 * i + 1} for i in range(5)])
    seen = []

    def sink(y):
        seen.append(y)
        return len(seen) < 3

    meter = Meter()
    assert engine(h, sink, meter) == 3
    assert len(seen) == 3
    assert meter.current == 0


def test_reverse_search_working_set_is_bounded():
    rng = random.Random(77)
    for _ in range(200):
        h = random_hypergraph(rng)
        meter = Meter()
        n = dualize_reverse_search(h, lambda y: None, meter)
        assert meter.current == 0
        m = len(h.edges)
        # one frame per edge level plus two words per vertex on the path
        assert meter.peak <= (m + 1) + 2 * m
        if n and m:
            assert meter.peak >= 1


def test_format_transversal():
    assert format_transversal((20, 13)) == "21 14"
    assert format_transversal(()) == ""
