"""Minimal transversal enumeration (hypergraph dualization).

Two engines stream every minimal transversal to a sink, each exactly once:

``dualize_reverse_search``
    Depth-first reverse search over pairs ``(S, i)`` where ``S`` is a minimal
    transversal of the first ``i`` edges.  The parent of ``(S, i)`` is
    ``(S, i-1)`` when ``S`` is already minimal for the first ``i-1`` edges,
    otherwise ``(S - {v}, i-1)`` for the unique ``v`` whose only critical edge is edge
    ``i-1``.  A child therefore adds one vertex ``v`` of the first missed
    edge, and is accepted iff every other vertex of ``S`` keeps a critical
    edge (an edge it alone hits) among the earlier edges.  The tree is walked
    with an explicit stack; working storage is ``O(|edges| * |S|)`` words and
    nothing emitted is retained.

``dualize_bruteforce``
    Literal definition over all vertex subsets.  Test oracle only.

A sink is any callable taking the transversal as a tuple of vertices.
Returning ``False`` stops the enumeration; any other return value continues.
Reverse search hands over vertices in the order they were added along the
search path (e.g. ``21 14 -> 22``); brute force in vertex order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Sequence

from ._bits import bits, iter_bits, mask_of
from .meter import Meter

__all__ = [
    "Hypergraph",
    "TransversalSink",
    "CapacityError",
    "MAX_BRUTEFORCE_VERTICES",
    "minimize_edges",
    "dualize",
    "dualize_bruteforce",
    "dualize_reverse_search",
    "format_transversal",
]

TransversalSink = Callable[[tuple[int, ...]], object]

MAX_BRUTEFORCE_VERTICES = 20

ENGINES = ("reverse_search", "bruteforce")


class CapacityError(ValueError):
    pass


def minimize_edges(edges: Iterable[Iterable[int]]) -> list[frozenset[int]]:
    """Drop duplicate edges and edges that contain another edge.

    Survivors keep their first-occurrence order.
    """
    uniq: list[frozenset[int]] = []
    seen = set()
    for e in edges:
        e = frozenset(e)
        if e not in seen:
            seen.add(e)
            uniq.append(e)
    return [e for e in uniq if not any(f < e for f in uniq)]


@dataclass(frozen=True)
class Hypergraph:
    vertices: tuple[int, ...]
    edges: tuple[frozenset[int], ...]
    unsatisfiable: bool = False

    @classmethod
    def from_edges(
        cls, vertices: Sequence[int], raw_edges: Iterable[Iterable[int]]
    ) -> "Hypergraph":
        """Minimize ``raw_edges``; an empty raw edge marks the hypergraph unsatisfiable."""
        raw = [frozenset(e) for e in raw_edges]
        vset = set(vertices)
        for e in raw:
            if not e <= vset:
                raise ValueError(f"edge {sorted(e)} not within the vertex set")
        unsat = any(not e for e in raw)
        edges = minimize_edges(e for e in raw if e)
        return cls(tuple(vertices), tuple(edges), unsat)


def _emit_empty(sink: TransversalSink) -> int:
    sink(())
    return 1


def dualize_bruteforce(h: Hypergraph, sink: TransversalSink, meter: Meter | None = None) -> int:
    """Emit minimal transversals by increasing size, lexicographic in vertex order."""
    if len(h.vertices) > MAX_BRUTEFORCE_VERTICES:
        raise CapacityError(
            f"brute force handles at most {MAX_BRUTEFORCE_VERTICES} vertices, got {len(h.vertices)}"
        )
    if h.unsatisfiable:
        return 0
    edges = [mask_of(e) for e in h.edges]
    if meter is not None:
        meter.charge(len(h.vertices), "engine")
    count = 0
    try:
        for k in range(len(h.vertices) + 1):
            for combo in combinations(h.vertices, k):
                s = mask_of(combo)
                if not all(s & e for e in edges):
                    continue
                if any(all((s & ~(1 << v)) & e for e in edges) for v in combo):
                    continue
                count += 1
                if sink(combo) is False:
                    return count
    finally:
        if meter is not None:
            meter.release(len(h.vertices), "engine")
    return count


class _Frame:
    __slots__ = ("level", "cands", "pos", "log", "child")

    def __init__(self, level: int, cands: list[int], log: list[tuple[int, int]]):
        self.level = level
        self.cands = cands
        self.pos = 0
        self.log = log
        # (vertex added, saved crit values of the vertices already in S)
        self.child: tuple[int, list[int]] | None = None


def dualize_reverse_search(
    h: Hypergraph, sink: TransversalSink, meter: Meter | None = None
) -> int:
    if h.unsatisfiable:
        return 0
    edges = [mask_of(e) for e in h.edges]
    m = len(edges)
    if m == 0:
        return _emit_empty(sink)

    incidence: dict[int, int] = {}
    for j, e in enumerate(edges):
        for v in iter_bits(e):
            incidence[v] = incidence.get(v, 0) | (1 << j)

    order: list[int] = []  # S in insertion order
    crit: dict[int, int] = {}  # vertex -> mask of its critical edges so far
    s = 0

    def advance(i: int) -> tuple[int, list[tuple[int, int]]]:
        # skip edges S already meets, recording new critical edges for undo
        log = []
        while i < m:
            hit = s & edges[i]
            if not hit:
                break
            if hit & (hit - 1) == 0:
                v = hit.bit_length() - 1
                crit[v] |= 1 << i
                log.append((v, i))
            i += 1
        return i, log

    def undo(log: list[tuple[int, int]]) -> None:
        for v, i in log:
            crit[v] &= ~(1 << i)

    count = 0
    stack: list[_Frame] = []
    level, log = advance(0)
    stack.append(_Frame(level, bits(edges[level]), log))
    if meter is not None:
        meter.charge(1, "engine")

    while stack:
        f = stack[-1]
        if f.child is not None:
            v, saved = f.child
            order.pop()
            del crit[v]
            s &= ~(1 << v)
            for w, c in zip(order, saved):
                crit[w] = c
            f.child = None
            if meter is not None:
                meter.release(2, "engine")

        v = -1
        while f.pos < len(f.cands):
            cand = f.cands[f.pos]
            f.pos += 1
            keep = ~incidence[cand]
            if all(crit[w] & keep for w in order):
                v = cand
                break
        if v < 0:
            stack.pop()
            undo(f.log)
            if meter is not None:
                meter.release(1, "engine")
            continue

        keep = ~incidence[v]
        saved = [crit[w] for w in order]
        for w in order:
            crit[w] &= keep
        order.append(v)
        crit[v] = 1 << f.level
        s |= 1 << v
        f.child = (v, saved)
        if meter is not None:
            meter.charge(2, "engine")

        level, log = advance(f.level + 1)
        if level == m:
            count += 1
            stop = sink(tuple(order)) is False
            undo(log)
            if stop:
                break
        else:
            stack.append(_Frame(level, bits(edges[level]), log))
            if meter is not None:
                meter.charge(1, "engine")

    if meter is not None:
        # unwind whatever an early stop left on the stack
        for f in stack:
            meter.release(1 + (2 if f.child is not None else 0), "engine")
    return count


def dualize(
    h: Hypergraph,
    sink: TransversalSink,
    engine: str = "reverse_search",
    meter: Meter | None = None,
) -> int:
    if engine == "reverse_search":
        return dualize_reverse_search(h, sink, meter)
    if engine == "bruteforce":
        return dualize_bruteforce(h, sink, meter)
    raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")


def format_transversal(t: Iterable[int]) -> str:
    """Debug dump line: space-separated 1-based vertex numbers."""
    return " ".join(str(v + 1) for v in t)
