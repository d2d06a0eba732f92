"""Support graphs, the maximal support vertex set, and blockage-graph validation."""

from __future__ import annotations

import heapq
from collections.abc import Iterable
from dataclasses import dataclass, field

from ._bits import iter_bits, mask_of, to_set
from .coloring import Coloring
from .program import Program
from .rdg import Rdg

__all__ = [
    "SupportGraph",
    "QueueStats",
    "max_support_vertices",
    "max_support_mask",
    "closure_from_plus",
    "witness_edges",
    "is_support_graph",
    "is_blockage_graph",
]

Edge = tuple[int, int]


@dataclass(frozen=True)
class SupportGraph:
    vertices: frozenset[int]
    edges: frozenset[Edge]


@dataclass
class QueueStats:
    """Push counts of the queue-driven closures, one entry per invocation."""

    pushes: list[int] = field(default_factory=list)

    @property
    def max_pushes(self) -> int:
        return max(self.pushes, default=0)


def _horn_closure(g: Rdg, seed_plus: int, excluded: int, stats: QueueStats | None, order: list[int] | None = None) -> int:
    """Rules reachable by forward chaining from ``seed_plus``, avoiding ``excluded``.

    Heads of ``seed_plus`` count as derived up front. Each rule keeps a
    counter of pbody atoms not yet derived; the counter of a successor drops
    once per newly derived atom, so shared heads are not double-counted.
    """
    heads = g.heads
    derived: set[int] = {heads[r] for r in iter_bits(seed_plus)}
    result = seed_plus
    candidates = g.vmask & ~excluded & ~seed_plus
    counter: dict[int, int] = {}
    queue: list[int] = []
    for r in iter_bits(candidates):
        missing = sum(1 for q in g.pbodies[r] if q not in derived)
        counter[r] = missing
        if missing == 0:
            queue.append(r)
    pushes = len(queue)
    heapq.heapify(queue)
    succ0 = g.succ0
    while queue:
        r = heapq.heappop(queue)
        result |= 1 << r
        if order is not None:
            order.append(r)
        h = heads[r]
        if h in derived:
            continue
        derived.add(h)
        for r2 in succ0[r]:
            c = counter.get(r2)
            if c is None or c == 0:
                continue
            counter[r2] = c - 1
            if c == 1:
                heapq.heappush(queue, r2)
                pushes += 1
    if stats is not None:
        stats.pushes.append(pushes)
    return result


def max_support_mask(g: Rdg, minus_mask: int, stats: QueueStats | None = None) -> int:
    return _horn_closure(g, 0, minus_mask, stats)


def closure_from_plus(g: Rdg, c: Coloring, stats: QueueStats | None = None) -> int:
    """Plus part of the closure that adds every supported rule outside ``c``'s minus side."""
    return _horn_closure(g, c.plus_mask & g.vmask, c.minus_mask, stats)


def max_support_vertices(
    g: Rdg, p: Program, c: Coloring, stats: QueueStats | None = None
) -> tuple[frozenset[int], bool]:
    """Largest vertex set of a support graph of ``g`` avoiding ``c``'s minus rules.

    ``ok`` tells whether that set covers every plus rule, i.e. whether the
    colored graph has a support graph at all.
    """
    v = max_support_mask(g, c.minus_mask, stats)
    return to_set(v), c.plus_mask & ~v == 0


def witness_edges(g: Rdg, p: Program, v: Iterable[int]) -> SupportGraph:
    """An acyclic 0-edge witness for a support-closed vertex set.

    Every vertex gets, for each pbody atom, one in-edge from the first rule
    (in derivation order) that derives the atom; derivation order is a
    topological order so the result is acyclic.
    """
    vs = frozenset(v)
    if not vs <= g.vertices:
        raise ValueError("vertex set is not contained in the graph")
    sub_mask = mask_of(vs)
    order: list[int] = []
    # chaining inside v only: anything not derivable inside v is not support-closed
    reached = _horn_closure(g, 0, g.vmask & ~sub_mask, None, order)
    if reached != sub_mask:
        bad = to_set(sub_mask & ~reached)
        raise ValueError(f"vertex set is not support-closed; unsupported rules {sorted(bad)}")
    first: dict[int, int] = {}
    for r in order:
        first.setdefault(g.heads[r], r)
    edges = {(first[q], r) for r in vs for q in g.pbodies[r]}
    return SupportGraph(vs, frozenset(edges))


def _acyclic(vertices: frozenset[int], edges: frozenset[Edge]) -> bool:
    indeg = {v: 0 for v in vertices}
    out: dict[int, list[int]] = {v: [] for v in vertices}
    for a, b in edges:
        indeg[b] += 1
        out[a].append(b)
    ready = [v for v, d in indeg.items() if d == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return seen == len(vertices)


def is_support_graph(g: Rdg, p: Program, c: Coloring, sg: SupportGraph) -> bool:
    vs, es = sg.vertices, sg.edges
    if not vs <= g.vertices:
        return False
    if any(a not in vs or b not in vs or (a, b) not in g.e0 for a, b in es):
        return False
    if not _acyclic(vs, es):
        return False
    covered: dict[int, set[int]] = {r: set() for r in vs}
    for a, b in es:
        covered[b].add(g.heads[a])
    if any(not set(g.pbodies[r]) <= covered[r] for r in vs):
        return False
    return c.plus <= vs and not (c.minus & vs)


def is_blockage_graph(g: Rdg, p: Program, c: Coloring, v: Iterable[int], e: Iterable[Edge]) -> bool:
    """No 1-edge between two plus rules, and every minus vertex is blocked by a plus rule."""
    vs = frozenset(v)
    es = frozenset(e)
    if any(a not in vs or b not in vs or (a, b) not in g.e1 for a, b in es):
        raise ValueError("edge set must lie within the 1-edges restricted to the vertex set")
    plus, minus = c.plus, c.minus
    if any(a in plus and b in plus for a, b in es):
        return False
    blocked = {b for a, b in es if a in plus and b in minus}
    return blocked == (minus & vs)
