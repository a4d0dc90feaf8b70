"""Integer partitions, dominance and bipartite degree sequences.

Partitions are plain tuples of positive integers in non-increasing order;
trailing zeros are never stored and comparisons pad with zeros.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

import networkx as nx

Partition = tuple[int, ...]


class InfeasibleError(ValueError):
    """A degree pair has no simple bipartite realization."""


def as_partition(seq: Iterable[int]) -> Partition:
    """Sort ``seq`` into a partition, dropping zeros."""
    parts = sorted((int(x) for x in seq), reverse=True)
    if parts and parts[-1] < 0:
        raise ValueError(f"negative part in {parts}")
    return tuple(x for x in parts if x > 0)


def _check(p: Sequence[int]) -> None:
    if any(x <= 0 for x in p) or any(a < b for a, b in zip(p, p[1:])):
        raise ValueError(f"{tuple(p)} is not a partition")


def conjugate(p: Sequence[int]) -> Partition:
    """Conjugate partition: part ``j`` counts the parts of ``p`` that are >= j."""
    _check(p)
    if not p:
        return ()
    return tuple(sum(1 for x in p if x >= j) for j in range(1, p[0] + 1))


def dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff every prefix sum of ``a`` is at least the matching prefix of ``b``."""
    sa = sb = 0
    for i in range(max(len(a), len(b))):
        sa += a[i] if i < len(a) else 0
        sb += b[i] if i < len(b) else 0
        if sa < sb:
            return False
    return True


def is_bipartite_graphic(a: Sequence[int], b: Sequence[int]) -> bool:
    """Gale-Ryser test for a pair of partitions."""
    _check(a)
    _check(b)
    return sum(a) == sum(b) and dominates(conjugate(a), b)


def realize_bipartite(a: Sequence[int], b: Sequence[int]) -> list[tuple[int, int]]:
    """Simple bipartite graph with left degrees ``a`` and right degrees ``b``.

    Returns edges ``(i, j)`` meaning ``x_i y_j`` with 0-based indices.  The
    realization is read off a maximum flow from a source through the left
    side (capacities ``a_i``), unit arcs, the right side and into a sink
    (capacities ``b_j``).

    Raises
    ------
    InfeasibleError
        If the flow cannot saturate ``sum(a)``.
    """
    a, b = tuple(a), tuple(b)
    if any(x < 0 for x in a + b):
        raise ValueError("degrees must be non-negative")
    # integer node ids keep networkx's traversal order independent of string hashing
    src, sink = 0, 1
    left = [2 + i for i in range(len(a))]
    right = [2 + len(a) + j for j in range(len(b))]
    net = nx.DiGraph()
    net.add_node(src)
    for i, x in enumerate(a):
        net.add_edge(src, left[i], capacity=x)
    for j, y in enumerate(b):
        net.add_edge(right[j], sink, capacity=y)
    for i in range(len(a)):
        for j in range(len(b)):
            net.add_edge(left[i], right[j], capacity=1)
    net.add_node(sink)
    value, flow = nx.maximum_flow(net, src, sink)
    if sum(a) != sum(b) or value != sum(a):
        raise InfeasibleError(f"({a}, {b}) is not bipartite graphic")
    return sorted(
        (i, j)
        for i in range(len(a))
        for j in range(len(b))
        if flow[left[i]].get(right[j], 0) == 1
    )


def realize_between(left: dict[int, int], right: dict[int, int]) -> list[tuple[int, int]]:
    """Realize prescribed degrees on two disjoint labelled vertex sets.

    ``left`` and ``right`` map vertex ids to the number of cross edges they
    must receive.  Vertices are ordered by degree (desc) then id so the
    result is deterministic.
    """
    lv = sorted((v for v in left if left[v] > 0), key=lambda v: (-left[v], v))
    rv = sorted((v for v in right if right[v] > 0), key=lambda v: (-right[v], v))
    edges = realize_bipartite([left[v] for v in lv], [right[v] for v in rv])
    return sorted((lv[i], rv[j]) for i, j in edges)


def composition_check(a1: Sequence[int], a: Sequence[int], b: Sequence[int],
                      b1: Sequence[int]) -> bool:
    """Return whether ``(a1, b1)`` is graphic; all four must partition one n.

    Whenever ``(a, b)``, ``(a1, a*)`` and ``(b*, b1)`` are graphic the answer
    is necessarily True, so callers use this as an assertion site.
    """
    sums = {sum(a1), sum(a), sum(b), sum(b1)}
    if len(sums) != 1:
        raise ValueError(f"partitions of different integers: {sorted(sums)}")
    return is_bipartite_graphic(a1, b1)


@lru_cache(maxsize=None)
def partitions_of(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def graphic_pairs(n: int) -> tuple[tuple[Partition, Partition], ...]:
    """Every bipartite graphic pair of partitions of ``n``, lexicographic."""
    parts = sorted(partitions_of(n))
    return tuple((a, b) for a in parts for b in parts if is_bipartite_graphic(a, b))
