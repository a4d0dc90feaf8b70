"""Exhaustive edit search.

:func:`brute_force_solve` is the correctness oracle for everything else in
the package.  It enumerates edit sets by increasing cost, so the first hit
is a minimum-cost solution, and within one cost level it walks vertex
pairs in lexicographic order.  Two cheap prunes keep desk-scale instances
fast without losing exactness: a pair edit changes the total degree gap by
at most two, and a vertex whose last candidate pair has been passed must
already sit at its target degree.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .graph import EditInstance, EditSet, Graph, Pair


class GuardExceeded(RuntimeError):
    """A configured resource limit was hit before the search finished."""


@dataclass(frozen=True)
class SearchLimits:
    max_vertices: int = 40
    max_nodes: int = 50_000_000


DEFAULT_LIMITS = SearchLimits()


def _connected(n: int, adj: list[set[int]]) -> bool:
    if n <= 1:
        return True
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                count += 1
                queue.append(w)
    return count == n


def search_edits(graph: Graph, delta, candidates: Sequence[Pair], costs: Sequence[int],
                 budget: int, connected: bool,
                 limits: SearchLimits = DEFAULT_LIMITS) -> tuple[EditSet, int] | None:
    """Cheapest edit set over ``candidates`` reaching ``delta`` within ``budget``.

    ``candidates`` must be sorted; the edit set found first at the minimum
    cost is returned together with that cost, or None when nothing fits.
    """
    if graph.n > limits.max_vertices:
        raise GuardExceeded(f"{graph.n} vertices exceed the search limit {limits.max_vertices}")
    order = graph.sorted_vertices()
    index = {v: i for i, v in enumerate(order)}
    n = len(order)
    dev = [delta[v] - graph.degree(v) for v in order]
    base_adj = [{index[w] for w in graph.neighbors(v)} for v in order]

    cand = []
    for (u, v), c in zip(candidates, costs):
        if c <= budget:
            cand.append((index[u], index[v], graph.has_edge(u, v), c))
    P = len(cand)
    last = [-1] * n
    for j, (a, b, _, _) in enumerate(cand):
        last[a] = j
        last[b] = j
    closing: list[list[int]] = [[] for _ in range(P)]
    for v in range(n):
        if last[v] < 0:
            if dev[v] != 0:
                return None
        else:
            closing[last[v]].append(v)

    min_cost = min((c for *_, c in cand), default=1)
    total = sum(abs(x) for x in dev)
    if total > 2 * (budget // min_cost):
        return None

    state = {"S": total, "nodes": 0}
    chosen: list[int] = []

    def leaf_ok() -> bool:
        if not connected:
            return True
        adj = [set(nb) for nb in base_adj]
        for j in chosen:
            a, b, is_edge, _ = cand[j]
            if is_edge:
                adj[a].discard(b)
                adj[b].discard(a)
            else:
                adj[a].add(b)
                adj[b].add(a)
        return _connected(n, adj)

    def rec(i: int, remaining: int) -> bool:
        state["nodes"] += 1
        if state["nodes"] > limits.max_nodes:
            raise GuardExceeded(f"search exceeded {limits.max_nodes} nodes")
        if i > 0:
            for v in closing[i - 1]:
                if dev[v]:
                    return False
        if remaining == 0:
            return state["S"] == 0 and leaf_ok()
        if state["S"] > 2 * (remaining // min_cost):
            return False
        for j in range(i, P):
            if j > i:
                if any(dev[v] for v in closing[j - 1]):
                    return False
            a, b, is_edge, c = cand[j]
            if c > remaining:
                continue
            step = 1 if is_edge else -1
            old = abs(dev[a]) + abs(dev[b])
            dev[a] += step
            dev[b] += step
            state["S"] += abs(dev[a]) + abs(dev[b]) - old
            chosen.append(j)
            found = rec(j + 1, remaining - c)
            if found:
                return True
            chosen.pop()
            new = abs(dev[a]) + abs(dev[b])
            dev[a] -= step
            dev[b] -= step
            state["S"] += old - new
        return False

    for target in range(0, budget + 1):
        if total > 2 * (target // min_cost):
            continue
        if rec(0, target):
            deleted, added = [], []
            for j in chosen:
                a, b, is_edge, _ = cand[j]
                e = (order[a], order[b])
                (deleted if is_edge else added).append(e)
            return EditSet(frozenset(deleted), frozenset(added)), target
    return None


def all_pairs(graph: Graph) -> list[Pair]:
    return list(itertools.combinations(graph.sorted_vertices(), 2))


def brute_force_solve(inst: EditInstance,
                      limits: SearchLimits = DEFAULT_LIMITS) -> EditSet | None:
    """Minimum-cost solution of ``inst`` by exhaustive search, or None.

    Raises
    ------
    GuardExceeded
        When the instance or the search tree exceeds ``limits``.
    """
    pairs = all_pairs(inst.graph)
    found = search_edits(inst.graph, inst.delta, pairs, [1] * len(pairs), inst.k,
                         connected=True, limits=limits)
    return None if found is None else found[0]
