"""Degree editing with pair costs (no connectivity requirement).

Two interchangeable backends solve the same contract:

``"exhaustive"``
    the increasing-cost search of :mod:`degedit.oracle`, always exact;
``"matching"``
    a reduction to minimum-weight perfect matching.  Every vertex ``v``
    gets one port per other vertex and as many slack nodes as it has
    ports beyond ``delta(v)``, each slack node joined to all of its ports;
    the two ports of a pair are joined by an edge weighted ``-rho`` for
    existing edges and ``+rho`` for non-edges.  A perfect matching selects
    exactly ``delta(v)`` port-to-port edges at each vertex, i.e. the
    target graph, and its weight plus ``rho(E(G))`` is the editing cost.
    Pairs costing more than the budget are frozen in their current state
    before the gadget is built.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

import networkx as nx

from .graph import EditSet, Graph, GraphError, Pair, pair
from .oracle import DEFAULT_LIMITS, SearchLimits, search_edits

BACKENDS = ("exhaustive", "matching", "auto")


@dataclass(frozen=True)
class CostInstance:
    """Graph, target degrees, symmetric pair costs and a budget ``k``.

    ``rho`` holds explicit costs; pairs missing from it cost ``default_rho``.
    """

    graph: Graph
    delta: Mapping[int, int]
    rho: Mapping[Pair, int]
    k: int
    default_rho: int = 1

    def __post_init__(self):
        object.__setattr__(self, "delta", dict(self.delta))
        object.__setattr__(self, "rho", {pair(*p): int(c) for p, c in self.rho.items()})
        if set(self.delta) != set(self.graph.vertices):
            raise GraphError("delta must be defined on exactly the vertices of the graph")
        if self.k < 0:
            raise GraphError("budget must be non-negative")
        if self.default_rho <= 0 or any(c <= 0 for c in self.rho.values()):
            raise GraphError("pair costs must be positive integers")

    def cost(self, u: int, v: int) -> int:
        return self.rho.get(pair(u, v), self.default_rho)

    def edit_cost(self, edits: EditSet) -> int:
        return sum(self.cost(*e) for e in edits.deleted | edits.added)

    def degrees_ok(self, edits: EditSet) -> bool:
        g = self.graph.edited(edits.deleted, edits.added)
        return all(g.degree(v) == self.delta[v] for v in g.vertices)


def _exhaustive(ci: CostInstance, limits: SearchLimits) -> tuple[EditSet, int] | None:
    pairs = list(itertools.combinations(ci.graph.sorted_vertices(), 2))
    costs = [ci.cost(*p) for p in pairs]
    return search_edits(ci.graph, ci.delta, pairs, costs, ci.k, connected=False,
                        limits=limits)


def _matching(ci: CostInstance) -> tuple[EditSet, int] | None:
    g = ci.graph
    order = g.sorted_vertices()
    n = len(order)
    residual = {}
    for v in order:
        if not 0 <= ci.delta[v] <= n - 1:
            return None
        residual[v] = ci.delta[v]
    free: list[Pair] = []
    for u, v in itertools.combinations(order, 2):
        if ci.cost(u, v) > ci.k:
            if g.has_edge(u, v):
                residual[u] -= 1
                residual[v] -= 1
        else:
            free.append((u, v))
    # integer node ids keep the matching independent of string hashing
    ports: dict[int, list[int]] = {v: [] for v in order}
    port_pair: dict[int, Pair] = {}
    net = nx.Graph()
    for u, v in free:
        a, b = 2 * len(port_pair), 2 * len(port_pair) + 1
        port_pair[a] = port_pair[b] = (u, v)
        ports[u].append(a)
        ports[v].append(b)
        w = -ci.cost(u, v) if g.has_edge(u, v) else ci.cost(u, v)
        net.add_edge(a, b, weight=w)
    next_id = 2 * len(port_pair)
    for v in order:
        slack = len(ports[v]) - residual[v]
        if residual[v] < 0 or slack < 0:
            return None
        for _ in range(slack):
            for p in ports[v]:
                net.add_edge(next_id, p, weight=0)
            next_id += 1
    if net.number_of_nodes() == 0:
        return EditSet(), 0
    # networkx maximises cardinality first, so a perfect matching is found if one exists
    matching = nx.min_weight_matching(net)
    if 2 * len(matching) != net.number_of_nodes():
        return None
    deleted, added = [], []
    chosen = set()
    for a, b in matching:
        if a in port_pair and b in port_pair:
            chosen.add(port_pair[a])
    for u, v in free:
        if g.has_edge(u, v) and (u, v) not in chosen:
            deleted.append((u, v))
        elif not g.has_edge(u, v) and (u, v) in chosen:
            added.append((u, v))
    edits = EditSet(frozenset(deleted), frozenset(added))
    cost = ci.edit_cost(edits)
    if cost > ci.k:
        return None
    return edits, cost


def _auto_backend(ci: CostInstance) -> str:
    usable = sum(1 for p in itertools.combinations(ci.graph.sorted_vertices(), 2)
                 if ci.cost(*p) <= ci.k)
    # crude size of the depth-k search tree
    return "exhaustive" if usable ** min(ci.k, 6) <= 5 * 10 ** 7 else "matching"


def solve_with_costs(ci: CostInstance, backend: str = "auto",
                     limits: SearchLimits = DEFAULT_LIMITS) -> tuple[EditSet, int] | None:
    """Minimum-cost degree-correct edit set if it costs at most ``ci.k``.

    Returns ``(edits, cost)`` or None.  Connectivity is not required.
    """
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "auto":
        backend = _auto_backend(ci)
    if backend == "exhaustive":
        return _exhaustive(ci, limits)
    return _matching(ci)
