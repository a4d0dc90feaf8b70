"""Seeded instance generators and the Hamiltonicity reduction."""
from __future__ import annotations

import random
from dataclasses import dataclass

import networkx as nx

from .graph import EditInstance, EditSet, Graph, GraphError, pair

MODELS = ("random", "planted", "regular-planted")


@dataclass(frozen=True)
class GenParams:
    n: int
    d: int
    k: int
    seed: int = 0
    model: str = "planted"

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if self.n < 1 or self.d < 0 or self.k < 0:
            raise ValueError("need n >= 1, d >= 0, k >= 0")


def generate_random(p: GenParams) -> EditInstance:
    """Sparse random graph with targets near the current degrees."""
    rng = random.Random(p.seed)
    prob = min(1.0, p.d / max(p.n - 1, 1))
    edges = [(u, v) for u in range(1, p.n + 1) for v in range(u + 1, p.n + 1)
             if rng.random() < prob]
    g = Graph(range(1, p.n + 1), edges)
    delta = {}
    for v in g.sorted_vertices():
        delta[v] = min(p.d, max(0, g.degree(v) + rng.choice((-1, 0, 0, 1))))
    return EditInstance(g, delta, p.d, p.k)


def _bounded_base(n: int, d: int, rng: random.Random) -> Graph:
    if d < 2 and n > d + 1:
        raise GraphError(f"no connected graph on {n} vertices with degrees <= {d}")
    order = list(range(1, n + 1))
    rng.shuffle(order)
    deg = {v: 0 for v in order}
    edges = set()
    for i, v in enumerate(order[1:], start=1):
        u = rng.choice([w for w in order[:i] if deg[w] < d])
        edges.add(pair(u, v))
        deg[u] += 1
        deg[v] += 1
    for _ in range(n):
        u, v = rng.sample(order, 2) if n > 1 else (None, None)
        if u is None:
            break
        e = pair(u, v)
        if e not in edges and deg[u] < d and deg[v] < d:
            edges.add(e)
            deg[u] += 1
            deg[v] += 1
    return Graph(range(1, n + 1), edges)


def _regular_base(n: int, d: int, rng: random.Random) -> Graph:
    if (n * d) % 2 or d >= n:
        raise GraphError(f"no connected {d}-regular graph on {n} vertices")
    for _ in range(200):
        g = nx.random_regular_graph(d, n, seed=rng.randrange(2 ** 32))
        if n == 1 or nx.is_connected(g):
            return Graph(range(1, n + 1), [(u + 1, v + 1) for u, v in g.edges()])
    raise GraphError(f"could not draw a connected {d}-regular graph on {n} vertices")


def generate_planted(p: GenParams) -> tuple[EditInstance, EditSet]:
    """YES instance built by undoing up to ``k`` edits of a valid graph.

    Returns the instance and the witness that restores the base graph.
    """
    rng = random.Random(p.seed)
    if p.model == "regular-planted":
        base = _regular_base(p.n, p.d, rng)
    else:
        base = _bounded_base(p.n, p.d, rng)
    delta = base.degrees()
    all_pairs = [(u, v) for u in range(1, p.n + 1) for v in range(u + 1, p.n + 1)]
    j = rng.randint(0, min(p.k, len(all_pairs)))
    flipped = rng.sample(all_pairs, j)
    gone = {e for e in flipped if base.has_edge(*e)}
    new = {e for e in flipped if not base.has_edge(*e)}
    g = base.edited(gone, new)
    witness = EditSet(frozenset(new), frozenset(gone))
    return EditInstance(g, delta, p.d, p.k), witness


def generate(p: GenParams) -> tuple[EditInstance, EditSet | None]:
    if p.model == "random":
        return generate_random(p), None
    return generate_planted(p)


def reduce_hamiltonicity(G: Graph) -> EditInstance:
    """``G`` is Hamiltonian iff it can be edited into a cycle by deletions.

    A Hamiltonian cycle keeps ``n`` of the ``m`` edges, so the budget is
    ``m - n`` with every target degree equal to two.
    """
    if G.m < G.n:
        raise GraphError(f"need m >= n, got m={G.m}, n={G.n}")
    return EditInstance(G, {v: 2 for v in G.vertices}, 2, G.m - G.n)
