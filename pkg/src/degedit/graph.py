"""Graphs, edit sets and the structure of solutions.

A solution of an editing instance is a pair ``(D, A)`` of deleted edges and
added non-edges.  Besides applying and verifying such pairs this module
holds the structural helpers the kernel and the regular-case solver lean
on: the deviant set, alternating-trail covers and the swap that turns a
degree-correct but disconnected edit into a connected one.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

Pair = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graphs, instances or edit sets."""


class PreconditionError(GraphError):
    """A caller violated the documented precondition of an operation."""


def pair(u: int, v: int) -> Pair:
    if u == v:
        raise GraphError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph on integer vertex ids.

    Instances are treated as immutable; every editing helper returns a new
    graph.
    """

    __slots__ = ("_adj",)

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[Pair] = ()):
        adj: dict[int, set[int]] = {int(v): set() for v in vertices}
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if u not in adj or v not in adj:
                raise GraphError(f"edge {u}-{v} has an endpoint outside the vertex set")
            if v in adj[u]:
                raise GraphError(f"duplicate edge {u}-{v}")
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: frozenset(nb) for v, nb in adj.items()}

    @classmethod
    def _from_adj(cls, adj: Mapping[int, Iterable[int]]) -> "Graph":
        g = cls.__new__(cls)
        g._adj = {v: frozenset(nb) for v, nb in adj.items()}
        return g

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self._adj)

    @property
    def edges(self) -> frozenset[Pair]:
        return frozenset((u, v) for u, nb in self._adj.items() for v in nb if u < v)

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return sum(len(nb) for nb in self._adj.values()) // 2

    def sorted_vertices(self) -> list[int]:
        return sorted(self._adj)

    def sorted_edges(self) -> list[Pair]:
        return sorted(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> dict[int, int]:
        return {v: len(nb) for v, nb in self._adj.items()}

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def adjacency(self) -> dict[int, set[int]]:
        """Return a mutable copy of the adjacency map."""
        return {v: set(nb) for v, nb in self._adj.items()}

    def subgraph(self, vertices: Iterable[int]) -> "Graph":
        keep = set(vertices)
        return Graph._from_adj({v: self._adj[v] & keep for v in keep})

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        return connected_components(self._adj)

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def edited(self, deleted: Iterable[Pair] = (), added: Iterable[Pair] = ()) -> "Graph":
        adj = self.adjacency()
        for u, v in deleted:
            adj[u].discard(v)
            adj[v].discard(u)
        for u, v in added:
            adj[u].add(v)
            adj[v].add(u)
        return Graph._from_adj(adj)


def connected_components(adj: Mapping[int, Iterable[int]]) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for s in sorted(adj):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


@dataclass(frozen=True)
class EditInstance:
    """An instance ``(G, delta, d, k)``: reach degrees ``delta`` with at most
    ``k`` edge edits while ending connected."""

    graph: Graph
    delta: Mapping[int, int]
    d: int
    k: int

    def __post_init__(self):
        delta = {int(v): int(x) for v, x in self.delta.items()}
        object.__setattr__(self, "delta", delta)
        if set(delta) != set(self.graph.vertices):
            raise GraphError("delta must be defined on exactly the vertices of the graph")
        if self.k < 0:
            raise GraphError(f"budget k must be non-negative, got {self.k}")
        for v, x in delta.items():
            if not 0 <= x <= self.d:
                raise GraphError(f"delta({v})={x} outside 0..{self.d}")

    @classmethod
    def regular(cls, graph: Graph, d: int, k: int) -> "EditInstance":
        return cls(graph, {v: d for v in graph.vertices}, d, k)

    def with_budget(self, k: int) -> "EditInstance":
        return EditInstance(self.graph, self.delta, self.d, k)


@dataclass(frozen=True)
class EditSet:
    deleted: frozenset[Pair] = frozenset()
    added: frozenset[Pair] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "deleted", frozenset(pair(*e) for e in self.deleted))
        object.__setattr__(self, "added", frozenset(pair(*e) for e in self.added))
        both = self.deleted & self.added
        if both:
            raise GraphError(f"pairs both deleted and added: {sorted(both)}")

    @property
    def cost(self) -> int:
        return len(self.deleted) + len(self.added)

    def __len__(self) -> int:
        return self.cost

    def sorted(self) -> tuple[list[Pair], list[Pair]]:
        return sorted(self.deleted), sorted(self.added)


EMPTY_EDITS = EditSet()


def check_edits(graph: Graph, edits: EditSet) -> None:
    """Raise :class:`GraphError` unless ``edits`` is well formed for ``graph``."""
    for u, v in edits.deleted:
        if not graph.has_edge(u, v):
            raise GraphError(f"deleted pair {u}-{v} is not an edge")
    for u, v in edits.added:
        if u not in graph or v not in graph:
            raise GraphError(f"added pair {u}-{v} has an endpoint outside the graph")
        if graph.has_edge(u, v):
            raise GraphError(f"added pair {u}-{v} is already an edge")


def _graph_of(obj) -> Graph:
    return obj.graph if isinstance(obj, EditInstance) else obj


def apply_edits(inst: EditInstance | Graph, edits: EditSet) -> Graph:
    """Return ``G - D + A``; the vertex set is unchanged."""
    graph = _graph_of(inst)
    check_edits(graph, edits)
    return graph.edited(edits.deleted, edits.added)


@dataclass(frozen=True)
class VerifyReport:
    degrees_ok: bool
    connected: bool
    within_budget: bool
    mismatches: dict[int, tuple[int, int]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.degrees_ok and self.connected and self.within_budget


def verify_solution(inst: EditInstance, edits: EditSet) -> VerifyReport:
    result = apply_edits(inst, edits)
    mismatches = {
        v: (result.degree(v), inst.delta[v])
        for v in result.sorted_vertices()
        if result.degree(v) != inst.delta[v]
    }
    return VerifyReport(
        degrees_ok=not mismatches,
        connected=result.is_connected(),
        within_budget=edits.cost <= inst.k,
        mismatches=mismatches,
    )


@dataclass(frozen=True)
class DeviantReport:
    Z: frozenset[int]
    s_total: int
    deficits: dict[int, int]


def deviant_report(inst: EditInstance) -> DeviantReport:
    g = inst.graph
    gap = {v: inst.delta[v] - g.degree(v) for v in g.vertices}
    return DeviantReport(
        Z=frozenset(v for v, x in gap.items() if x != 0),
        s_total=sum(abs(x) for x in gap.values()),
        deficits={v: x for v, x in sorted(gap.items()) if x > 0},
    )


# ---------------------------------------------------------------------------
# alternating trails


@dataclass(frozen=True)
class Trail:
    vertices: tuple[int, ...]
    labels: tuple[str, ...]  # "D" or "A" per edge

    @property
    def edges(self) -> tuple[Pair, ...]:
        return tuple(pair(a, b) for a, b in zip(self.vertices, self.vertices[1:]))

    @property
    def closed(self) -> bool:
        return self.vertices[0] == self.vertices[-1] and len(self.labels) % 2 == 0

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class TrailCover:
    trails: tuple[Trail, ...]

    def __iter__(self):
        return iter(self.trails)

    def __len__(self) -> int:
        return len(self.trails)


def _incidence(edits: EditSet) -> dict[int, list[tuple[Pair, str]]]:
    inc: dict[int, list[tuple[Pair, str]]] = {}
    for label, edges in (("D", edits.deleted), ("A", edits.added)):
        for e in edges:
            for x in e:
                inc.setdefault(x, []).append((e, label))
    for lst in inc.values():
        lst.sort()
    return inc


def check_trail_conditions(graph: Graph, edits: EditSet, Z: Iterable[int],
                           delta: Mapping[int, int] | None = None) -> None:
    """Raise :class:`PreconditionError` if the per-vertex balance fails.

    Non-deviant vertices must see as many deleted as added edits.  With
    ``delta`` the deviant vertices are checked too:
    ``deg(z) - delta(z) = #D(z) - #A(z)``.
    """
    Z = set(Z)
    inc = _incidence(edits)
    for v in sorted(set(inc) | Z):
        nd = sum(1 for _, lab in inc.get(v, ()) if lab == "D")
        na = len(inc.get(v, ())) - nd
        if v not in Z and nd != na:
            raise PreconditionError(f"vertex {v} outside Z has {nd} deletions but {na} additions")
        if v in Z and delta is not None and graph.degree(v) - delta[v] != nd - na:
            raise PreconditionError(f"deviant vertex {v} is not balanced by the edits")
        if v in Z and not inc.get(v):
            raise PreconditionError(f"deviant vertex {v} is untouched by the edits")


def decompose_alternating_trails(graph: Graph, edits: EditSet, Z: Iterable[int],
                                 delta: Mapping[int, int] | None = None) -> TrailCover:
    """Cover ``D | A`` by edge-disjoint alternating trails.

    Trails are grown greedily, starting from deviant vertices (lowest id
    first) and always taking the lowest unused edge of the opposite label.
    Open trails end in ``Z``; the rest are closed trails of even length.
    """
    Z = set(Z)
    check_edits(graph, edits)
    check_trail_conditions(graph, edits, Z, delta)
    inc = _incidence(edits)
    used: set[Pair] = set()

    def next_edge(v: int, want: str | None):
        for e, lab in inc.get(v, ()):
            if e not in used and (want is None or lab == want):
                return e, lab
        return None

    def grow(start: int) -> Trail:
        verts = [start]
        labels: list[str] = []
        want = None
        cur = start
        while True:
            step = next_edge(cur, want)
            if step is None:
                break
            e, lab = step
            used.add(e)
            cur = e[1] if e[0] == cur else e[0]
            verts.append(cur)
            labels.append(lab)
            want = "A" if lab == "D" else "D"
        return Trail(tuple(verts), tuple(labels))

    trails = []
    for z in sorted(Z):
        while next_edge(z, None) is not None:
            trails.append(grow(z))
    for v in sorted(inc):
        while next_edge(v, None) is not None:
            trails.append(grow(v))
    cover = TrailCover(tuple(trails))
    for t in cover:
        if not t.closed and not (t.vertices[0] in Z and t.vertices[-1] in Z):
            raise PreconditionError("edits do not decompose into alternating trails ending in Z")
    return cover


# ---------------------------------------------------------------------------
# components and reconnection


def count_components_after_deletion(graph: Graph, D: Iterable[Pair]) -> int:
    D = [pair(*e) for e in D]
    for u, v in D:
        if not graph.has_edge(u, v):
            raise GraphError(f"deleted pair {u}-{v} is not an edge")
    return len(graph.edited(deleted=D).components())


def _bridges_free(adj: dict[int, set[int]], e: Pair) -> bool:
    """True when removing edge ``e`` keeps its endpoints connected."""
    u, v = e
    adj[u].discard(v)
    adj[v].discard(u)
    seen = {u}
    queue = deque([u])
    found = False
    while queue and not found:
        x = queue.popleft()
        for w in adj[x]:
            if w == v:
                found = True
                break
            if w not in seen:
                seen.add(w)
                queue.append(w)
    adj[u].add(v)
    adj[v].add(u)
    return found


def rearrange_to_connect(inst: EditInstance, D: Iterable[Pair], A: Iterable[Pair]) -> EditSet:
    """Swap added edges across components until ``G - D + A`` is connected.

    A swap replaces ``{u1v1, u2v2}`` (in different components, ``u1v1`` not
    a bridge of its component) by ``{u1u2, v1v2}`` or ``{u1v2, v1u2}``.  The
    lexicographically smallest swap that lowers the component count wins.
    A new pair that is in ``D`` cancels against that deletion, so degree
    effects are unchanged and ``|D| + |A|`` never grows.
    """
    edits = EditSet(frozenset(D), frozenset(A))
    g = inst.graph
    check_edits(g, edits)
    base = g.edited(deleted=edits.deleted)
    r = len(base.components())
    result = base.edited(added=edits.added)
    if any(result.degree(v) != inst.delta[v] for v in g.vertices):
        raise PreconditionError("G - D + A is not degree-correct")
    if edits.cost > inst.k:
        raise PreconditionError("edit set exceeds the budget")
    if len(edits.added) < r - 1:
        raise PreconditionError("too few added edges to join the components of G - D")
    for comp in base.components():
        if sum(inst.delta[v] - base.degree(v) for v in comp) <= 0:
            raise PreconditionError(f"component containing {comp[0]} has no deficit")

    deleted = set(edits.deleted)
    added = set(edits.added)
    while True:
        adj = g.edited(deleted, added).adjacency()
        comps = connected_components(adj)
        if len(comps) == 1:
            return EditSet(frozenset(deleted), frozenset(added))
        where = {v: i for i, comp in enumerate(comps) for v in comp}
        swap = _find_swap(g, deleted, adj, comps, where, sorted(added))
        if swap is None:
            raise PreconditionError("no component-reducing swap exists")
        old, new = swap
        added -= set(old)
        for p in new:
            if p in deleted:
                deleted.discard(p)
            else:
                added.add(p)


def _find_swap(g: Graph, deleted: set[Pair], adj, comps, where, added: list[Pair]):
    n_before = len(comps)
    for i, e1 in enumerate(added):
        if not _bridges_free(adj, e1):
            continue
        for e2 in added:
            if where[e2[0]] == where[e1[0]]:
                continue
            (u1, v1), (u2, v2) = e1, e2
            for new in (((u1, u2), (v1, v2)), ((u1, v2), (v1, u2))):
                new = tuple(pair(*p) for p in new)
                # a surviving edge or a pending addition would become a double edge
                if any((g.has_edge(*p) and p not in deleted) or p in added for p in new):
                    continue
                trial = {v: set(nb) for v, nb in adj.items()}
                for a, b in (e1, e2):
                    trial[a].discard(b)
                    trial[b].discard(a)
                for a, b in new:
                    trial[a].add(b)
                    trial[b].add(a)
                if len(connected_components(trial)) < n_before:
                    return (e1, e2), new
    return None
