"""Polynomial kernel for connected degree editing.

Seven reduction rules shrink an instance ``(G, delta, d, k)`` to an
equivalent one whose size is bounded by a polynomial in ``k`` and ``d``:

1. reject instances with too many deviant vertices, odd or oversized
   total degree gap, or too many components;
2. replace the far part of a component of ``G - Z`` that has a large
   spare matching by a path-and-ladder gadget;
3. replace a large tree component away from ``Z`` by a short path;
4. replace a large unicyclic component away from ``Z`` by a short cycle;
5. replace big pendant trees at a branch vertex by a path;
6. replace a long tree hanging on one branch vertex by a path loop;
7. replace a long tree strung between two branch vertices by a path.

Every application is recorded as a :class:`TraceEntry` so the kernel can
be replayed from the input.  Rules are tried in a fixed order and the
driver restarts after each hit; every hit removes vertices, so the loop
stops after at most ``|V(G)|`` rounds.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable

import networkx as nx

from .graph import EditInstance, Graph, Pair, connected_components, pair


class Decision(enum.Enum):
    NO = "no"
    PASS = "pass"


@dataclass(frozen=True)
class TraceEntry:
    """One rewrite: which rule, where, and exactly what changed."""

    rule: str
    target: tuple[int, ...] = ()
    removed: tuple[int, ...] = ()
    added: tuple[int, ...] = ()
    edges: tuple[Pair, ...] = ()
    delta: tuple[tuple[int, int], ...] = ()
    info: str = ""


KernelTrace = list[TraceEntry]


@dataclass(frozen=True)
class BranchSet:
    B1: frozenset[int]
    B2: frozenset[int]
    hatG: Graph

    @property
    def B(self) -> frozenset[int]:
        return self.B1 | self.B2


# ---------------------------------------------------------------------------
# mutable working copy


class _Work:
    def __init__(self, inst: EditInstance):
        self.adj = inst.graph.adjacency()
        self.delta = dict(inst.delta)
        self.d = max(inst.d, 3)
        self.k = inst.k
        self.next_id = max(self.adj, default=0) + 1

    def freeze(self) -> EditInstance:
        return EditInstance(Graph._from_adj(self.adj), self.delta, self.d, self.k)

    def deg(self, v: int) -> int:
        return len(self.adj[v])

    def deviant(self) -> set[int]:
        return {v for v in self.adj if len(self.adj[v]) != self.delta[v]}

    def ball(self, centre: Iterable[int], radius: int) -> set[int]:
        dist = {v: 0 for v in centre}
        queue = deque(dist)
        while queue:
            u = queue.popleft()
            if dist[u] == radius:
                continue
            for w in self.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return set(dist)

    def induced_components(self, vertices: Iterable[int]) -> list[list[int]]:
        keep = set(vertices)
        return connected_components({v: self.adj[v] & keep for v in keep})

    def edges_within(self, vertices: Iterable[int]) -> list[Pair]:
        keep = set(vertices)
        return sorted({pair(u, w) for u in keep for w in self.adj[u] if w in keep})

    def new_vertex(self) -> int:
        v = self.next_id
        self.next_id += 1
        self.adj[v] = set()
        return v

    def apply(self, entry: TraceEntry) -> None:
        for v in entry.removed:
            for w in self.adj.pop(v):
                self.adj[w].discard(v)
            del self.delta[v]
        for v in entry.added:
            if v in self.adj:
                raise ValueError(f"vertex {v} already exists")
            self.adj[v] = set()
            self.next_id = max(self.next_id, v + 1)
        for u, v in entry.edges:
            self.adj[u].add(v)
            self.adj[v].add(u)
        for v, x in entry.delta:
            self.delta[v] = x


def _path_gadget(work: _Work, length: int, rule: str, target, removed, ends) -> TraceEntry:
    """Fresh path on ``length`` vertices, optionally tied to ``ends``.

    ``ends`` is ``(left, right)`` of existing vertices to join to the first
    and last path vertex (either may be None).  Target degrees equal the
    degrees inside the rewritten graph.
    """
    first = work.next_id
    path = list(range(first, first + length))
    edges = [pair(a, b) for a, b in zip(path, path[1:])]
    left, right = ends
    if left is not None:
        edges.append(pair(left, path[0]))
    if right is not None:
        edges.append(pair(right, path[-1]))
    deg = {v: 0 for v in path}
    for a, b in edges:
        for x in (a, b):
            if x in deg:
                deg[x] += 1
    return TraceEntry(rule, tuple(target), tuple(sorted(removed)), tuple(path),
                      tuple(sorted(edges)), tuple(sorted(deg.items())))


# ---------------------------------------------------------------------------
# Rule 1


def _rule1_reason(work: _Work) -> str | None:
    Z = work.deviant()
    s = sum(abs(work.deg(v) - work.delta[v]) for v in work.adj)
    k = work.k
    if len(Z) > 2 * k:
        return f"|Z|={len(Z)}>2k"
    if s % 2:
        return f"s={s} odd"
    if s > 2 * k:
        return f"s={s}>2k"
    ncomp = len(connected_components(work.adj))
    if ncomp >= k + 2:
        return f"{ncomp} components>=k+2"
    return None


def rule1_sanity(inst: EditInstance) -> Decision:
    return Decision.NO if _rule1_reason(_Work(inst)) else Decision.PASS


# ---------------------------------------------------------------------------
# Rules 2-4: components of G - Z


def _components_minus_z(work: _Work, Z: set[int]) -> list[list[int]]:
    return work.induced_components(v for v in work.adj if v not in Z)


def _spanning_tree(work: _Work, comp: list[int], pieces: list[list[int]]) -> set[Pair]:
    parent = {v: v for v in comp}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree: set[Pair] = set()

    def bfs(vertices):
        inside = set(vertices)
        start = min(inside)
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in sorted(work.adj[u] & inside):
                ru, rw = find(u), find(w)
                if ru != rw:
                    parent[ru] = rw
                    tree.add(pair(u, w))
                if w not in seen:
                    seen.add(w)
                    queue.append(w)

    for piece in pieces:
        bfs(piece)
    bfs(comp)
    return tree


def _max_matching_size(edges: list[Pair], need: int) -> int:
    used: set[int] = set()
    greedy = 0
    for u, v in edges:
        if u not in used and v not in used:
            used.update((u, v))
            greedy += 1
    if greedy >= need:
        return greedy
    g = nx.Graph(edges)
    return len(nx.max_weight_matching(g, maxcardinality=True))


def _rule2(work: _Work, comp: list[int], Z: set[int]) -> TraceEntry | None:
    k = work.k
    n2 = work.ball(Z, 2)
    near = [v for v in comp if v in n2]
    pieces = work.induced_components(near)
    ell = len(pieces)
    far = [v for v in comp if v not in n2]
    if len(far) <= ell + 2 * k + 1:
        return None
    tree = _spanning_tree(work, comp, pieces)
    spare = [e for e in work.edges_within(comp)
             if e not in tree and e[0] not in n2 and e[1] not in n2]
    need = -(-k // 3)
    if _max_matching_size(spare, need) < need:
        return None

    far_set = set(far)
    anchors = [min(v for v in piece if work.adj[v] & far_set) for piece in pieces]
    s = k // 3
    first = work.next_id
    vs = list(range(first, first + ell + 1))
    xs = list(range(first + ell + 1, first + ell + 1 + s))
    ys = list(range(first + ell + 1 + s, first + ell + 1 + 2 * s))
    edges = [pair(u, v) for u, v in zip(anchors, vs[1:])]
    edges += [pair(a, b) for a, b in zip(vs, vs[1:])]
    if s:
        edges += [pair(vs[0], xs[0]), pair(vs[0], ys[0])]
        edges += [pair(a, b) for a, b in zip(xs, xs[1:])]
        edges += [pair(a, b) for a, b in zip(ys, ys[1:])]
        edges += [pair(a, b) for a, b in zip(xs, ys)]
    new_deg = {v: 0 for v in vs + xs + ys}
    for a, b in edges:
        for x in (a, b):
            if x in new_deg:
                new_deg[x] += 1
    if s:
        expected = {v: 3 for v in vs[:-1] + xs[:-1] + ys[:-1]}
        expected.update({vs[-1]: 2, xs[-1]: 2, ys[-1]: 2})
        assert expected == new_deg, "gadget degrees disagree with the rule"
    deltas = dict(new_deg)
    for v in near:
        deltas[v] = len(work.adj[v] - far_set) + (1 if v in anchors else 0)
    return TraceEntry("2", (min(comp),), tuple(sorted(far)), tuple(vs + xs + ys),
                      tuple(sorted(edges)), tuple(sorted(deltas.items())))


def _touches(work: _Work, comp: list[int], Z: set[int]) -> bool:
    return any(work.adj[v] & Z for v in comp)


def _rule3(work: _Work, comp: list[int], Z: set[int]) -> TraceEntry | None:
    k, d = work.k, work.d
    length = max(k, 2)
    if _touches(work, comp, Z) or len(comp) <= length:
        return None
    if len(work.edges_within(comp)) != len(comp) - 1 or 2 * len(comp) < k * d + 2:
        return None
    return _path_gadget(work, length, "3", (min(comp),), comp, (None, None))


def _rule4(work: _Work, comp: list[int], Z: set[int]) -> TraceEntry | None:
    k, d = work.k, work.d
    length = max(k, 3)
    if _touches(work, comp, Z) or len(comp) <= length:
        return None
    if len(work.edges_within(comp)) != len(comp) or 2 * len(comp) < k * d:
        return None
    entry = _path_gadget(work, length, "4", (min(comp),), comp, (None, None))
    path = entry.added
    edges = tuple(sorted(entry.edges + (pair(path[0], path[-1]),)))
    return TraceEntry("4", entry.target, entry.removed, path, edges,
                      tuple((v, 2) for v in path))


# ---------------------------------------------------------------------------
# branch vertices and Rules 5-7


def _branch(work: _Work, Z: set[int]) -> tuple[set[int], set[int], dict[int, set[int]]]:
    protected = work.ball(Z, 1)
    hat = {v: set(nb) for v, nb in work.adj.items()}
    queue = deque(sorted(v for v in hat if v not in protected and len(hat[v]) <= 1))
    while queue:
        v = queue.popleft()
        if v not in hat:
            continue
        for w in hat.pop(v):
            hat[w].discard(v)
            if w not in protected and len(hat[w]) <= 1:
                queue.append(w)
    near_z = set(Z & hat.keys())
    for z in Z & hat.keys():
        near_z |= hat[z]
    B1 = {v for v in hat if len(hat[v]) >= 3 or v in near_z}
    B2 = set()
    for v in hat:
        if v in B1 or len(hat[v]) != 2:
            continue
        total = 0
        for start in sorted(hat[v]):
            prev, cur, steps = v, start, 1
            while cur not in B1 and cur != v:
                nxt = [w for w in hat[cur] if w != prev]
                prev, cur = cur, nxt[0]
                steps += 1
            if cur == v:
                total = None
                break
            total += steps
        if total is not None and total <= 6:
            B2.add(v)
    return B1, B2, hat


def branch_vertices(inst: EditInstance) -> BranchSet:
    work = _Work(inst)
    B1, B2, hat = _branch(work, work.deviant())
    return BranchSet(frozenset(B1), frozenset(B2), Graph._from_adj(hat))


def _hanging_trees(work: _Work, B: set[int]):
    """Tree components of ``G - B`` with their edges into ``B``.

    Yields ``(vertices, attachments)`` where ``attachments`` maps each
    branch vertex to the list of tree vertices adjacent to it.
    """
    for comp in work.induced_components(v for v in work.adj if v not in B):
        if len(work.edges_within(comp)) != len(comp) - 1:
            continue
        att: dict[int, list[int]] = {}
        for x in comp:
            for b in work.adj[x] & B:
                att.setdefault(b, []).append(x)
        yield comp, att


def _splits(work: _Work, cut: set[int]) -> bool:
    before = len(connected_components(work.adj))
    rest = {v: work.adj[v] - cut for v in work.adj if v not in cut}
    return len(connected_components(rest)) > before


def _rule5(work: _Work, v: int, trees) -> TraceEntry | None:
    k, d = work.k, work.d
    pend = [comp for comp, att in trees if set(att) == {v} and len(att[v]) == 1]
    if not pend:
        return None
    size = 1 + sum(len(c) for c in pend)
    if 2 * size < k * d + 2 * d * d or not _splits(work, {v}):
        return None
    removed = [x for c in pend for x in c]
    entry = _path_gadget(work, k + 1, "5", (v,), removed, (v, None))
    path = entry.added
    deltas = dict(entry.delta)
    deltas[path[-1]] = 1
    deltas[v] = work.deg(v) - len(pend) + 1
    return TraceEntry("5", (v,), entry.removed, path, entry.edges,
                      tuple(sorted(deltas.items())))


def _rule6(work: _Work, v: int, trees) -> TraceEntry | None:
    k, d = work.k, work.d
    for comp, att in trees:
        if set(att) != {v} or len(att[v]) != 2:
            continue
        if 2 * len(comp) < (k + 4) * d + 2 or not _splits(work, {v}):
            continue
        return _path_gadget(work, k + 2, "6", (v,), comp, (v, v))
    return None


def _rule7(work: _Work, u: int, v: int, trees) -> TraceEntry | None:
    k, d = work.k, work.d
    for comp, att in trees:
        if set(att) != {u, v} or len(att[u]) != 1 or len(att[v]) != 1:
            continue
        if att[u][0] == att[v][0]:
            continue
        if 2 * len(comp) < (k + 4) * d + 2 or not _splits(work, {u, v}):
            continue
        return _path_gadget(work, k + 2, "7", (u, v), comp, (u, v))
    return None


# ---------------------------------------------------------------------------
# public single-rule wrappers


def _component_rule(fn, inst: EditInstance, i: int) -> tuple[EditInstance, bool]:
    work = _Work(inst)
    Z = work.deviant()
    comps = _components_minus_z(work, Z)
    entry = fn(work, comps[i], Z)
    if entry is None:
        return inst, False
    work.apply(entry)
    return work.freeze(), True


def rule2_shrink_component(inst: EditInstance, i: int) -> tuple[EditInstance, bool]:
    """Apply Rule 2 to the ``i``-th component of ``G - Z`` (ordered by smallest id)."""
    return _component_rule(_rule2, inst, i)


def rule3_tree_to_path(inst: EditInstance, i: int) -> tuple[EditInstance, bool]:
    return _component_rule(_rule3, inst, i)


def rule4_unicyclic_to_cycle(inst: EditInstance, i: int) -> tuple[EditInstance, bool]:
    return _component_rule(_rule4, inst, i)


def _branch_rule(inst: EditInstance, apply) -> tuple[EditInstance, bool]:
    work = _Work(inst)
    Z = work.deviant()
    B1, B2, _ = _branch(work, Z)
    entry = apply(work, B1 | B2, list(_hanging_trees(work, B1 | B2)))
    if entry is None:
        return inst, False
    work.apply(entry)
    return work.freeze(), True


def rule5_pendant_trees(inst: EditInstance, v: int) -> tuple[EditInstance, bool]:
    return _branch_rule(inst, lambda w, B, t: _rule5(w, v, t) if v in B else None)


def rule6_7_tree_between(inst: EditInstance, u: int, v: int) -> tuple[EditInstance, bool]:
    """Rule 7 for ``u != v``; Rule 6 when ``u == v``."""
    if u == v:
        return _branch_rule(inst, lambda w, B, t: _rule6(w, v, t) if v in B else None)
    u, v = min(u, v), max(u, v)
    return _branch_rule(inst, lambda w, B, t: _rule7(w, u, v, t) if {u, v} <= B else None)


# ---------------------------------------------------------------------------
# driver


def _next_entry(work: _Work) -> TraceEntry | None:
    Z = work.deviant()
    comps = _components_minus_z(work, Z)
    for rule in (_rule2, _rule3, _rule4):
        for comp in comps:
            entry = rule(work, comp, Z)
            if entry is not None:
                return entry
    B1, B2, _ = _branch(work, Z)
    B = B1 | B2
    trees = list(_hanging_trees(work, B))
    for v in sorted(B):
        entry = _rule5(work, v, trees)
        if entry is not None:
            return entry
    for v in sorted(B):
        entry = _rule6(work, v, trees)
        if entry is not None:
            return entry
    pairs = sorted({(min(a, b), max(a, b)) for _, att in trees if len(att) == 2
                    for a, b in [tuple(att)]})
    for u, v in pairs:
        entry = _rule7(work, u, v, trees)
        if entry is not None:
            return entry
    return None


def kernelize(inst: EditInstance) -> tuple[EditInstance | None, KernelTrace]:
    """Reduce ``inst`` to an equivalent kernel.

    Returns ``(kernel, trace)``; ``kernel`` is None when Rule 1 rejects the
    instance.  Instances with ``k == 0`` are already decided by Rule 1 and
    are returned unchanged when they pass it.
    """
    work = _Work(inst)
    trace: KernelTrace = []
    if work.d != inst.d:
        trace.append(TraceEntry("d", (work.d,)))
    reason = _rule1_reason(work)
    if reason is not None:
        trace.append(TraceEntry("1", info=reason))
        return None, trace
    if work.k == 0:
        return work.freeze(), trace
    while True:
        entry = _next_entry(work)
        if entry is None:
            break
        before = len(work.adj)
        work.apply(entry)
        assert len(work.adj) < before, f"rule {entry.rule} did not shrink the graph"
        trace.append(entry)
    kernel = work.freeze()
    bound = kernel_bound(inst.k, inst.d)
    assert kernel.graph.n <= bound, f"kernel has {kernel.graph.n} > {bound} vertices"
    return kernel, trace


def replay_trace(inst: EditInstance, trace: Iterable[TraceEntry]) -> EditInstance | None:
    """Re-apply a recorded trace to the instance it was produced from."""
    work = _Work(inst)
    work.d = inst.d
    for entry in trace:
        if entry.rule == "d":
            work.d = entry.target[0]
        elif entry.rule == "1":
            return None
        else:
            work.apply(entry)
    return work.freeze()


def kernel_bound(k: int, d: int) -> int:
    """Explicit vertex bound for kernels of ``(k, d)`` instances.

    The count follows the size argument for the kernel term by term:
    ``2k(d(d+1)+1)`` vertices within distance two of ``Z``, at most ``b1``
    far branch vertices of degree three or more and ``b2 = 4(b1 - 1)`` short
    path vertices, each carrying at most ``kd/2 + d^2 + 1`` vertices of
    compressed pendant trees, plus room for the gadgets of Rules 2-7 and
    for untouched small components.
    """
    d = max(d, 3)
    n1 = 2 * k * (d + 1)
    n2 = 2 * k * (d * (d + 1) + 1)
    n3 = 2 * k * (d + 1) * (d - 1) ** 2
    comps = 2 * k * (d + 1) + k
    b1 = max(0, 2 * (n3 + 2 * max(0, (2 * d - 3) * k - 2) * comps) - 2)
    b2 = 4 * max(0, b1 - 1)
    per_branch = (k * d + 1) // 2 + d * d + 1
    gadgets = (comps + 1) * (n1 + 1 + 2 * (k // 3)) + (k + 1) * (k + 3)
    small = (k + 1) * (k * d + 2 * d * d + 2)
    return n2 + (b1 + b2) * per_branch + gadgets + small
