"""Editing to a connected d-regular graph.

For ``d <= 3k + 1`` the instance is kernelized and the kernel is solved
exhaustively.  For larger ``d`` the solver guesses a record: how many
components of ``G - Z`` the solution touches and of which types, how many
edges it adds between each pair of them (as a bipartite degree pair), the
net edge change between each deviant vertex and each touched component,
and the edits inside ``Z``.  Each record is checked in polynomial time by
solving one costed subproblem per (slot, component) pair, picking an
assignment of components to slots, gluing the partial solutions and
repairing connectivity inside every touched component.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .costs import CostInstance, solve_with_costs
from .graph import (EMPTY_EDITS, EditInstance, EditSet, Graph, Pair,
                    connected_components, pair, verify_solution)
from .kernel import kernelize
from .oracle import DEFAULT_LIMITS, GuardExceeded, SearchLimits, brute_force_solve
from .partitions import (Partition, composition_check, conjugate, graphic_pairs,
                         realize_between)

DEFAULT_MAX_RECORDS = 10 ** 7
METHODS = ("auto", "kernel", "records")
_INF = 10 ** 9


class RepairError(RuntimeError):
    """No cost-preserving move reconnects the component."""


# ---------------------------------------------------------------------------
# component types


@dataclass(frozen=True)
class ComponentTyping:
    """Components of ``G - Z`` (ordered by smallest id) grouped by type.

    ``signatures[t]`` lists, for each deviant vertex in ascending order, the
    number of its neighbours in a component of type ``t``, capped at ``k + 1``.
    """

    Z: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    type_of: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    signatures: tuple[tuple[int, ...], ...]

    @property
    def t(self) -> int:
        return len(self.classes)


def component_typing(G: Graph, Z: Sequence[int], k: int) -> ComponentTyping:
    Z = tuple(sorted(Z))
    zs = set(Z)
    comps = Graph(set(G.vertices) - zs,
                  [e for e in G.edges if e[0] not in zs and e[1] not in zs]).components()
    sig_id: dict[tuple[int, ...], int] = {}
    type_of = []
    for comp in comps:
        cs = set(comp)
        sig = tuple(min(len(G.neighbors(z) & cs), k + 1) for z in Z)
        type_of.append(sig_id.setdefault(sig, len(sig_id)))
    classes = tuple(tuple(i for i, t in enumerate(type_of) if t == tt)
                    for tt in range(len(sig_id)))
    return ComponentTyping(Z, tuple(tuple(c) for c in comps), tuple(type_of), classes,
                           tuple(sig for sig, _ in sorted(sig_id.items(), key=lambda x: x[1])))


# ---------------------------------------------------------------------------
# records

CrossPair = tuple[Partition, Partition]
_EMPTY_PAIR: CrossPair = ((), ())


@dataclass(frozen=True)
class Record:
    s: int
    theta: tuple[int, ...]
    C: tuple[tuple[CrossPair, ...], ...]
    R: tuple[tuple[int, ...], ...]
    D_Z: frozenset[Pair]
    A_Z: frozenset[Pair]

    def c(self, j: int, h: int) -> int:
        return sum(self.C[j][h][0])

    def cross_total(self) -> int:
        return sum(self.c(j, h) for j in range(self.s) for h in range(j + 1, self.s))


def _cell_choices(limit: int) -> list[CrossPair]:
    out = [_EMPTY_PAIR]
    for n in range(1, limit + 1):
        out.extend(graphic_pairs(n))
    return out


def _tables(s: int, k: int, prune: bool) -> Iterator[tuple[tuple[CrossPair, ...], ...]]:
    cells = [(j, h) for j in range(s) for h in range(j + 1, s)]

    def rec(idx: int, left: int, chosen: list[CrossPair]):
        if idx == len(cells):
            table = [[_EMPTY_PAIR] * s for _ in range(s)]
            for (j, h), (a, b) in zip(cells, chosen):
                table[j][h] = (a, b)
                table[h][j] = (b, a)
            yield tuple(tuple(row) for row in table)
            return
        for cell in _cell_choices(left if prune else k):
            chosen.append(cell)
            yield from rec(idx + 1, left - sum(cell[0]), chosen)
            chosen.pop()

    yield from rec(0, k, [])


def _matrices(r: int, s: int, k: int, budget: int | None) -> Iterator[tuple[tuple[int, ...], ...]]:
    cells = r * s

    def rec(idx: int, left, vals: list[int]):
        if idx == cells:
            yield tuple(tuple(vals[j * s:(j + 1) * s]) for j in range(r))
            return
        bound = k if left is None else min(k, left)
        for x in range(-bound, bound + 1):
            vals.append(x)
            yield from rec(idx + 1, None if left is None else left - abs(x), vals)
            vals.pop()

    yield from rec(0, budget, [])


def _subsets(items: Sequence[Pair], limit: int) -> Iterator[frozenset[Pair]]:
    for size in range(0, min(limit, len(items)) + 1):
        for combo in itertools.combinations(items, size):
            yield frozenset(combo)


def enumerate_records(inst: EditInstance, typing: ComponentTyping,
                      max_records: int = DEFAULT_MAX_RECORDS,
                      prune: bool = True) -> Iterator[Record]:
    """Yield every record for ``inst`` in a fixed order.

    Order is ``s`` ascending, then lexicographic in
    ``(theta, C, R, D_Z, A_Z)``.  With ``prune`` (the default) records are
    skipped when the edits they force already exceed ``k`` or when a type
    is used more often than it has components; both conditions rule out
    any corresponding solution.

    Raises
    ------
    GuardExceeded
        After ``max_records`` records have been produced.
    """
    k = inst.k
    Z = typing.Z
    G = inst.graph
    z_pairs = list(itertools.combinations(Z, 2))
    z_edges = [e for e in z_pairs if G.has_edge(*e)]
    z_non = [e for e in z_pairs if not G.has_edge(*e)]
    p, t = len(typing.components), typing.t
    sizes = [len(c) for c in typing.classes]
    count = 0
    for s in range(0, min(2 * k, p) + 1):
        for theta in itertools.combinations_with_replacement(range(t), s):
            if prune and any(m > sizes[ty] for ty, m in Counter(theta).items()):
                continue
            for C in _tables(s, k, prune):
                cross = sum(sum(C[j][h][0]) for j in range(s) for h in range(j + 1, s))
                for R in _matrices(len(Z), s, k, k - cross if prune else None):
                    rest = k - cross - sum(abs(x) for row in R for x in row)
                    lim = rest if prune else len(z_pairs)
                    for DZ in _subsets(z_edges, lim):
                        for AZ in _subsets(z_non, lim - len(DZ) if prune else len(z_non)):
                            count += 1
                            if count > max_records:
                                raise GuardExceeded(f"more than {max_records} records")
                            yield Record(s, theta, C, R, DZ, AZ)


# ---------------------------------------------------------------------------
# auxiliary costed instances


@dataclass(frozen=True)
class AuxInstance:
    """Costed subproblem for one component with prescribed outside demands.

    ``ci`` is None when some deviant vertex would need a negative degree.
    ``W`` holds the stand-in vertex ids for the other touched components.
    """

    component: frozenset[int]
    Z: tuple[int, ...]
    W: tuple[int, ...]
    ci: CostInstance | None

    @property
    def feasible(self) -> bool:
        return self.ci is not None


def build_aux_instance(inst: EditInstance, component: Sequence[int], Z: Sequence[int],
                       Q: Sequence[int], Qp: Sequence[int]) -> AuxInstance:
    Z = tuple(sorted(Z))
    if len(Q) != len(Z):
        raise ValueError("Q needs one entry per deviant vertex")
    if len(Qp) > inst.k:
        raise ValueError("more stand-in vertices than the budget")
    G, d, k = inst.graph, inst.d, inst.k
    comp = frozenset(component)
    first = max(G.vertices, default=0) + 1
    W = tuple(range(first, first + len(Qp)))
    keep = comp | set(Z)
    edges = [e for e in G.subgraph(keep).edges if e[0] in comp or e[1] in comp]
    F = Graph(keep | set(W), edges)
    delta = {v: d for v in comp}
    for z, q in zip(Z, Q):
        delta[z] = F.degree(z) + q
    delta.update(zip(W, Qp))
    if any(x < 0 for x in delta.values()):
        return AuxInstance(comp, Z, W, None)
    outer = sorted(set(Z) | set(W))
    rho = {e: k + 1 for e in itertools.combinations(outer, 2)}
    return AuxInstance(comp, Z, W, CostInstance(F, delta, rho, k))


def _f_prime(aux: AuxInstance, sol: EditSet) -> dict[int, set[int]]:
    return aux.ci.graph.edited(sol.deleted, sol.added).adjacency()


def _spread(aux: AuxInstance, adj: dict[int, set[int]]) -> int:
    """Number of components of ``F'`` meeting the component's vertices."""
    label = {}
    for i, comp in enumerate(connected_components(adj)):
        for v in comp:
            label[v] = i
    return len({label[v] for v in aux.component})


def _valid(aux: AuxInstance, deleted: set[Pair], added: set[Pair]) -> bool:
    F = aux.ci.graph
    if deleted & added:
        return False
    return all(F.has_edge(*e) for e in deleted) and not any(F.has_edge(*e) for e in added)


def repair_connectivity(aux: AuxInstance, sol: EditSet) -> EditSet:
    """Equal-cost solution keeping the component's vertices in one piece.

    Repeatedly picks a deleted edge ``xy`` inside the component whose ends
    fall into different pieces of ``F' = F - D + A`` and tries, in order,
    to swap the partners of two added edges at ``x`` and ``y``, or to move
    the deletion onto a non-bridge edge on ``x``'s side while re-pointing
    the two added edges.  A move is kept only if the number of pieces
    meeting the component drops, so the loop ends.

    Raises
    ------
    RepairError
        When no such move exists.
    """
    ci = aux.ci
    if ci is None:
        raise ValueError("aux instance is infeasible")
    outer = set(aux.Z) | set(aux.W)
    for u, v in sol.deleted | sol.added:
        assert not (u in outer and v in outer), "edit inside Z and W"
    cost = ci.edit_cost(sol)
    comp = aux.component
    D, A = set(sol.deleted), set(sol.added)
    while True:
        adj = _f_prime(aux, EditSet(frozenset(D), frozenset(A)))
        spread = _spread(aux, adj)
        if spread <= 1:
            break
        label = {}
        for i, c in enumerate(connected_components(adj)):
            for v in c:
                label[v] = i
        bad = [e for e in sorted(D) if e[0] in comp and e[1] in comp
               and label[e[0]] != label[e[1]]]
        moved = False
        for x0, y0 in bad:
            for x, y in ((x0, y0), (y0, x0)):
                for cand in _moves(aux, D, A, x, y, adj):
                    nD, nA = cand
                    new = EditSet(frozenset(nD), frozenset(nA))
                    if ci.edit_cost(new) != cost or not ci.degrees_ok(new):
                        continue
                    if _spread(aux, _f_prime(aux, new)) < spread:
                        D, A = nD, nA
                        moved = True
                        break
                if moved:
                    break
            if moved:
                break
        if not moved:
            raise RepairError("no cost-preserving reconnection move")
    return EditSet(frozenset(D), frozenset(A))


def _moves(aux: AuxInstance, D: set[Pair], A: set[Pair], x: int, y: int, adj):
    comp = aux.component
    at_x = sorted(e[0] if e[1] == x else e[1] for e in A if x in e)
    at_y = sorted(e[0] if e[1] == y else e[1] for e in A if y in e)
    # swap partners: ux, vy -> uy, vx
    for u in at_x:
        for v in at_y:
            if u == v or u == y or v == x:
                continue
            nA = (A - {pair(u, x), pair(v, y)}) | {pair(u, y), pair(v, x)}
            if len(nA) == len(A) and _valid(aux, D, nA):
                yield D, nA
    # reroute: delete a non-bridge x'y' on x's side instead of xy
    side = set()
    G_minus = {v: {w for w in aux.ci.graph.neighbors(v) if w in comp and pair(v, w) not in D}
               for v in comp}
    stack = [x]
    side.add(x)
    while stack:
        a = stack.pop()
        for b in G_minus[a]:
            if b not in side:
                side.add(b)
                stack.append(b)
    side_edges = sorted({pair(a, b) for a in side for b in G_minus[a]})
    for u in at_x:
        for v in at_y:
            if u == v:
                continue
            for a, b in side_edges:
                if not _nonbridge(G_minus, side, (a, b)):
                    continue
                for xp, yp in ((a, b), (b, a)):
                    nD = (D - {pair(x, y)}) | {pair(xp, yp)}
                    nA = (A - {pair(u, x), pair(v, y)})
                    if u == xp or v == yp:
                        continue
                    nA = nA | {pair(u, xp), pair(v, yp)}
                    if len(nA) == len(A) and len(nD) == len(D) and _valid(aux, nD, nA):
                        yield nD, nA


def _nonbridge(adj: dict[int, set[int]], side: set[int], e: Pair) -> bool:
    a, b = e
    seen = {a}
    stack = [a]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if (u, w) in ((a, b), (b, a)) or w in seen:
                continue
            if w == b:
                return True
            seen.add(w)
            stack.append(w)
    return False


# ---------------------------------------------------------------------------
# one record


@dataclass
class _Solver:
    inst: EditInstance
    typing: ComponentTyping
    backend: str = "auto"
    limits: SearchLimits = DEFAULT_LIMITS
    cache: dict = field(default_factory=dict)

    def aux(self, j: int, Q: tuple[int, ...], Qp: tuple[int, ...]) -> AuxInstance:
        key = ("aux", j, Q, Qp)
        if key not in self.cache:
            self.cache[key] = build_aux_instance(self.inst, self.typing.components[j],
                                                 self.typing.Z, Q, Qp)
        return self.cache[key]

    def solve(self, j: int, Q: tuple[int, ...], Qp: tuple[int, ...]):
        key = ("sol", j, Q, Qp)
        if key not in self.cache:
            aux = self.aux(j, Q, Qp)
            found = None
            if aux.feasible:
                found = solve_with_costs(aux.ci, self.backend, self.limits)
            self.cache[key] = found
        return self.cache[key]


def _slot_demands(L: Record, i: int) -> tuple[tuple[int, ...], tuple[int, ...], list[tuple[int, int]]]:
    """``Q``, ``Q'`` for slot ``i`` and the (other slot, length) blocks of ``Q'``."""
    Q = tuple(row[i] for row in L.R)
    Qp: list[int] = []
    blocks = []
    for h in range(L.s):
        if h != i and L.c(i, h) > 0:
            part = conjugate(L.C[i][h][0])
            blocks.append((h, len(part)))
            Qp.extend(part)
    return Q, tuple(Qp), blocks


def solve_record(inst: EditInstance, L: Record, typing: ComponentTyping,
                 backend: str = "auto", limits: SearchLimits = DEFAULT_LIMITS,
                 _solver: _Solver | None = None) -> EditSet | None:
    """Solution of ``inst`` that corresponds to ``L``, or None."""
    solver = _solver or _Solver(inst, typing, backend, limits)
    G, d, k = inst.graph, inst.d, inst.k
    Z = typing.Z
    # Step 1
    hat = G.edited(L.D_Z, L.A_Z)
    for j, z in enumerate(Z):
        if hat.degree(z) + sum(L.R[j]) != d:
            return None
    # Step 2
    cross = L.cross_total()
    if cross > k:
        return None
    # Step 3
    s, p = L.s, len(typing.components)
    demands = [_slot_demands(L, i) for i in range(s)]
    weight = np.full((s, p), _INF, dtype=np.int64)
    for i in range(s):
        Q, Qp, _ = demands[i]
        for j in typing.classes[L.theta[i]]:
            found = solver.solve(j, Q, Qp)
            if found is not None:
                weight[i, j] = found[1]
    # Step 4
    if s:
        rows, cols = linear_sum_assignment(weight)
        if any(weight[r, c] >= _INF for r, c in zip(rows, cols)):
            return None
        mu = int(weight[rows, cols].sum())
        slot_comp = [int(c) for _, c in sorted(zip(rows, cols))]
    else:
        mu, slot_comp = 0, []
    if mu - cross + len(L.D_Z) + len(L.A_Z) > k:
        return None
    # Step 5
    D: set[Pair] = set(L.D_Z)
    A: set[Pair] = set(L.A_Z)
    to_w: list[dict[int, dict[int, int]]] = []
    for i in range(s):
        Q, Qp, blocks = demands[i]
        aux = solver.aux(slot_comp[i], Q, Qp)
        sol, _ = solver.solve(slot_comp[i], Q, Qp)
        W = set(aux.W)
        D |= sol.deleted
        per_block: dict[int, dict[int, int]] = {}
        w_block = {}
        pos = 0
        for h, length in blocks:
            for w in aux.W[pos:pos + length]:
                w_block[w] = h
            pos += length
        for e in sol.added:
            if e[0] in W or e[1] in W:
                w, x = (e[0], e[1]) if e[0] in W else (e[1], e[0])
                deg = per_block.setdefault(w_block[w], {})
                deg[x] = deg.get(x, 0) + 1
            else:
                A.add(e)
        to_w.append(per_block)
    for i in range(s):
        for h in range(i + 1, s):
            if L.c(i, h) == 0:
                continue
            left, right = to_w[i].get(h, {}), to_w[h].get(i, {})
            a1 = tuple(sorted(left.values(), reverse=True))
            b1 = tuple(sorted(right.values(), reverse=True))
            assert composition_check(a1, L.C[i][h][0], L.C[i][h][1], b1)
            A.update(pair(u, v) for u, v in realize_between(left, right))
    # Step 6
    for i in range(s):
        comp = set(typing.components[slot_comp[i]])
        Q = tuple(row[i] for row in L.R)
        outside = Counter()
        for e in A:
            if e[0] in comp and e[1] not in comp and e[1] not in Z:
                outside[e[1]] += 1
            elif e[1] in comp and e[0] not in comp and e[0] not in Z:
                outside[e[0]] += 1
        Wi = sorted(outside)
        Qp = tuple(outside[w] for w in Wi)
        aux = solver.aux(slot_comp[i], Q, Qp)
        found = solver.solve(slot_comp[i], Q, Qp)
        if found is None:
            return None
        sol = found[0]
        try:
            sol = repair_connectivity(aux, sol)
        except RepairError:
            pass
        rename = dict(zip(aux.W, Wi))
        D = {e for e in D if e[0] not in comp and e[1] not in comp}
        A = {e for e in A if e[0] not in comp and e[1] not in comp}
        D |= sol.deleted
        A |= {pair(rename.get(u, u), rename.get(v, v)) for u, v in sol.added}
    # Step 7
    edits = EditSet(frozenset(D), frozenset(A))
    if not verify_solution(inst, edits).ok:
        return None
    return edits


# ---------------------------------------------------------------------------
# top level


def solve_regular(G: Graph, d: int, k: int, method: str = "auto",
                  max_records: int = DEFAULT_MAX_RECORDS, backend: str = "auto",
                  limits: SearchLimits = DEFAULT_LIMITS) -> EditSet | None:
    """Edit ``G`` into a connected ``d``-regular graph with at most ``k`` edits.

    ``method`` selects the branch: ``"kernel"`` (kernelize, then exhaustive
    search), ``"records"`` (record enumeration) or ``"auto"``, which uses
    the kernel exactly when ``d <= 3k + 1``.  The record branch is only
    guaranteed complete for ``d > 3k + 1``.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    inst = EditInstance.regular(G, d, k)
    if verify_solution(inst, EMPTY_EDITS).ok:
        return EMPTY_EDITS
    if k == 0 or (G.n * d) % 2 or d > G.n - 1:
        return None
    if method == "auto":
        method = "kernel" if d <= 3 * k + 1 else "records"
    if method == "kernel":
        kernel, _ = kernelize(inst)
        if kernel is None:
            return None
        sol = brute_force_solve(kernel, limits)
        if sol is None:
            return None
        if kernel.graph == inst.graph and kernel.delta == inst.delta:
            return sol
        return brute_force_solve(inst, limits)
    Z = [v for v in G.vertices if G.degree(v) != d]
    if len(Z) > 2 * k:
        return None
    typing = component_typing(G, Z, k)
    solver = _Solver(inst, typing, backend, limits)
    for L in enumerate_records(inst, typing, max_records):
        sol = solve_record(inst, L, typing, _solver=solver)
        if sol is not None:
            return sol
    return None
