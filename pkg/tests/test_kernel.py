import networkx as nx
import pytest

from degedit.graph import EditInstance, Graph
from degedit.kernel import (Decision, branch_vertices, kernel_bound, kernelize, replay_trace,
                            rule1_sanity, rule2_shrink_component, rule3_tree_to_path,
                            rule4_unicyclic_to_cycle, rule5_pendant_trees, rule6_7_tree_between)
from degedit.oracle import brute_force_solve
from triggers import BUILDERS, rule5_instance


def answer(inst):
    return inst is not None and brute_force_solve(inst) is not None


def cube():
    g = nx.hypercube_graph(3)
    label = {v: i for i, v in enumerate(sorted(g.nodes()))}
    return [(label[u], label[v]) for u, v in g.edges()]


# --- Rule 1 -----------------------------------------------------------------

def test_rule1_too_many_deviant():
    g = Graph(range(5), [(0, 1), (1, 2), (2, 3), (3, 4)])
    delta = {0: 2, 1: 1, 2: 1, 3: 1, 4: 2}  # five deviant vertices
    assert rule1_sanity(EditInstance(g, delta, 3, 2)) is Decision.NO


def test_rule1_odd_gap():
    g = Graph(range(3), [(0, 1), (1, 2)])
    delta = {0: 2, 1: 2, 2: 2}  # gaps 1 + 0 + 1 = 2 is even; make it 3
    delta[1] = 3
    assert rule1_sanity(EditInstance(g, delta, 3, 5)) is Decision.NO


def test_rule1_components():
    g = Graph(range(3), [])
    assert rule1_sanity(EditInstance(g, {0: 0, 1: 0, 2: 0}, 2, 1)) is Decision.NO
    assert rule1_sanity(EditInstance(g, {0: 0, 1: 0, 2: 0}, 2, 2)) is Decision.PASS


def test_rule1_regular_passes():
    g = Graph(range(6), [(i, (i + 1) % 6) for i in range(6)])
    for k in range(4):
        assert rule1_sanity(EditInstance.regular(g, 2, k)) is Decision.PASS


# --- Rule 2 -----------------------------------------------------------------

def _path_plus_cube(k=3):
    # deviant path ends 0 and 2, plus a far 3-regular cube on 3..10
    edges = [(0, 1), (1, 2)] + [(u + 3, v + 3) for u, v in cube()]
    g = Graph(range(11), edges)
    delta = {v: g.degree(v) for v in g.vertices}
    delta[0] = delta[2] = 2
    return EditInstance(g, delta, 3, k)


def test_rule2_far_block_becomes_ladder():
    inst = _path_plus_cube()
    out, applied = rule2_shrink_component(inst, 1)
    assert applied
    assert out.graph.n == 3 + 3  # path plus v0, x1, y1
    new = sorted(set(out.graph.vertices) - {0, 1, 2})
    assert [out.graph.degree(v) for v in new] == [2, 2, 2]
    assert all(out.delta[v] == 2 for v in new)
    assert answer(inst) == answer(out) is True


def test_rule2_component_inside_n2_unchanged():
    inst = _path_plus_cube()
    out, applied = rule2_shrink_component(inst, 0)  # the middle vertex 1 only
    assert not applied and out is inst


def test_rule2_small_far_part_unchanged():
    # a 6-cycle far from Z: 6 <= l + 2k + 1 = 7
    edges = [(0, 1), (1, 2)] + [(3 + i, 3 + (i + 1) % 6) for i in range(6)]
    g = Graph(range(9), edges)
    delta = {v: g.degree(v) for v in g.vertices}
    delta[0] = delta[2] = 2
    out, applied = rule2_shrink_component(EditInstance(g, delta, 3, 3), 1)
    assert not applied


# --- Rules 3 and 4 ----------------------------------------------------------

def _with_far_component(edges, n_far, k):
    # far component on 0..n_far-1, deviant pair on two more vertices
    z1, z2 = n_far, n_far + 1
    g = Graph(range(n_far + 2), list(edges) + [(z1, z2)])
    delta = {v: g.degree(v) for v in g.vertices}
    delta[z1] = delta[z2] = 2
    return EditInstance(g, delta, 3, k)


def test_rule3_tree_to_path():
    tree = [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5), (5, 6)]
    inst = _with_far_component(tree, 7, 4)
    out, applied = rule3_tree_to_path(inst, 0)
    assert applied
    path = sorted(set(out.graph.vertices) - set(inst.graph.vertices))
    assert len(path) == 4
    assert [out.delta[v] for v in path] == [1, 2, 2, 1]
    assert out.graph.subgraph(path).m == 3


def test_rule3_small_tree_unchanged():
    inst = _with_far_component([(0, 1), (1, 2)], 3, 4)
    assert rule3_tree_to_path(inst, 0) == (inst, False)


def test_rule3_tree_next_to_z_unchanged():
    tree = [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5), (5, 6)]
    g = Graph(range(8), tree + [(6, 7)])
    delta = {v: g.degree(v) for v in g.vertices}
    delta[7] = 2
    delta[0] = 2
    inst = EditInstance(g, delta, 3, 4)
    for i in range(len(g.components())):
        assert not rule3_tree_to_path(inst, i)[1]


def test_rule4_unicyclic_to_cycle():
    uni = [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]
    inst = _with_far_component(uni, 6, 4)
    out, applied = rule4_unicyclic_to_cycle(inst, 0)
    assert applied
    cyc = sorted(set(out.graph.vertices) - set(inst.graph.vertices))
    assert len(cyc) == 4
    assert all(out.delta[v] == 2 == out.graph.degree(v) for v in cyc)


def test_rule4_rejects_trees_and_two_cycles():
    tree = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]
    assert not rule4_unicyclic_to_cycle(_with_far_component(tree, 6, 4), 0)[1]
    bicyclic = [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]
    assert not rule4_unicyclic_to_cycle(_with_far_component(bicyclic, 6, 4), 0)[1]


# --- branch vertices --------------------------------------------------------

def test_branch_vertices_tree_prunes_away():
    g = Graph(range(5), [(0, 1), (1, 2), (1, 3), (3, 4)])
    b = branch_vertices(EditInstance(g, g.degrees(), 3, 1))
    assert b.hatG.n == 0 and not b.B


def test_branch_vertices_cycle_has_no_anchors():
    g = Graph(range(6), [(i, (i + 1) % 6) for i in range(6)])
    b = branch_vertices(EditInstance.regular(g, 2, 1))
    assert b.hatG == g
    assert not b.B1 and not b.B2


def test_branch_vertices_two_triangles():
    g = Graph(range(6), [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)])
    b = branch_vertices(EditInstance(g, g.degrees(), 3, 1))
    assert b.B1 == {2, 3}
    assert b.B2 == {0, 1, 4, 5}


# --- Rules 5, 6, 7 ----------------------------------------------------------

def test_rule5_pendant_trees_replaced():
    inst = rule5_instance(0)
    v = 3  # adjacent to the deviant vertex 1, carries two pendant trees
    assert v in branch_vertices(inst).B
    out, applied = rule5_pendant_trees(inst, v)
    assert applied
    assert out.delta[v] == inst.graph.degree(v) - 1
    path = sorted(set(out.graph.vertices) - set(inst.graph.vertices))
    assert len(path) == inst.k + 1
    assert out.delta[path[-1]] == 1
    assert answer(inst) == answer(out)


def test_rule5_small_mass_unchanged():
    g = Graph(range(5), [(0, 1), (1, 2), (1, 3), (3, 4)])
    delta = g.degrees()
    delta[0] = 2
    delta[4] = 2
    inst = EditInstance(g, delta, 3, 1)
    for v in branch_vertices(inst).B:
        assert not rule5_pendant_trees(inst, v)[1]


def _tree_between(k, attach_both=False):
    # z1 = 0 adjacent to u = 2 and v = 3, z2 = 1 adjacent to u;
    # spine 4..10 runs from u to v, three leaves make |T| = 10
    edges = [(0, 2), (0, 3), (1, 2)]
    spine = list(range(4, 11))
    edges += list(zip(spine, spine[1:]))
    if attach_both:
        edges += [(2, 4), (3, 4)]
    else:
        edges += [(2, 4), (3, 10)]
    edges += [(5, 11), (7, 12), (9, 13)]
    g = Graph(range(14), edges)
    delta = g.degrees()
    delta[0] += 1
    delta[1] += 1
    return EditInstance(g, delta, 3, k)


def test_rule7_tree_replaced_by_path():
    inst = _tree_between(2)
    # |V(T)| = 10 = (k/2 + 2) d + 1
    out, applied = rule6_7_tree_between(inst, 2, 3)
    assert applied
    path = sorted(set(out.graph.vertices) - set(inst.graph.vertices))
    assert len(path) == 4
    assert all(out.delta[x] == 2 == out.graph.degree(x) for x in path)
    assert out.graph.has_edge(2, path[0]) and out.graph.has_edge(3, path[-1])


def test_rule7_shared_neighbour_unchanged():
    inst = _tree_between(2, attach_both=True)
    assert not rule6_7_tree_between(inst, 2, 3)[1]


def test_rule6_loop_replaced():
    inst = BUILDERS["6"](0)
    out, applied = rule6_7_tree_between(inst, 3, 3)
    assert applied
    path = sorted(set(out.graph.vertices) - set(inst.graph.vertices))
    assert len(path) == inst.k + 2
    assert out.graph.has_edge(3, path[0]) and out.graph.has_edge(3, path[-1])


# --- driver -----------------------------------------------------------------

def test_kernelize_rule1_no():
    g = Graph(range(3), [])
    kernel, trace = kernelize(EditInstance(g, {0: 0, 1: 0, 2: 0}, 3, 1))
    assert kernel is None and trace[-1].rule == "1"


def test_kernelize_fixpoint_unchanged():
    g = Graph(range(4), [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    inst = EditInstance.regular(g, 3, 2)
    kernel, trace = kernelize(inst)
    assert kernel == inst and trace == []


def test_kernelize_normalises_d():
    g = Graph(range(5), [(i, (i + 1) % 5) for i in range(5)])
    kernel, trace = kernelize(EditInstance.regular(g, 2, 1))
    assert kernel.d == 3 and trace[0].rule == "d"
    assert replay_trace(EditInstance.regular(g, 2, 1), trace) == kernel


@pytest.mark.parametrize("rule", sorted(BUILDERS))
def test_kernelize_replay_and_determinism(rule):
    inst = BUILDERS[rule](3)
    kernel, trace = kernelize(inst)
    assert rule in [e.rule for e in trace]
    assert replay_trace(inst, trace) == kernel
    assert kernelize(inst) == (kernel, trace)
    assert kernel.graph.n <= kernel_bound(inst.k, inst.d)


def test_kernel_bound_monotone():
    for k in range(0, 8):
        for d in range(1, 8):
            assert kernel_bound(k + 1, d) >= kernel_bound(k, d)
            assert kernel_bound(k, d + 1) >= kernel_bound(k, d)
