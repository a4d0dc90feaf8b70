import random

import networkx as nx
import pytest

from degedit.costs import CostInstance, solve_with_costs
from degedit.graph import EditInstance, Graph, GraphError, verify_solution
from degedit.oracle import GuardExceeded, SearchLimits, brute_force_solve
from oracles import naive_min_edits


def p3(k=1):
    return EditInstance(Graph([1, 2, 3], [(1, 2), (2, 3)]), {1: 2, 2: 2, 3: 2}, 2, k)


def test_brute_force_p3_triangle():
    sol = brute_force_solve(p3())
    assert sol.sorted() == ([], [(1, 3)])


def test_brute_force_no_when_budget_short():
    assert brute_force_solve(p3(0)) is None


def test_brute_force_two_c4():
    g = Graph(range(8), [(0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7), (4, 7)])
    for k, yes in ((2, False), (3, False), (4, True)):
        sol = brute_force_solve(EditInstance.regular(g, 2, k))
        assert (sol is not None) == yes
        if yes:
            assert sol.cost == 4


def test_brute_force_guard():
    g = Graph(range(50), [])
    with pytest.raises(GuardExceeded):
        brute_force_solve(EditInstance.regular(g, 0, 1))
    with pytest.raises(GuardExceeded):
        brute_force_solve(EditInstance.regular(Graph(range(10), []), 2, 10),
                          SearchLimits(max_nodes=50))


def test_brute_force_matches_naive_enumeration():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(2, 6)
        d = rng.randint(1, 3)
        k = rng.randint(0, 3)
        g = nx.gnp_random_graph(n, 0.5, seed=rng.randrange(10 ** 6))
        G = Graph(range(n), g.edges())
        delta = {v: min(d, max(0, G.degree(v) + rng.choice((-1, 0, 1)))) for v in range(n)}
        inst = EditInstance(G, delta, d, k)
        sol = brute_force_solve(inst)
        best = naive_min_edits(G, delta, k)
        assert (sol is None) == (best is None)
        if sol is not None:
            assert sol.cost == best
            assert verify_solution(inst, sol).ok


def test_cost_instance_validation():
    g = Graph([1, 2], [(1, 2)])
    with pytest.raises(GraphError):
        CostInstance(g, {1: 1}, {}, 1)
    with pytest.raises(GraphError):
        CostInstance(g, {1: 1, 2: 1}, {(1, 2): 0}, 1)


@pytest.mark.parametrize("backend", ["exhaustive", "matching", "auto"])
def test_costs_p3_to_path_endpoints(backend):
    # drop the degree of the middle vertex: cheapest is deleting one edge
    g = Graph([1, 2, 3], [(1, 2), (2, 3)])
    ci = CostInstance(g, {1: 0, 2: 1, 3: 1}, {}, 2)
    edits, cost = solve_with_costs(ci, backend)
    assert cost == 1 and edits.sorted() == ([(1, 2)], [])


@pytest.mark.parametrize("backend", ["exhaustive", "matching"])
def test_costs_expensive_pairs_are_avoided(backend):
    # 1 and 2 both need one more edge; the direct pair costs k+1 = 3,
    # so the only option within budget is not available -> None
    g = Graph([1, 2, 3], [])
    ci = CostInstance(g, {1: 1, 2: 1, 3: 0}, {(1, 2): 3}, 2)
    assert solve_with_costs(ci, backend) is None
    ci = CostInstance(g, {1: 1, 2: 1, 3: 0}, {(1, 2): 2}, 2)
    assert solve_with_costs(ci, backend)[1] == 2


def test_costs_unknown_backend():
    ci = CostInstance(Graph([1], []), {1: 0}, {}, 0)
    with pytest.raises(ValueError):
        solve_with_costs(ci, "simplex")


def test_costs_backends_agree_with_naive():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(2, 6)
        k = rng.randint(0, 3)
        g = nx.gnp_random_graph(n, 0.5, seed=rng.randrange(10 ** 6))
        G = Graph(range(n), g.edges())
        delta = {v: max(0, G.degree(v) + rng.choice((-1, 0, 1))) for v in range(n)}
        rho = {e: k + 1 for e in [(0, 1)] if n > 1 and rng.random() < 0.5}
        ci = CostInstance(G, delta, rho, k)
        want = naive_min_edits(G, delta, k, connected=False, cost=lambda e: ci.cost(*e))
        for backend in ("exhaustive", "matching"):
            got = solve_with_costs(ci, backend)
            assert (got is None) == (want is None)
            if got is not None:
                assert got[1] == want and ci.degrees_ok(got[0])
