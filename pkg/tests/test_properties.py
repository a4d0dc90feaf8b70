"""Property-based checks on small random inputs."""
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from degedit.graph import EditInstance, Graph, apply_edits, verify_solution
from degedit.instance_io import parse_instance, relabel, write_instance
from degedit.kernel import kernelize, replay_trace
from degedit.oracle import brute_force_solve
from degedit.partitions import conjugate, is_bipartite_graphic, realize_bipartite
from oracles import bipartite_exists

SETTINGS = settings(max_examples=60, deadline=None,
                    suppress_health_check=[HealthCheck.too_slow])

small_seq = st.lists(st.integers(1, 4), min_size=0, max_size=5).map(
    lambda xs: sorted(xs, reverse=True))


@st.composite
def instances(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    g = Graph(range(n), edges)
    d = draw(st.integers(1, 4))
    delta = {v: min(d, max(0, g.degree(v) + draw(st.integers(-1, 1)))) for v in range(n)}
    return EditInstance(g, delta, d, draw(st.integers(0, 3)))


@SETTINGS
@given(small_seq)
def test_conjugate_is_involution(seq):
    p = sorted((x for x in seq if x > 0), reverse=True)
    assert list(conjugate(conjugate(p))) == p


@SETTINGS
@given(small_seq, small_seq)
def test_gale_ryser_matches_search(a, b):
    assert is_bipartite_graphic(a, b) == bipartite_exists(tuple(a), tuple(b))


@SETTINGS
@given(small_seq, small_seq)
def test_realization_has_requested_degrees(a, b):
    if not is_bipartite_graphic(a, b):
        return
    edges = realize_bipartite(a, b)
    assert len(set(edges)) == len(edges)
    assert [sum(1 for i, _ in edges if i == x) for x in range(len(a))] == list(a)
    assert [sum(1 for _, j in edges if j == y) for y in range(len(b))] == list(b)


@SETTINGS
@given(instances())
def test_kernel_preserves_answer(inst):
    kernel, trace = kernelize(inst)
    want = brute_force_solve(inst) is not None
    got = kernel is not None and brute_force_solve(kernel) is not None
    assert want == got
    if kernel is not None:
        assert replay_trace(inst, trace) == kernel


@SETTINGS
@given(instances())
def test_oracle_solutions_verify(inst):
    sol = brute_force_solve(inst)
    if sol is not None:
        assert verify_solution(inst, sol).ok
        assert apply_edits(inst.graph, sol).is_connected()


@SETTINGS
@given(instances())
def test_write_parse_round_trip(inst):
    dense, _ = relabel(inst)
    assert parse_instance(write_instance(dense)) == dense
