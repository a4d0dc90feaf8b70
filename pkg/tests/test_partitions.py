import pytest

from degedit.partitions import (InfeasibleError, as_partition, composition_check, conjugate,
                                dominates, graphic_pairs, is_bipartite_graphic, partitions_of,
                                realize_between, realize_bipartite)


def test_conjugate_examples():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate((2, 2)) == (2, 2)
    assert conjugate(()) == ()
    assert conjugate((4,)) == (1, 1, 1, 1)


def test_conjugate_is_involution():
    for n in range(1, 9):
        for p in partitions_of(n):
            assert conjugate(conjugate(p)) == p


def test_conjugate_rejects_non_partitions():
    with pytest.raises(ValueError):
        conjugate((1, 2))
    with pytest.raises(ValueError):
        conjugate((2, 0))


def test_dominance_pads_with_zeros():
    assert dominates((3, 1), (2, 2))
    assert not dominates((2, 2), (3, 1))
    assert dominates((2,), (1, 1))
    assert not dominates((1, 1), (2,))


def test_gale_ryser_examples():
    assert is_bipartite_graphic((2, 2), (2, 2))
    assert not is_bipartite_graphic((3,), (1, 1))  # sums differ
    assert not is_bipartite_graphic((3,), (3,))    # one right vertex cannot take 3 edges
    assert is_bipartite_graphic((3,), (1, 1, 1))
    assert is_bipartite_graphic((), ())


def test_realize_bipartite_degrees():
    edges = realize_bipartite((2, 1), (1, 1, 1))
    assert len(edges) == 3
    assert sorted(i for i, _ in edges) == [0, 0, 1]
    assert sorted(j for _, j in edges) == [0, 1, 2]
    with pytest.raises(InfeasibleError):
        realize_bipartite((3,), (3,))


def test_realize_between_labels():
    edges = realize_between({10: 2, 11: 0}, {20: 1, 21: 1})
    assert edges == [(10, 20), (10, 21)]


def test_composition_check_requires_equal_sums():
    with pytest.raises(ValueError):
        composition_check((2,), (1, 1), (1, 1), (1,))
    assert composition_check((1, 1), (2,), (1, 1), (2,))


def test_partition_counts():
    # p(n) for n = 0..8
    assert [len(partitions_of(n)) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    assert as_partition([0, 2, 3, 0, 1]) == (3, 2, 1)


def test_graphic_pairs_small():
    assert graphic_pairs(1) == (((1,), (1,)),)
    # n = 2: (1,1)x(1,1), (1,1)x(2), (2)x(1,1); (2)x(2) is not graphic
    assert set(graphic_pairs(2)) == {((1, 1), (1, 1)), ((1, 1), (2,)), ((2,), (1, 1))}
