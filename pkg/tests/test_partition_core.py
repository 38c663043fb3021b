import itertools

import numpy as np
import pytest

from engine.errors import (
    EmptyBlock,
    IncompleteCover,
    InvalidUniverse,
    OverlappingBlocks,
    UniverseMismatch,
    UniverseTooLarge,
    UnknownElement,
)
from engine.partition_core import (
    Universe,
    all_partitions,
    bell_number,
    block_of,
    discrete,
    indiscrete,
    join,
    make_partition,
    refines,
)

ABC = Universe(("a", "b", "c"))


def universe_of(size):
    return Universe(tuple(f"x{i}" for i in range(size)))


def test_make_partition_accepts_valid_blocks():
    p = make_partition(ABC, [{"a"}, {"b", "c"}])
    assert len(p) == 2
    assert p.as_lists() == [["a"], ["b", "c"]]
    assert str(p) == "{{a},{b,c}}"


def test_single_block_is_indiscrete():
    assert make_partition(ABC, [{"a", "b", "c"}]) == indiscrete(ABC)


@pytest.mark.parametrize(
    "blocks, error",
    [
        ([{"a"}, {"a", "b", "c"}], OverlappingBlocks),
        ([{"a"}, set(), {"b", "c"}], EmptyBlock),
        ([{"a"}, {"b"}], IncompleteCover),
        ([{"a"}, {"b", "c", "z"}], UnknownElement),
    ],
)
def test_make_partition_rejects(blocks, error):
    with pytest.raises(error):
        make_partition(ABC, blocks)


def test_incomplete_cover_names_missing_elements():
    with pytest.raises(IncompleteCover) as info:
        make_partition(ABC, [{"a"}])
    assert info.value.context["elements"] == ("b", "c")


def test_universe_rejects_duplicates_and_empty():
    with pytest.raises(InvalidUniverse):
        Universe(("a", "a"))
    with pytest.raises(InvalidUniverse):
        Universe(())


def test_special_partitions():
    assert indiscrete(ABC).as_lists() == [["a", "b", "c"]]
    assert discrete(ABC).as_lists() == [["a"], ["b"], ["c"]]
    x = Universe(("x",))
    assert indiscrete(x) == discrete(x)


def test_join_of_three_partitions_is_discrete():
    p = make_partition(ABC, [{"a"}, {"b", "c"}])
    q = make_partition(ABC, [{"a", "b"}, {"c"}])
    assert join(p, q) == discrete(ABC)


def test_join_block_order_is_p_major():
    p = make_partition(ABC, [{"b", "c"}, {"a"}])
    q = make_partition(ABC, [{"c"}, {"a", "b"}])
    assert join(p, q).as_lists() == [["c"], ["b"], ["a"]]


def test_join_identity_and_idempotence():
    p = make_partition(ABC, [{"a"}, {"b", "c"}])
    assert join(indiscrete(ABC), p) == p
    assert join(p, p) == p


def test_equality_ignores_block_order_unless_asked():
    p = make_partition(ABC, [{"a"}, {"b", "c"}])
    q = make_partition(ABC, [{"b", "c"}, {"a"}])
    assert p == q
    assert hash(p) == hash(q)
    assert not p.same_order(q)
    assert p.same_order(make_partition(ABC, [["a"], ["c", "b"]]))


def test_join_across_universes_fails():
    other = Universe(("a", "b", "d"))
    with pytest.raises(UniverseMismatch):
        join(indiscrete(ABC), indiscrete(other))


def test_refines():
    p = make_partition(ABC, [{"a", "b"}, {"c"}])
    q = make_partition(ABC, [{"a"}, {"b", "c"}])
    assert refines(discrete(ABC), p)
    assert refines(p, indiscrete(ABC))
    assert not refines(p, q)
    assert refines(join(p, q), p) and refines(join(p, q), q)


def test_block_of():
    u = Universe(("u1", "u2", "u3", "u4", "u5"))
    p = make_partition(u, [{"u1"}, {"u2", "u3", "u4", "u5"}])
    assert block_of(p, "u2") == 1
    assert block_of(indiscrete(u), "u4") == 0
    assert block_of(make_partition(ABC, [{"a", "b"}, {"c"}]), "c") == 1
    with pytest.raises(UnknownElement):
        block_of(p, "u9")


@pytest.mark.parametrize("size, expected", [(1, 1), (3, 5), (4, 15), (5, 52)])
def test_all_partitions_counts(size, expected):
    partitions = all_partitions(universe_of(size))
    assert len(partitions) == expected == bell_number(size)
    assert len(set(partitions)) == expected


def test_all_partitions_are_valid_and_start_indiscrete():
    u = universe_of(4)
    partitions = all_partitions(u)
    assert partitions[0] == indiscrete(u)
    assert partitions[-1] == discrete(u)
    for p in partitions:
        assert sum(len(b) for b in p.blocks) == len(u)
        assert all(len([b for b in p.blocks if label in b]) == 1 for label in u)


def test_enumeration_guard():
    with pytest.raises(UniverseTooLarge):
        all_partitions(universe_of(13))


def test_bell_numbers():
    assert [bell_number(n) for n in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]
    assert bell_number(12) == 4_213_597


@pytest.mark.parametrize("size", [1, 2, 3, 4])
def test_join_laws_exhaustive(size):
    u = universe_of(size)
    partitions = all_partitions(u)
    top, bottom = discrete(u), indiscrete(u)
    for p, q in itertools.product(partitions, repeat=2):
        assert join(p, q) == join(q, p)
        assert refines(join(p, q), p)
    for p in partitions:
        assert join(p, p) == p
        assert join(bottom, p) == p
        assert join(top, p) == top
    for p, q, r in itertools.product(partitions, repeat=3):
        assert join(join(p, q), r) == join(p, join(q, r))


@pytest.mark.parametrize("size", [5, 6])
def test_join_commutative_and_idempotent_on_larger_universes(size):
    partitions = all_partitions(universe_of(size))
    for p, q in itertools.product(partitions, repeat=2):
        assert join(p, q) == join(q, p)
    assert all(join(p, p) == p for p in partitions)


def test_join_associative_on_sampled_triples_of_six():
    partitions = all_partitions(universe_of(6))
    rng = np.random.default_rng(6)
    for i, j, k in rng.integers(0, len(partitions), size=(5000, 3)):
        p, q, r = partitions[i], partitions[j], partitions[k]
        assert join(join(p, q), r) == join(p, join(q, r))
