from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

from dualgroup.combinatorics import (
    Hop, Partition, compatible_through, compose_partitions, enumerate_partitions,
    separate, stirling2, together, tomo_count, tomo_partitions,
)


@lru_cache(maxsize=None)
def stirling_rec(m, k):
    # oracle: the standard recurrence
    if m == k == 0:
        return 1
    if m == 0 or k == 0:
        return 0
    return k * stirling_rec(m - 1, k) + stirling_rec(m - 1, k - 1)


def test_partition_counts_for_tomos():
    assert [len(tomo_partitions(n)) for n in (3, 4, 5, 6)] == [7, 36, 171, 813]
    assert [tomo_count(n) for n in (3, 4, 5, 6)] == [7, 36, 171, 813]


@given(st.integers(0, 15), st.integers(0, 15))
def test_stirling_matches_recurrence(m, k):
    assert stirling2(m, k) == stirling_rec(m, k)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_enumeration_by_block_count(n):
    for k in range(2, n + 2):
        parts = enumerate_partitions(n, k, k)
        assert len(parts) == stirling2(n + 1, k)
        assert len(set(parts)) == len(parts)


def test_enumeration_is_sorted_and_capped():
    parts = tomo_partitions(4)
    assert parts == sorted(parts)
    with pytest.raises(ValueError):
        enumerate_partitions(9)


def test_hop_parsing_and_text():
    h = Hop.parse("13,4")
    assert h.text() == "13,4"
    assert h.covers(3) and not h.covers(2)
    assert Hop.parse("4,31").text() == "13,4"
    assert h.pure().text() == "1,3,4"
    assert h.run().text() == "134"
    assert h.without(1).text() == "3,4"
    with pytest.raises(ValueError):
        Hop.parse("12,23")


def test_together_and_separate():
    h = Hop.parse("13,4")
    assert together(1, 3, h)
    assert separate(1, 4, h)
    with pytest.raises(ValueError):
        together(1, 2, h)
    with pytest.raises(ValueError):
        together(1, 1, h)


def test_partition_validation():
    assert Partition.parse("12,0,34").text() == "0,12,34"
    with pytest.raises(ValueError):
        Partition.parse("12,34", 4)
    with pytest.raises(ValueError):
        Partition.parse("01234")


def test_composition_of_partitions():
    p, q = Partition.parse("1,2,03"), Partition.parse("0,3,12")
    assert compatible_through(p, q) == Partition.parse("03,1,2").blocks[0]
    assert compose_partitions(p, q) == Partition.parse("0,1,2,3")
    with pytest.raises(ValueError):
        compose_partitions(Partition.parse("1,2,03"), Partition.parse("1,2,03"))


def test_relabel():
    p = Partition.parse("03,1,2")
    assert p.relabel((1, 0, 2, 3)) == Partition.parse("0,13,2")
