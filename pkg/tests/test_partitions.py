from math import factorial

import pytest

from bkphurwitz.errors import DomainError
from bkphurwitz.partitions import (Partition, class_size, from_frobenius, gamma, parse_partition,
                                   partitions_of, z_of)

# number of partitions of d, d = 0..10
P_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_counts():
    assert [len(partitions_of(d)) for d in range(11)] == P_COUNTS


def test_order_and_length_filter():
    ps = partitions_of(4)
    assert ps[0] == (4,) and ps[-1] == (1, 1, 1, 1)
    assert all(len(p) <= 2 for p in partitions_of(6, max_length=2))
    assert len(partitions_of(6, max_length=2)) == 4


def test_class_sizes_sum_to_factorial():
    for d in range(1, 8):
        assert sum(class_size(p) for p in partitions_of(d)) == factorial(d)


def test_contents_and_hooks():
    lam = Partition([3, 1])
    assert lam.contents() == [0, 1, 2, -1]
    assert sorted(lam.hook_lengths()) == [1, 1, 2, 4]
    assert lam.conjugate() == (2, 1, 1)
    assert z_of([2, 1, 1]) == 4


def test_frobenius_round_trip():
    lam = Partition([4, 3, 1])
    f = lam.frobenius()
    assert (f.alphas, f.betas) == ((3, 1), (2, 0))
    assert from_frobenius(f.alphas, f.betas) == lam
    assert f.kappa == 2
    with pytest.raises(DomainError):
        from_frobenius((1, 1), (0, 0))


def test_gamma():
    assert gamma(4) == (2, 1, 1)
    assert gamma(1) == (1,)


@pytest.mark.parametrize("text", ["[3,2,1]", "3,2,1", "1^1 2^1 3^1", "(1, 3, 2)"])
def test_parse(text):
    assert parse_partition(text) == (3, 2, 1)


def test_parse_empty_and_bad():
    assert parse_partition("") == ()
    with pytest.raises(DomainError):
        parse_partition("[3,x]")
    with pytest.raises(DomainError):
        parse_partition("2^a")
    with pytest.raises(DomainError):
        Partition([1, 2])
