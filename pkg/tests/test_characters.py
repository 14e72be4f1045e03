from itertools import permutations
from math import factorial

import pytest

from bkphurwitz.characters import (char_map_schur, char_table, character, chi_sum_direct,
                                   chi_sum_heat, dim, heat_operator, at_zero, phi,
                                   phi_on_d_cycle, zagier_chi, hook, pdelta_in_schur)
from bkphurwitz.core import Ring
from bkphurwitz.errors import DomainError
from bkphurwitz.partitions import class_size, partitions_of


def test_s3_table():
    t = char_table(3)
    assert t.rows() == [[1, 1, 1], [-1, 0, 2], [1, -1, 1]]  # columns (3), (2,1), (1^3)


def test_s4_known_values():
    assert character([2, 2], [2, 2]) == 2
    assert character([3, 1], [4]) == -1
    assert character([2, 1, 1], [3, 1]) == 0
    assert character([2, 2], [3, 1]) == -1


def _fixed_points_minus_one(d, delta):
    return delta.count(1) - 1


@pytest.mark.parametrize("d", range(2, 8))
def test_standard_rep_is_fixed_points_minus_one(d):
    for delta in partitions_of(d):
        assert character([d - 1, 1], delta) == _fixed_points_minus_one(d, delta)


@pytest.mark.parametrize("d", range(1, 8))
def test_orthogonality(d):
    ps = partitions_of(d)
    for a in ps:
        for b in ps:
            s = sum(class_size(k) * character(a, k) * character(b, k) for k in ps)
            assert s == (factorial(d) if a == b else 0)


@pytest.mark.parametrize("d", range(1, 9))
def test_dim_is_character_at_identity(d):
    assert sum(dim(l) ** 2 for l in partitions_of(d)) == factorial(d)
    for lam in partitions_of(d):
        assert dim(lam) == character(lam, [1] * d)


def test_character_weights_must_match():
    with pytest.raises(DomainError):
        character([2], [1])
    assert phi([2], [1]) == 0


def test_schur_power_sum_round_trip():
    R = Ring.power_sums(5)
    for d in range(1, 6):
        for delta in partitions_of(d):
            back = sum((char_map_schur(l, R).scale(c) for l, c in pdelta_in_schur(delta).items()),
                       R.zero())
            powers = {}
            for part in delta:
                powers[f"p{part}"] = powers.get(f"p{part}", 0) + 1
            assert back == R.monomial(powers)


def test_heat_operator_gives_one_on_schur():
    R = Ring.power_sums(7)
    names = list(R.names)
    for d in range(0, 8):
        for lam in partitions_of(d):
            s = char_map_schur(lam, R) if d else R.one()
            assert at_zero(heat_operator(s, names), names) == R.one()


def _brute_chi_sum(delta):
    """#{R : R^2 = g} for one g of cycle type delta, by enumeration."""
    d = delta.weight
    g = []
    start = 0
    for part in delta:
        g.extend(range(start + 1, start + part))
        g.append(start)
        start += part
    g = tuple(g)
    return sum(1 for r in permutations(range(d)) if tuple(r[r[i]] for i in range(d)) == g)


@pytest.mark.parametrize("d", range(1, 6))
def test_frobenius_schur_count(d):
    for delta in partitions_of(d):
        assert chi_sum_direct(delta) == chi_sum_heat(delta) == _brute_chi_sum(delta)


@pytest.mark.parametrize("d", range(1, 9))
def test_phi_on_cycle(d):
    for lam in partitions_of(d):
        assert phi(lam, [d]) == phi_on_d_cycle(lam)


@pytest.mark.parametrize("d", range(1, 8))
def test_zagier(d):
    for r in range(d):
        for delta in partitions_of(d):
            assert zagier_chi(delta, r) == character(hook(d, r), delta)


def test_phi_of_transposition_is_content_sum():
    for lam in partitions_of(6):
        assert phi(lam, [2, 1, 1, 1, 1]) == sum(lam.contents())
