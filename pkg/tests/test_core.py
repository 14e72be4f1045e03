from fractions import Fraction

import pytest

from bkphurwitz.core import (LaurentZ, Ring, as_fraction, exp_truncated, format_rational,
                             residue_z, shift_by_z, substitute)
from bkphurwitz.errors import DomainError, StructureError


def ring_xy(bound=4):
    return Ring([("x", "deg", 1), ("y", "deg", 2)], {"deg": bound})


def test_as_fraction_refuses_floats():
    assert as_fraction("3/4") == Fraction(3, 4)
    assert as_fraction(5) == 5
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(TypeError):
        as_fraction(True)


def test_format_rational():
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(7) == "7"


def test_truncation_drops_heavy_terms():
    R = ring_xy(3)
    x, y = R.gen("x"), R.gen("y")
    assert (x * y).coefficient({"x": 1, "y": 1}) == 1
    assert (y * y).is_zero()
    assert (x ** 4).is_zero()


def test_unbounded_group_is_kept():
    R = Ring([("x", "deg", 1), ("a", "par", 1)], {"deg": 2})
    a = R.gen("a")
    assert (a ** 10).coefficient({"a": 10}) == 1


def test_exp_of_sum_is_product_of_exps():
    R = ring_xy(6)
    x, y = R.gen("x"), R.gen("y")
    assert exp_truncated(x + y) == exp_truncated(x) * exp_truncated(y)
    e = exp_truncated(x)
    for k in range(7):
        assert e.coefficient({"x": k}) == Fraction(1, __import__("math").factorial(k))


def test_exp_needs_zero_constant_and_nilpotence():
    R = ring_xy()
    with pytest.raises(DomainError):
        exp_truncated(R.one() + R.gen("x"))
    U = Ring([("a", "par", 1)])
    with pytest.raises(DomainError):
        exp_truncated(U.gen("a"))


def test_inverse_and_log():
    R = ring_xy(5)
    f = R.one() + R.gen("x") + R.gen("y").scale(3)
    assert f * f.inverse() == R.one()
    g = R.gen("x") + R.gen("y").scale(Fraction(1, 2))
    assert g.log1p().exp() == R.one() + g


def test_diff_and_substitute():
    R = ring_xy(6)
    x, y = R.gen("x"), R.gen("y")
    f = x ** 2 * y + y.scale(3)
    assert f.diff("x") == (x * y).scale(2)
    assert f.diff("y") == x ** 2 + R.const(3)
    assert substitute(f, {"x": 2}) == y.scale(7)


def test_mixing_rings_is_a_structure_error():
    with pytest.raises(StructureError):
        ring_xy(3).gen("x") + ring_xy(4).gen("x")
    with pytest.raises(StructureError):
        Ring(["a", "a"])


def test_laurent_residue_of_shift():
    R = Ring.power_sums(3)
    p1 = R.gen("p1")
    f = p1 * p1
    L = shift_by_z(f, ["p1", "p2", "p3"], +1)
    # (p1 + 1/z)^2 = p1^2 + 2 p1/z + 1/z^2
    assert residue_z(L) == p1.scale(2)
    assert L.coefficient(-2) == R.one()
    assert residue_z(L.shift(1)) == R.one()


def test_laurent_product_window():
    R = Ring.power_sums(2)
    a = LaurentZ(R, {1: R.one(), -1: R.gen("p1")})
    b = LaurentZ(R, {-1: R.one()})
    assert residue_z(a * b * b) == R.one()
    assert (a * b).coefficient(-2) == R.gen("p1")
    with pytest.raises(DomainError):
        LaurentZ(R, {}, zmin=-2, zmax=2).coefficient(5)
