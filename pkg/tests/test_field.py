from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from planeaut.errors import DivisionByZero, InvalidFieldSpec, MixedFieldError
from planeaut.field import QQ, FieldSpec, all_nth_roots, characteristic, nth_root

PRIMES = [2, 3, 5, 7, 101, 2**31 - 1]

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10**6)


def test_designators_round_trip():
    for text in ["q", "fp:2", "fp:3", "fp:5", "fp:2147483647"]:
        assert FieldSpec.parse(text).designator() == text
    assert FieldSpec.parse(" FP:7 ") == FieldSpec.prime(7)


@pytest.mark.parametrize("text", ["fp:4", "fp:1", "fp:0", "fp:x", "r", "fp:", f"fp:{2**61 + 1}"])
def test_bad_designators(text):
    with pytest.raises(InvalidFieldSpec):
        FieldSpec.parse(text)


def test_characteristic():
    assert characteristic(QQ) == 0
    assert characteristic(FieldSpec.prime(5)) == 5


def test_raw_values_are_canonical():
    assert QQ(Fraction(4, 2)).value == 2 and type(QQ(Fraction(4, 2)).value) is int
    assert QQ("3/6").value == Fraction(1, 2)
    F7 = FieldSpec.prime(7)
    assert F7(-1).value == 6
    assert F7("1/2").value == 4
    with pytest.raises(DivisionByZero):
        F7("1/7")


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        QQ(1) / QQ(0)
    with pytest.raises(DivisionByZero):
        FieldSpec.prime(3)(0).inverse()


def test_mixed_fields_rejected():
    with pytest.raises(MixedFieldError):
        QQ(1) + FieldSpec.prime(2)(1)


def test_printing():
    assert str(QQ(Fraction(-2, 3))) == "-2/3"
    assert str(FieldSpec.prime(5)(-1)) == "4"


def test_fermat_in_every_small_field():
    for p in [2, 3, 5, 7, 11]:
        F = FieldSpec.prime(p)
        for a in F.elements():
            assert a**p == a


def test_nth_roots():
    assert [str(r) for r in all_nth_roots(QQ(Fraction(4, 9)), 2)] == ["-2/3", "2/3"]
    assert all_nth_roots(QQ(-8), 3) == [QQ(-2)]
    assert all_nth_roots(QQ(2), 2) == []
    assert all_nth_roots(QQ(-4), 2) == []
    assert nth_root(QQ(9), 2) == QQ(3)
    F7 = FieldSpec.prime(7)
    assert [r.value for r in all_nth_roots(F7(2), 2)] == [3, 4]
    assert nth_root(F7(3), 2) is None
    # in characteristic p, x -> x^p is a bijection
    F5 = FieldSpec.prime(5)
    assert [r.value for r in all_nth_roots(F5(3), 5)] == [3]


def test_nth_roots_large_prime_uses_library_path():
    p = 2**31 - 1
    F = FieldSpec.prime(p)
    c = F(123456789) ** 3
    roots = all_nth_roots(c, 3)
    assert F(123456789) in roots
    assert all(r**3 == c for r in roots)


@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    x, y, z = QQ(a), QQ(b), QQ(c)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x - x == QQ.zero()
    if not y.is_zero():
        assert (x / y) * y == x


@given(st.sampled_from(PRIMES), st.integers(), st.integers(), st.integers())
def test_prime_field_axioms(p, a, b, c):
    F = FieldSpec.prime(p)
    x, y, z = F(a), F(b), F(c)
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    if not x.is_zero():
        assert x * x.inverse() == F.one()
        assert x ** (p - 1) == F.one()


@given(st.sampled_from([2, 3, 5, 7, 13]), st.integers(), st.integers(1, 6))
def test_roots_are_roots(p, a, n):
    F = FieldSpec.prime(p)
    c = F(a)
    for r in all_nth_roots(c, n):
        assert r**n == c
    brute = [r for r in F.elements() if r**n == c]
    assert all_nth_roots(c, n) == brute
