from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coeff import FieldSpec, char
from errors import DivisionByZero, InvalidField

Q = FieldSpec.rationals()
F3 = FieldSpec.prime_field(3)


@pytest.mark.parametrize("field, expected", [(Q, 0), (F3, 3), (FieldSpec.prime_field(2), 2)])
def test_char(field, expected):
    assert char(field) == expected


def test_rational_sum_and_canonical_form():
    a = Q.from_fraction(1, 2)
    b = Q.from_fraction(1, 3)
    assert Q.to_fraction(Q.add(a, b)) == Fraction(5, 6)
    q = Q.div(Q.from_integer(-4), Q.from_integer(6))
    assert Q.to_fraction(q) == Fraction(-2, 3)
    assert Q.eq(q, Q.parse_literal("-2/3"))


def test_inverse_in_f3():
    assert F3.to_fraction(F3.inv(F3.from_integer(2))) == 2


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        Q.inv(Q.zero)
    with pytest.raises(DivisionByZero):
        F3.div(F3.one, F3.from_integer(3))
    with pytest.raises(DivisionByZero):
        Q.from_fraction(1, 0)


@pytest.mark.parametrize("label, p", [("Q", None), ("QQ", None), ("F3", None), ("GF(5)", None), ("Fp", 7)])
def test_parse_labels(label, p):
    field = FieldSpec.parse(label, p)
    assert field.label in ("Q", "F3", "F5", "F7")


@pytest.mark.parametrize("label, p", [("F4", None), ("Fp", 1), ("R", None)])
def test_parse_rejects(label, p):
    with pytest.raises(InvalidField):
        FieldSpec.parse(label, p)


def test_prime_field_reduces_literals():
    assert F3.to_fraction(F3.parse_literal("7")) == 1
    assert F3.to_fraction(F3.parse_literal("1/2")) == 2


def test_characteristic_sum_vanishes():
    for p in (2, 3, 5, 7):
        K = FieldSpec.prime_field(p)
        total = K.zero
        for _ in range(p):
            total = K.add(total, K.one)
        assert K.is_zero(total)


fractions = st.fractions(min_value=-50, max_value=50, max_denominator=20)


@given(fractions, fractions, fractions)
def test_rational_field_axioms(x, y, z):
    a, b, c = (Q.from_fraction(v.numerator, v.denominator) for v in (x, y, z))
    assert Q.eq(Q.add(a, Q.add(b, c)), Q.add(Q.add(a, b), c))
    assert Q.eq(Q.mul(a, b), Q.mul(b, a))
    assert Q.eq(Q.mul(a, Q.add(b, c)), Q.add(Q.mul(a, b), Q.mul(a, c)))
    if not Q.is_zero(a):
        assert Q.eq(Q.mul(a, Q.inv(a)), Q.one)


@given(st.sampled_from([2, 3, 5, 7, 11]), st.integers(1, 1000))
def test_prime_field_inverse(p, n):
    K = FieldSpec.prime_field(p)
    a = K.from_integer(n)
    if K.is_zero(a):
        return
    assert K.eq(K.mul(a, K.inv(a)), K.one)
    assert 0 <= K.to_fraction(a) < p
