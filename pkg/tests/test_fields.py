from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hopfgal.errors import FieldMismatchError, InputError
from hopfgal.fields import GF, QQ, QQi, FpElem, GaussRational, field_from_key

rat = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 12))
gauss = st.builds(GaussRational, rat, rat)


@given(gauss, gauss, gauss)
def test_gaussian_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(gauss)
def test_gaussian_inverse(a):
    if a:
        assert a * a.inverse() == QQi.one


@given(gauss)
def test_gaussian_format_round_trip(a):
    assert QQi.parse(QQi.format(a)) == a


@given(rat)
def test_rational_format_round_trip(x):
    assert QQ.parse(QQ.format(x)) == x


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_prime_field_inverses(p):
    F = GF(p)
    for x in F.elements()[1:]:
        assert x * x.inverse() == F.one


def test_i_squared():
    assert QQi.i * QQi.i == QQi(-1)


@pytest.mark.parametrize("text,value", [
    ("1/2-3/4*i", GaussRational(Fraction(1, 2), Fraction(-3, 4))),
    ("-i", GaussRational(0, -1)),
    ("2+i", GaussRational(2, 1)),
    ("3", GaussRational(3, 0)),
])
def test_gaussian_literals(text, value):
    assert QQi.parse(text) == value


def test_mixed_fields_are_rejected():
    with pytest.raises(FieldMismatchError):
        QQi.i + Fraction(1, 2)
    with pytest.raises(FieldMismatchError):
        FpElem(1, 3) + FpElem(1, 5)


def test_field_keys():
    for F in (QQ, QQi, GF(7)):
        assert field_from_key(F.json_key()) == F
    assert field_from_key("Fp:5") == GF(5)
    with pytest.raises(InputError):
        field_from_key("R")


def test_bad_literal():
    with pytest.raises((InputError, ValueError)):
        QQi.parse("1+2j")
