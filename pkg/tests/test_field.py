from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy import isprime

from hadpow.field import (
    FieldMismatch,
    FieldSpec,
    Q,
    Scalar,
    characteristic_admits,
    is_prime,
    parse_scalar,
    render_scalar,
)

from conftest import GF2, GF3, GF5, GF7, MERSENNE61


@pytest.mark.parametrize(
    "field, n, expected",
    [(Q, 100, True), (GF2, 3, False), (GF7, 5, True), (GF7, 7, False), (GF7, 6, True)],
)
def test_characteristic_admits(field, n, expected):
    assert characteristic_admits(field, n) is expected


def test_characteristic_admits_rejects_nonpositive_n():
    with pytest.raises(ValueError):
        characteristic_admits(Q, 0)


def test_characteristic_values():
    assert Q.characteristic == 0
    assert GF5.characteristic == 5


def test_parse_scalar_examples():
    assert parse_scalar("-3/6", Q) == Scalar(Q, Fraction(-1, 2))
    assert parse_scalar("-3/6", Q).value == Fraction(-1, 2)
    assert parse_scalar("5", GF3).value == 2
    with pytest.raises(ValueError):
        parse_scalar("1/2", GF3)


@pytest.mark.parametrize("text", ["", "1/", "/2", "1.5", "a", "1/-2", "--1", "1 2"])
def test_parse_scalar_malformed_rational(text):
    with pytest.raises(ValueError):
        parse_scalar(text, Q)


def test_parse_scalar_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        parse_scalar("3/0", Q)


@pytest.mark.parametrize("text", ["-1", "x", "1/1", ""])
def test_parse_scalar_malformed_residue(text):
    with pytest.raises(ValueError):
        parse_scalar(text, GF5)


def test_zero_is_canonical():
    z = parse_scalar("0/7", Q)
    assert z.value.numerator == 0 and z.value.denominator == 1
    assert render_scalar(z) == "0"


def test_prime_field_requires_prime():
    for bad in (0, 1, 4, 9, 561, 2**61 + 1):
        with pytest.raises(ValueError):
            FieldSpec.gf(bad)
    assert FieldSpec.gf(2**61 - 1).p == 2**61 - 1


def test_is_prime_matches_sympy_oracle():
    for n in list(range(-3, 3000)) + [2**31 - 1, 2**61 - 1, 2**64 - 59, 2**64 + 13, 3215031751,
                                      3825123056546413051, 318665857834031151167461]:
        assert is_prime(n) == bool(isprime(n)), n


def test_field_mismatch_is_an_error():
    with pytest.raises(FieldMismatch):
        Scalar(GF3, 1) + Scalar(GF5, 1)
    with pytest.raises(FieldMismatch):
        Scalar(Q, Fraction(1)) * Scalar(GF5, 1)


def test_scalars_are_immutable():
    s = Scalar(Q, Fraction(1))
    with pytest.raises(AttributeError):
        s.value = Fraction(2)


def test_gf_inverse_by_extended_euclid():
    f = GF7
    for a in range(1, 7):
        assert (Scalar(f, a) * Scalar(f, a).inverse()).is_one()
    with pytest.raises(ZeroDivisionError):
        Scalar(f, 0).inverse()


def _elements(field):
    if field.is_rational:
        return st.builds(lambda a, b: Scalar(Q, Fraction(a, b)),
                         st.integers(-10**6, 10**6), st.integers(1, 10**4))
    return st.integers(0, field.p - 1).map(lambda v: Scalar(field, v))


@pytest.mark.parametrize("field", [Q, GF2, GF7, MERSENNE61], ids=str)
@given(data=st.data())
def test_field_axioms(field, data):
    a, b, c = (data.draw(_elements(field)) for _ in range(3))
    zero, one = field.element(0), field.element(1)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a + zero == a and a * one == a
    assert a + (-a) == zero
    if not a.is_zero():
        assert a * a.inverse() == one
        assert (b / a) * a == b


@pytest.mark.parametrize("field", [Q, GF3, MERSENNE61], ids=str)
@given(data=st.data())
def test_render_parse_roundtrip(field, data):
    s = data.draw(_elements(field))
    assert parse_scalar(render_scalar(s), field) == s
