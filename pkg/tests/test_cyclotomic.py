import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pbwdeform.cyclotomic import (
    MAX_ORDER,
    CycloOrderError,
    CycloScalar,
    ScalarSyntaxError,
    cyclotomic_polynomial,
    format_scalar,
    parse_scalar,
)

ORDERS = [1, 2, 3, 4, 5, 6, 8, 12]


def embed(x: CycloScalar) -> complex:
    """Numerical value under zeta -> exp(2 pi i / M); an independent check."""
    z = cmath.exp(2j * cmath.pi / x.order)
    return sum(float(c) * z**k for k, c in enumerate(x.coeffs))


@st.composite
def scalars(draw, order=None):
    m = order or draw(st.sampled_from(ORDERS))
    coeffs = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=1, max_size=m))
    return CycloScalar.from_coeffs(m, coeffs)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)


def test_basic_identities():
    z = CycloScalar.zeta(3)
    assert z + z**2 == -1
    assert CycloScalar.rational(-1) * CycloScalar.rational(-1) == 1
    assert z * z**2 == 1


@pytest.mark.parametrize("m", ORDERS)
def test_inverse_of_roots(m):
    for k in range(m):
        assert CycloScalar.zeta(m, k).inverse() == CycloScalar.zeta(m, m - k)


def test_inverse_examples():
    assert CycloScalar.rational(Fraction(2, 3)).inverse() == Fraction(3, 2)
    i = CycloScalar.zeta(4)
    assert (1 + i).inverse() == (1 - i) / 2
    with pytest.raises(ZeroDivisionError):
        CycloScalar.zero(5).inverse()


def test_mixed_orders_promote():
    s = CycloScalar.zeta(3) * CycloScalar.zeta(4)
    assert s.order == 12
    assert s == CycloScalar.zeta(12, 7)
    assert CycloScalar.zeta(2) == -1


def test_order_limit():
    with pytest.raises(CycloOrderError):
        CycloScalar.zeta(MAX_ORDER) * CycloScalar.zeta(7)


def test_parse_and_format():
    assert parse_scalar("z^1", 3) == CycloScalar.zeta(3)
    assert parse_scalar("-1/2", 3) == Fraction(-1, 2)
    assert parse_scalar("[0,1]", 4) == CycloScalar.zeta(4)
    assert parse_scalar("2*z^2", 3) == 2 * CycloScalar.zeta(3, 2)
    assert format_scalar(CycloScalar.zeta(3, 2)) == "z^2"
    assert format_scalar(-CycloScalar.zeta(3, 2)) == "-z^2"
    assert format_scalar(CycloScalar.rational(Fraction(3, 4), 3)) == "3/4"
    for bad in ["", "z^", "1/0x", "[1,"]:
        with pytest.raises(ScalarSyntaxError):
            parse_scalar(bad, 3)


@given(scalars())
def test_format_round_trip(a):
    assert parse_scalar(format_scalar(a), a.order) == a


@given(st.sampled_from(ORDERS).flatmap(lambda m: st.tuples(scalars(m), scalars(m), scalars(m))))
def test_field_axioms(t):
    a, b, c = t
    assert (a * b) * c == a * (b * c)
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a - a).is_zero() and not any((a - a).coeffs)
    if not a.is_zero():
        assert a * a.inverse() == 1


@given(scalars(), scalars())
def test_embedding_is_a_homomorphism(a, b):
    assert abs(embed(a + b) - (embed(a) + embed(b))) < 1e-9
    assert abs(embed(a * b) - embed(a) * embed(b)) < 1e-9


@given(scalars(), st.sampled_from([2, 3, 5]))
def test_promotion_round_trip(a, k):
    if a.order * k > MAX_ORDER:
        return
    p = a.promote(a.order * k)
    assert p == a
    assert abs(embed(p) - embed(a)) < 1e-9
    assert hash(p) == hash(a)
