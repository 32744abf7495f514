from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import poly_mul, real_value, sympy_det
from bounded_seq.ring import (
    INFINITE,
    DegreeMismatch,
    Ordering,
    RingParams,
    compare_abs,
    elem_from_json,
    elem_to_json,
    enclose,
    norm,
    parse_rational,
    regular_rep,
    two_adic_valuation,
)

P2 = RingParams(2)


@st.composite
def elems(draw, n=None, bound=10**6):
    n = n or draw(st.integers(2, 5))
    coeffs = draw(st.lists(st.integers(-bound, bound), min_size=n, max_size=n))
    return RingParams(n).elem(*coeffs)


@st.composite
def triples(draw):
    n = draw(st.integers(2, 5))
    return tuple(draw(elems(n=n)) for _ in range(3))


def test_mul_examples_against_polynomial_oracle():
    assert (P2.elem(1, 1) * P2.elem(1, -1)).coeffs == poly_mul((1, 1), (1, -1), 2) == (-1, 0)
    assert (P2.elem(3, -2) * P2.elem(3, 2)).coeffs == poly_mul((3, -2), (3, 2), 2) == (1, 0)


@given(triples())
def test_mul_matches_sympy_reduction(t):
    x, y, _ = t
    assert (x * y).coeffs == poly_mul(x.coeffs, y.coeffs, x.degree)


@given(triples())
def test_ring_axioms(t):
    x, y, z = t
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert (x + y) + z == x + (y + z)
    assert x + x.params.zero() == x
    assert x - x == x.params.zero()
    assert x * x.params.one() == x


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        P2.one() + RingParams(3).one()
    with pytest.raises(DegreeMismatch):
        P2.one() * RingParams(3).one()


def test_bad_degree():
    with pytest.raises(ValueError):
        RingParams(1)


def test_norm_examples():
    # a^2 - 2 b^2 for degree 2
    assert norm(P2.elem(3, -2)) == 3**2 - 2 * 2**2 == 1
    assert norm(P2.zero()) == 0
    assert norm(P2.elem(0, 1)) == -2


@given(elems(bound=1000))
def test_norm_is_det_and_zero_only_at_zero(x):
    assert norm(x) == sympy_det(regular_rep(x))
    assert (norm(x) == 0) == x.is_zero()


def test_regular_rep_examples():
    assert regular_rep(P2.gen()) == ((0, 2), (1, 0))
    for n in (2, 3, 5):
        p = RingParams(n)
        assert regular_rep(p.one()) == tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def test_compare_abs_examples():
    assert compare_abs(P2.elem(17, -12), Fraction(1, 10)) is Ordering.LT
    assert compare_abs(P2.zero(), 0) is Ordering.EQ
    assert compare_abs(P2.elem(-1, 1), Fraction(1, 2)) is Ordering.LT
    assert compare_abs(P2.elem(-1, 1), Fraction(2, 5)) is Ordering.GT
    assert compare_abs(P2.elem(-3), 3) is Ordering.EQ
    assert compare_abs(P2.elem(-3), Fraction(29, 10)) is Ordering.GT


def test_compare_abs_rejects_negative_bound():
    with pytest.raises(ValueError):
        compare_abs(P2.one(), -1)


@settings(max_examples=300)
@given(elems(bound=10**4), st.integers(0, 10**5), st.integers(1, 10**3))
def test_compare_abs_agrees_with_mpmath(x, p, q):
    bound = Fraction(p, q)
    got = compare_abs(x, bound)
    if got is Ordering.EQ:
        assert x.is_rational()
    with mpmath.workdps(80):
        margin = abs(real_value(x.coeffs, dps=80)) - mpmath.mpf(p) / q
        if abs(margin) > mpmath.mpf(10) ** -40:
            assert got is (Ordering.LT if margin < 0 else Ordering.GT)


@given(elems(bound=10**8), st.integers(8, 200))
def test_enclose_contains_value(x, bits):
    lo, hi = enclose(x, bits)
    with mpmath.workdps(200):
        v = real_value(x.coeffs, dps=200)
        assert mpmath.mpf(lo.numerator) / lo.denominator <= v
        assert v <= mpmath.mpf(hi.numerator) / hi.denominator


@pytest.mark.parametrize(
    "coeffs, expected",
    [((4, 8), 2), ((0, 0), INFINITE), ((1, 2), 0), ((0, -12), 2), ((-96, 0), 5)],
)
def test_two_adic_valuation(coeffs, expected):
    assert two_adic_valuation(P2.elem(*coeffs)) == expected


@given(elems(bound=10**6))
def test_two_adic_valuation_divides(x):
    v = two_adic_valuation(x)
    if v is INFINITE:
        assert x.is_zero()
    else:
        assert all(c % 2**v == 0 for c in x.coeffs)
        assert any(c % 2 ** (v + 1) for c in x.coeffs)


def test_json_round_trip():
    x = P2.elem(17, -12)
    assert elem_to_json(x) == {"degree": 2, "coeffs": ["17", "-12"]}
    assert elem_from_json({"degree": 2, "coeffs": ["17", "-12"]}) == x
    with pytest.raises(ValueError, match="coeffs"):
        elem_from_json({"degree": 2, "coeffs": ["1"]})


def test_parse_rational():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("7") == 7
    with pytest.raises(ValueError):
        parse_rational("0.1")
    with pytest.raises(ValueError):
        parse_rational("1/0")


def test_str():
    assert str(P2.elem(17, -12)) == "17-12√2"
    assert str(P2.elem(0, 1)) == "√2"
    assert str(RingParams(3).elem(1, -2, 1)) == "1-2·2^(1/3)+2^(2/3)"
