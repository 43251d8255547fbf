from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deltalp import ball as B
from deltalp.ball import Ball

rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**6)
precs = st.sampled_from([64, 128, 333])


@given(rationals, rationals, precs)
def test_arithmetic_encloses_exact_result(a, b, prec):
    x, y = Ball.from_value(a, prec), Ball.from_value(b, prec)
    assert (x + y).contains(a + b)
    assert (x - y).contains(a - b)
    assert (x * y).contains(a * b)
    if b != 0:
        assert (x / y).contains(a / b)


@given(rationals, st.integers(-10**30, 10**30).filter(bool), precs)
def test_integer_fast_path(a, n, prec):
    x = Ball.from_value(a, prec)
    assert (x * n).contains(a * n)
    assert (x / n).contains(a / n)


@given(rationals)
def test_neg_and_abs_keep_full_precision(a):
    x = Ball.from_value(a, 300)
    assert (-x).contains(-a)
    assert abs(x).contains(abs(a))
    assert (-x).rad == x.rad


def test_abs_of_ball_straddling_zero():
    x = Ball.from_interval(Fraction(-1), Fraction(3))
    lo, hi = abs(x).interval()
    assert lo <= 0 and hi >= 3


@given(st.integers(0, 12), precs)
def test_pow_matches_repeated_product(n, prec):
    x = Ball.from_value(Fraction(7, 3), prec)
    assert (x**n).contains(Fraction(7, 3) ** n)


def test_exact_integers_have_zero_radius():
    assert Ball.from_value(2**100, 128).rad == 0
    assert Ball.from_value(2**100 + 1, 64).rad > 0


def test_sign_and_comparisons():
    half = Ball.from_value(Fraction(1, 2))
    assert half.sign() == 1 and (-half).sign() == -1
    assert Ball.from_value(0).sign() == 0
    assert Ball.from_interval(Fraction(-1), Fraction(1)).sign() is None
    assert half.certainly_lt(1) and half.certainly_gt(0)
    assert not Ball.from_interval(Fraction(0), Fraction(2)).certainly_lt(1)


@pytest.mark.parametrize("prec", [64, 128, 512])
def test_elementary_functions_enclose_known_values(prec):
    import math

    one = B.one(prec)
    assert B.exp(one).contains(B.parse_constant("e", prec).mid)
    assert B.log(B.exp(one)).overlaps(1)
    assert B.sqrt(Ball.from_value(2, prec)).overlaps(B.exp(B.log(Ball.from_value(2, prec)) / 2))
    assert abs(float(B.pi(prec)) - math.pi) < 1e-15
    assert B.sin(B.pi(prec)).overlaps(0)
    assert B.cos(B.pi(prec)).overlaps(-1)
    assert abs(float(B.euler_gamma(prec)) - 0.5772156649015329) < 1e-15
    x = Fraction(1, 10**30)
    lo, hi = B.expm1(Ball.from_value(x, prec)).interval()
    assert lo <= x + x**2 / 2 + x**3 and hi >= x + x**2 / 2


def test_log_and_sqrt_domains():
    with pytest.raises(ValueError):
        B.log(Ball.from_value(-1))
    with pytest.raises(ValueError):
        B.sqrt(Ball.from_value(-1))


@given(rationals, precs)
def test_format_round_trip(a, prec):
    x = Ball.from_value(a, prec) / 7
    text = B.format_ball(x, 15)
    back = B.parse_ball_text(text, prec)
    assert back.contains(x)


def test_format_shows_value_and_radius():
    text = B.format_ball(Ball.from_value(Fraction(1, 3), 64), 10)
    value, radius = text.split(" ± ")
    assert value.startswith("3.333333333e-1")
    assert Fraction(radius) >= abs(Fraction(value) - Fraction(1, 3))


def test_parse_constant_expressions():
    pi2_6 = B.parse_constant("pi2/6", 128)
    assert abs(float(pi2_6) - 1.6449340668482264) < 1e-15
    assert B.parse_constant("-5.047").contains(Fraction(-5047, 1000))
    assert B.parse_constant("2*pi - 1").overlaps(B.pi() * 2 - 1)
    with pytest.raises(ValueError):
        B.parse_constant("__import__('os')")


def test_parse_number_keeps_rationals_exact():
    assert B.parse_number("1.49") == Fraction(149, 100)
    assert B.parse_number(" 3/2 ") == Fraction(3, 2)
    assert isinstance(B.parse_number("pi2/6"), Ball)


def test_with_prec_keeps_enclosure():
    x = B.pi(512)
    y = x.with_prec(64)
    assert y.contains(x)
