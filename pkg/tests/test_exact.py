import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmark.exact import (
    LAMBDA,
    LAMBDA_INV,
    ONE_CUBIC,
    SQRT2,
    CubicNumber,
    Interval,
    QuadNumber,
    _lambda_power,
    cubic_arith,
    decimal_from_interval,
    enclose,
    eval_decimal,
    format_rational,
    lambda_isolate,
    log_interval,
    log_rational,
    mediant,
    parse_rational,
    rational_arith,
    sign,
    sqrt_isolate,
)

from .strategies import cubic_coeffs

with mpmath.workdps(60):
    LAMBDA_MP = max(r.real for r in mpmath.polyroots([1, -1, -1, -1], maxsteps=200, extraprec=200))


def cubic_mp(z: CubicNumber):
    with mpmath.workdps(60):
        return sum(mpmath.mpf(c.numerator) / c.denominator * LAMBDA_MP**i for i, c in enumerate(z.coeffs))


def test_rational_ops():
    assert rational_arith("1/3", "1/6", "add") == Fraction(1, 2)
    assert rational_arith(1, 3, "cmp") == -1
    with pytest.raises(ZeroDivisionError):
        rational_arith(1, 0, "div")
    assert mediant(Fraction(1, 3), Fraction(1, 2)) == Fraction(2, 5)


def test_parse_and_format_round_trip():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational("7") == 7
    assert format_rational(Fraction(0)) == "0/1"
    for bad in ("0.5", "a/b", "1/"):
        with pytest.raises(ValueError):
            parse_rational(bad)
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")


def test_lambda_isolation_against_polyroots():
    iv = lambda_isolate(40)
    assert iv.width < Fraction(1, 10**40)
    assert iv.lo < Fraction(mpmath.nstr(LAMBDA_MP, 55)) < iv.hi or iv.contains(
        Fraction(mpmath.nstr(LAMBDA_MP, 55))
    )
    assert iv.lo**3 - iv.lo**2 - iv.lo - 1 < 0 < iv.hi**3 - iv.hi**2 - iv.hi - 1


def test_sqrt_isolation():
    iv = sqrt_isolate(2, 30)
    assert iv.lo**2 < 2 < iv.hi**2
    assert iv.width < Fraction(1, 10**30)


def test_lambda_minimal_polynomial_in_field():
    assert LAMBDA**3 == LAMBDA**2 + LAMBDA + 1
    assert LAMBDA * LAMBDA_INV == ONE_CUBIC
    assert _lambda_power(-4) * _lambda_power(4) == ONE_CUBIC


@given(cubic_coeffs, cubic_coeffs, cubic_coeffs)
def test_cubic_sign_matches_high_precision(a, b, c):
    z = CubicNumber(a, b, c)
    v = cubic_mp(z)
    if z == 0:
        assert a == b == c == 0
    else:
        assert z.sign() == (1 if v > 0 else -1)


@given(cubic_coeffs, cubic_coeffs, cubic_coeffs, cubic_coeffs, cubic_coeffs, cubic_coeffs)
def test_cubic_field_laws(a, b, c, d, e, f):
    x, y = CubicNumber(a, b, c), CubicNumber(d, e, f)
    assert (x + y) - y == x
    assert x * y == y * x
    if y != 0:
        assert (x / y) * y == x
    with mpmath.workdps(60):
        assert x * y == 0 or mpmath.almosteq(cubic_mp(x * y), cubic_mp(x) * cubic_mp(y), 1e-40)


def test_cubic_arith_wrapper_and_division_by_zero():
    assert cubic_arith(LAMBDA, LAMBDA, "mul") == LAMBDA**2
    with pytest.raises(ZeroDivisionError):
        cubic_arith(LAMBDA, CubicNumber(0), "div")


@given(st.integers(-20, 20), st.integers(-20, 20))
def test_quadratic_sign(a, b):
    z = QuadNumber(a, b, 2)
    assert z.sign() == (0 if a == b == 0 else (1 if a + b * math.sqrt(2) > 0 else -1))


def test_enclosure_and_decimal():
    iv = enclose(SQRT2, 100)
    assert iv.lo < Fraction(141421356237, 10**11) + 1 and iv.width < Fraction(1, 2**90)
    assert eval_decimal(SQRT2, 20).value == "1.41421356237309504880"
    assert eval_decimal(Fraction(1, 3), 5).value == "0.33333"
    assert sign(LAMBDA - 2) == -1


def test_interval_arithmetic_contains_true_value():
    a = Interval(Fraction(1), Fraction(2))
    b = Interval(Fraction(-1), Fraction(3))
    assert (a * b).lo == -2 and (a * b).hi == 6
    assert (a - b).contains(0)
    assert decimal_from_interval(Interval.point(Fraction(1, 8)), 3).value == "0.125"


@given(st.integers(1, 10**6), st.integers(1, 997))
def test_log_rational_encloses_mpmath(p, q):
    x = Fraction(p, q)
    iv = log_rational(x, 80)
    with mpmath.workdps(60):
        ref = mpmath.log(mpmath.mpf(x.numerator) / x.denominator)
    assert iv.lo - Fraction(1, 2**70) <= Fraction(mpmath.nstr(ref, 50)) <= iv.hi + Fraction(1, 2**70)
    assert iv.width < Fraction(1, 2**60)


def test_log_interval_monotone():
    iv = log_interval(Interval(Fraction(2), Fraction(3)), 64)
    assert iv.lo < Fraction(6932, 10000) and iv.hi > Fraction(10986, 10000)
