from fractions import Fraction
from math import gcd

import mpmath
import pytest
from hypothesis import given

from qmark.dynamics import get_map
from qmark.exact import LAMBDA, CubicNumber, Interval, _lambda_power, eval_decimal
from qmark.expansions import EcfExpansion, ecf_expand, periodic_ecf
from qmark.qmaps import (
    DyadicRational,
    TriadicRational,
    minkowski_q,
    minkowski_q_inverse,
    q_e,
    q_e_inverse,
    q_e_rank,
    q_o,
    q_o_decimal,
    q_o_inverse,
)

from .strategies import signed_unit_rationals, unit_rationals

L = LAMBDA


def via_farey_orbit(x, slow, linear):
    """Q(x) from the itinerary of x under the slow map, pulled back through the linear map."""
    fm, lm = get_map(slow), get_map(linear)
    keys = []
    while x not in (0, 1):
        b = fm.locate(x)[0]
        keys.append(b.key)
        x = b.apply(x)
    y = CubicNumber(x) if linear == "Fbar_O" else Fraction(x)
    branches = {b.key: b for b in lm.generation(0)}
    for k in reversed(keys):
        y = branches[k].inverse(y)
    return y


def stern_brocot_minkowski(depth):
    """?(x) on Stern-Brocot nodes: the value at a mediant is the mean of its parents."""
    out = {Fraction(0): Fraction(0), Fraction(1): Fraction(1)}

    def rec(a, b, d):
        if d == 0:
            return
        m = Fraction(a.numerator + b.numerator, a.denominator + b.denominator)
        out[m] = (out[a] + out[b]) / 2
        rec(a, m, d - 1)
        rec(m, b, d - 1)

    rec(Fraction(0), Fraction(1), depth)
    return out


def test_minkowski_matches_stern_brocot_means():
    for x, v in stern_brocot_minkowski(11).items():
        assert minkowski_q(x) == v


def test_minkowski_classics():
    assert minkowski_q(Fraction(1, 3)) == Fraction(1, 4)
    assert minkowski_q(Fraction(2, 5)) == Fraction(3, 8)
    assert isinstance(minkowski_q(Fraction(1, 2)), DyadicRational)


@given(unit_rationals(max_den=400))
def test_minkowski_inverse_round_trip(x):
    assert minkowski_q_inverse(minkowski_q(x)) == x


@pytest.mark.parametrize(
    "x, y",
    [("5/13", "11/27"), ("1/3", "1/3"), ("1/2", "2/3"), ("1", "1"), ("0", "0"), ("3/8", "10/27")],
)
def test_even_values(x, y):
    assert q_e(Fraction(x)) == Fraction(y)


@pytest.mark.parametrize("k", range(1, 11))
def test_even_reciprocals(k):
    assert q_e(Fraction(1, 2 * k)) == Fraction(2, 3**k)
    assert q_e(Fraction(1, 2 * k + 1)) == Fraction(1, 3**k)


@given(unit_rationals(max_den=300))
def test_even_against_farey_itinerary(x):
    assert q_e(x).as_fraction() == via_farey_orbit(x, "F_E", "Fbar_E")


@given(signed_unit_rationals(max_den=300))
def test_even_is_odd_function(x):
    assert q_e(-x) == -q_e(x)


@given(signed_unit_rationals(max_den=500))
def test_even_inverse_round_trip(x):
    assert q_e_inverse(q_e(x)) == x


def test_even_inverse_rejects_non_triadic():
    with pytest.raises(ValueError):
        q_e_inverse(Fraction(1, 2))


def test_even_rank_counting_definition():
    assert q_e_rank(Fraction(5, 13), 3) == 11
    with pytest.raises(ValueError):
        q_e_rank(Fraction(5, 13), 2)


def test_even_on_general_expansions():
    # e_1 = -1 gives the signed value
    e = EcfExpansion(((-1, 2), (1, 2)))
    assert q_e(e) == -q_e(EcfExpansion(((1, 2), (1, 2))))
    # silver prefixes converge to 1/2
    gaps = [abs(q_e(periodic_ecf([(1, 2)], n)).as_fraction() - Fraction(1, 2)) for n in (3, 6, 9)]
    assert gaps[0] > gaps[1] > gaps[2]


def test_monotone_on_small_denominators():
    xs = sorted({Fraction(p, q) for q in range(1, 60) for p in range(q + 1)})
    for f in (q_e, minkowski_q, q_o):
        vals = [f(x) for x in xs]
        assert all(a < b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize(
    "x, y",
    [
        ("4/7", 1 - L**-1 + L**-4),
        ("7/12", 1 - L**-1 + L**-4 + L**-5 - L**-6),
        ("1/2", 1 - L**-1),
        ("1", CubicNumber(1)),
        ("0", CubicNumber(0)),
    ],
)
def test_odd_values(x, y):
    assert q_o(Fraction(x)) == y


@pytest.mark.parametrize("k", range(1, 11))
def test_odd_reciprocals(k):
    assert q_o(Fraction(1, 2 * k - 1)) == _lambda_power(-2 * k + 2)
    assert q_o(Fraction(1, 2 * k)) == _lambda_power(-2 * k + 2) - _lambda_power(-2 * k + 1)


@given(unit_rationals(max_den=200))
def test_odd_against_farey_itinerary(x):
    assert q_o(x) == via_farey_orbit(x, "F_O", "Fbar_O")


def test_odd_decimal_against_mpmath():
    with mpmath.workdps(50):
        lam = max(r.real for r in mpmath.polyroots([1, -1, -1, -1], maxsteps=200, extraprec=200))
        ref = 1 - lam**-1 + lam**-4
        got = q_o_decimal(Fraction(4, 7), 40).value
        assert abs(mpmath.mpf(got) - ref) < mpmath.mpf(10) ** -39


@pytest.mark.parametrize("y", ["1/2", "1/3", "7/10"])
def test_odd_inverse_brackets(y):
    iv = q_o_inverse(Fraction(y), 20)
    assert iv.width < Fraction(1, 10**20)
    if iv.width:
        assert q_o(iv.lo) < Fraction(y) < q_o(iv.hi)


def test_odd_inverse_exact_preimage_collapses():
    assert q_o_inverse(_lambda_power(-2), 30) == Interval(Fraction(1, 3), Fraction(1, 3))
    assert q_o_inverse(q_o(Fraction(7, 12)), 30).lo == Fraction(7, 12)


def test_power_rationals_normalize():
    assert TriadicRational(9, 3) == Fraction(1, 3)
    assert str(TriadicRational(9, 3)) == "1/3"
    assert str(DyadicRational(-2, 2)) == "-1/2"
    with pytest.raises(ValueError):
        TriadicRational.from_fraction(Fraction(1, 2))
