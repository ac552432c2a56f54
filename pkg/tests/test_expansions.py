import re
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmark.exact import THETA
from qmark.expansions import (
    EcfExpansion,
    InvalidExpansion,
    OcfExpansion,
    RcfExpansion,
    cf_value,
    continuant_bound_holds,
    convergents,
    digit_sum,
    ecf_expand,
    ecf_tail_equivalence,
    expand,
    expansion_from_json,
    expansion_to_json,
    iter_prefixes,
    ocf_expand,
    periodic_ecf,
    rcf_expand,
    theta_power,
)

from .strategies import ecf_terms, signed_unit_rationals, unit_rationals


def naive_value(terms):
    """Top-down evaluation through the convergent matrices."""
    p_prev, q_prev, p, q = 1, 0, 0, 1
    for e, a in terms:
        p_prev, q_prev, p, q = p, q, a * p + e * p_prev, a * q + e * q_prev
    return Fraction(p, q)


def test_naive_value_agrees_on_known_examples():
    assert naive_value(((1, 2), (1, 2), (-1, 2), (1, 1))) == Fraction(5, 13)


@pytest.mark.parametrize(
    "x, terms",
    [
        ("5/13", ((1, 2), (1, 2), (-1, 2), (1, 1))),
        ("3/8", ((1, 2), (1, 2), (-1, 2))),
        ("1/3", ((1, 2), (1, 1))),
        ("1/2", ((1, 2),)),
        ("1", ((1, 1),)),
        ("-1", ((-1, 1),)),
        ("0", ()),
    ],
)
def test_even_examples(x, terms):
    assert ecf_expand(Fraction(x)).terms == terms


@pytest.mark.parametrize(
    "x, terms",
    [
        ("7/12", ((1, 1), (1, 1), (1, 3), (-1, 1), (1, 1))),
        ("4/7", ((1, 1), (1, 1), (1, 3))),
        ("1/3", ((1, 3),)),
        ("1/2", ((1, 1), (1, 1))),
    ],
)
def test_odd_examples(x, terms):
    assert ocf_expand(Fraction(x)).terms == terms
    assert cf_value(OcfExpansion(terms)) == Fraction(x)


def test_regular_examples():
    assert rcf_expand(Fraction(1, 3)).terms == (3,)
    assert rcf_expand(Fraction(3, 8)).terms == (2, 1, 2)


@pytest.mark.parametrize(
    "cls, terms, rule",
    [
        (EcfExpansion, ((1, 3),), "even"),
        (EcfExpansion, ((1, 2), (-1, 1)), "requires e_2=+1"),
        (OcfExpansion, ((1, 2),), "odd"),
        (OcfExpansion, ((1, 1), (-1, 1)), "positive"),
        (OcfExpansion, ((-1, 1),), "e_1"),
        (OcfExpansion, ((1, 3), (1, 1), (-1, 3)), "positive"),
    ],
)
def test_validators_name_the_rule(cls, terms, rule):
    with pytest.raises(InvalidExpansion, match=re.escape(rule)):
        cls(terms)


def test_regular_final_digit_rule():
    with pytest.raises(InvalidExpansion):
        RcfExpansion((2, 1))
    assert cf_value(RcfExpansion((2, 1), prefix=True)) == Fraction(1, 3)


def test_out_of_range_inputs():
    with pytest.raises(ValueError):
        ecf_expand(Fraction(3, 2))
    with pytest.raises(ValueError):
        ocf_expand(Fraction(-1, 2))


# -- exhaustive oracles ---------------------------------------------------


def all_ecf(budget):
    def rec(prefix, left):
        for a in range(2, left + 1, 2):
            for e in (1, -1):
                t = prefix + ((e, a),)
                yield t
                yield from rec(t, left - a)
        if left >= 1:
            yield prefix + ((1, 1),)
            if not prefix:
                yield ((-1, 1),)
    for t in rec((), budget):
        yield t


def all_ocf(budget):
    def rec(prefix, left):
        for a in range(1, left + 1, 2):
            signs = (1,) if not prefix or prefix[-1][1] == 1 or a == 1 else (1, -1)
            for e in signs:
                t = prefix + ((e, a),)
                yield t
                if a == 1 and e == 1 or a > 1:
                    yield from rec(t, left - a)
    yield from rec((), budget)


def all_rcf(budget):
    def rec(prefix, left):
        for a in range(1, left + 1):
            t = prefix + (a,)
            if a >= 2 or len(t) == 1:
                yield t
            yield from rec(t, left - a)
    yield from rec((), budget)


def test_even_expand_of_value_is_identity_to_sum_16():
    n = 0
    for t in all_ecf(16):
        e = EcfExpansion(t)
        assert ecf_expand(cf_value(e)).terms == t, t
        n += 1
    assert n > 8_000


def test_odd_expand_of_value_is_identity_to_sum_16():
    n = 0
    for t in all_ocf(16):
        try:
            e = OcfExpansion(t)
        except InvalidExpansion:
            continue
        assert ocf_expand(cf_value(e)).terms == t
        n += 1
    assert n > 1_000


def test_regular_expand_of_value_is_identity_to_sum_16():
    for t in all_rcf(16):
        assert rcf_expand(cf_value(RcfExpansion(t))).terms == t


@pytest.mark.parametrize("kind", ["rcf", "ecf", "ocf"])
def test_value_of_expand_is_identity(kind):
    for q in range(1, 201):
        for p in range(0, q + 1):
            if gcd(p, q) != 1:
                continue
            x = Fraction(p, q)
            assert cf_value(expand(kind, x)) == x


def test_even_parity_law_to_200():
    for q in range(1, 201):
        for p in range(-q, q + 1):
            if gcd(p, q) != 1:
                continue
            ends_in_one = ecf_expand(Fraction(p, q)).terms[-1][1] == 1 if p else False
            assert ends_in_one == ((p + q) % 2 == 0)


@given(ecf_terms())
def test_generated_even_expansions_round_trip(terms):
    e = EcfExpansion(terms)
    x = cf_value(e)
    assert x == naive_value(terms)
    assert ecf_expand(x).terms == terms


@given(signed_unit_rationals())
def test_even_value_is_odd_function(x):
    t = ecf_expand(x).terms
    flipped = ecf_expand(-x).terms
    if t:
        assert flipped == ((-t[0][0], t[0][1]),) + t[1:]


# -- convergents ------------------------------------------------------------


def test_convergents_of_five_thirteenths():
    c = convergents(ecf_expand(Fraction(5, 13)))
    assert c.fractions() == [Fraction(1, 2), Fraction(2, 5), Fraction(3, 8), Fraction(5, 13)]
    assert c.denominators == [2, 5, 8, 13]


def test_silver_continuants():
    # all-(1,2) prefixes give Pell denominators
    assert convergents(periodic_ecf([(1, 2)], 6)).denominators == [2, 5, 12, 29, 70, 169]


def test_continuant_bound_exact_comparison():
    assert theta_power(1) == THETA
    assert continuant_bound_holds(2, 2)
    assert not continuant_bound_holds(3, 2)


@given(unit_rationals(max_den=500))
def test_continuant_bound_on_even_convergents(x):
    e = ecf_expand(x)
    s = 0
    for (_, a), q in zip(e.terms, convergents(e).denominators):
        s += a
        assert continuant_bound_holds(q, s)


def test_tail_equivalence_preserves_value_in_the_limit():
    e = ecf_expand(Fraction(1, 3))
    vals = [cf_value(ecf_tail_equivalence(e, d)) for d in (2, 6, 12)]
    gaps = [abs(v - Fraction(1, 3)) for v in vals]
    assert gaps[0] > gaps[1] > gaps[2] > 0


def test_json_round_trip_and_prefixes():
    e = ecf_expand(Fraction(5, 13))
    assert expansion_from_json(expansion_to_json(e)) == e
    assert [digit_sum(p) for p in iter_prefixes(e)] == [2, 4, 6, 7]
    with pytest.raises(InvalidExpansion):
        expansion_from_json({"kind": "ecf", "terms": [[1, 3]]})


@given(st.integers(1, 30), st.integers(0, 30))
def test_regular_expansion_uniqueness(q, p):
    x = Fraction(min(p, q), q)
    t = rcf_expand(x).terms
    assert not t or len(t) == 1 or t[-1] >= 2
