from fractions import Fraction

import pytest
from hypothesis import given

from qmark.dynamics import (
    MAPS,
    get_map,
    is_ambiguous,
    map_apply,
    map_preimage,
    verify_level_sets,
)
from qmark.exact import LAMBDA, CubicNumber, _lambda_power
from qmark.expansions import ecf_expand

from .strategies import signed_unit_rationals, unit_rationals

F = Fraction


@pytest.mark.parametrize(
    "map_id, x, y",
    [
        ("F_E", "3/8", "2/3"),
        ("Fbar_E", "1/3", "1"),
        ("T_O", "4/7", "3/4"),
        ("F", "1/2", "1"),
        ("tent", "1/2", "1"),
        ("Tbar_E", "11/27", "7/9"),
        ("T_E", "5/13", "3/5"),
        ("G", "3/8", "2/3"),
        ("T_E", "0", "0"),
    ],
)
def test_rational_examples(map_id, x, y):
    assert map_apply(map_id, F(x)) == F(y)


def test_cubic_breakpoints():
    assert get_map("Tbar_O")(_lambda_power(-2)) == 0
    # 1/3 sits on the jump of F_O; its image under the half-open first branch is 0
    assert get_map("F_O")(F(1, 3)) == 0
    assert get_map("Fbar_O")(_lambda_power(-2)) == 0


def test_aliases_and_unknown_ids():
    assert get_map("Ttilde_E") is get_map("Tt_E")
    with pytest.raises(KeyError):
        get_map("nope")


def test_domain_violations():
    with pytest.raises(ValueError):
        map_apply("T_E", F(3, 2))
    with pytest.raises(ValueError):
        map_apply("Tt_E", F(1))


def test_ambiguity_flags():
    assert is_ambiguous("F_O", F(1, 3)) is False  # half-open branch resolves it
    assert not is_ambiguous("F_E", F(1, 2))


@given(unit_rationals(max_den=300))
def test_even_gauss_is_a_power_of_the_farey_map(x):
    """T_E(x) is F_E iterated until the leading digit has been spent."""
    if x == 0:
        return
    t = ecf_expand(x).terms
    if t == ((1, 1),):
        return
    y = x
    for _ in range(t[0][1] // 2):
        y = map_apply("F_E", y)
    assert y == map_apply("T_E", x)


@given(signed_unit_rationals(max_den=300))
def test_extended_even_map_projects_to_even_gauss(x):
    if x == 1:
        return
    t = map_apply("Tt_E", x)
    if abs(x) in (F(1, k) for k in range(1, 302, 2)):
        return  # identification 1 = -1 at the odd reciprocals
    assert abs(t) == map_apply("T_E", abs(x))


def test_preimages():
    pre = map_preimage("Fbar_E", (F(0), F(1)))
    assert [iv for _, iv in pre] == [(F(0), F(1, 3)), (F(1, 3), F(2, 3)), (F(2, 3), F(1))]
    pre = dict(map_preimage("T_E", (F(0), F(1)), max_index=1))
    # branch k = 1 splits at 1/2 into two monotone halves covering [1/3, 1]
    assert pre[(1, "L")] == (F(1, 3), F(1, 2)) and pre[(1, "R")] == (F(1, 2), F(1))
    pts = {iv[0] for y in (F(0), F(1)) for _, iv in map_preimage("F_E", (y, y))}
    assert {F(1, 3), F(1, 2)} <= pts


@pytest.mark.parametrize("n", range(0, 5))
def test_level_sets_are_farey_preimages(n):
    assert verify_level_sets(n)["pass"]


@pytest.mark.parametrize("map_id", sorted(MAPS))
def test_every_branch_maps_into_the_domain(map_id):
    m = get_map(map_id)
    for b in m.branches(6):
        for x in (b.lo, b.hi):
            if b.contains(x):
                y = b.apply(x)
                lo, hi = m.domain[0], m.domain[1]
                assert lo <= y <= hi


def test_lambda_maps_stay_in_the_cubic_field():
    y = get_map("Tbar_O")(CubicNumber(Fraction(1, 2)))
    assert isinstance(y, CubicNumber) and 0 <= y <= 1
    assert LAMBDA**3 == LAMBDA**2 + LAMBDA + 1
