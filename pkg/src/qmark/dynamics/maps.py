"""Interval maps as finite or countable families of Mobius branches.

Every branch acts by t -> (a t + b) / (c t + d) on an interval whose
endpoints are exact (rationals, or elements of Q(lambda) for the odd
linearizations).  ``locate`` lists the branches whose domain holds x in
preference order; ``apply`` uses the first one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional

from ..exact import LAMBDA, ONE_CUBIC, CubicNumber, _lambda_power
from ..farey import ecf_level

__all__ = [
    "Branch",
    "PiecewiseMobius",
    "MAPS",
    "get_map",
    "map_apply",
    "map_preimage",
    "verify_level_sets",
    "is_ambiguous",
]

F0 = Fraction(0)
F1 = Fraction(1)


@dataclass(frozen=True)
class Branch:
    key: tuple
    lo: object
    hi: object
    coeffs: tuple
    lo_closed: bool = True
    hi_closed: bool = True

    def contains(self, x) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def apply(self, x):
        a, b, c, d = self.coeffs
        if c == 0:
            return (a * x + b) / d if d != 1 else a * x + b
        return (a * x + b) / (c * x + d)

    def inverse(self, y):
        a, b, c, d = self.coeffs
        if c == 0:
            return (d * y - b) / a
        return (d * y - b) / (a - c * y)

    @property
    def increasing(self) -> bool:
        a, b, c, d = self.coeffs
        det = a * d - b * c
        return det > 0

    def image(self) -> tuple:
        u, v = self.apply(self.lo), self.apply(self.hi)
        return (u, v) if self.increasing else (v, u)


@dataclass(frozen=True)
class PiecewiseMobius:
    """A named interval map.

    ``generation(k)`` returns the branches of index k (all branches when the
    map is finite, k = 0).  ``guess(x)`` proposes an index near which the
    branch holding x lives; unused for finite maps.
    """

    map_id: str
    domain: tuple
    generation: Callable[[int], list]
    finite: bool
    guess: Optional[Callable] = None
    first: int = 0
    fixed_zero: bool = False
    description: str = ""

    def branches(self, max_index: int = 40) -> Iterable[Branch]:
        if self.finite:
            yield from self.generation(0)
            return
        for k in range(self.first, max_index + 1):
            yield from self.generation(k)

    def in_domain(self, x) -> bool:
        lo, hi, lo_closed, hi_closed = self.domain
        if x < lo or x > hi:
            return False
        if (x == lo and not lo_closed) or (x == hi and not hi_closed):
            return False
        return True

    def locate(self, x) -> list[Branch]:
        if not self.in_domain(x):
            raise ValueError(f"{x} outside the domain of {self.map_id}")
        if self.fixed_zero and x == 0:
            return [Branch(("zero",), F0, F0, (0, 0, 0, 1))]
        if self.finite:
            cands = self.generation(0)
        else:
            k = self.guess(x)
            cands = []
            for j in (k - 1, k, k + 1):
                if j >= self.first:
                    cands += self.generation(j)
        hits = [b for b in cands if b.contains(x)]
        if not hits:
            raise AssertionError(f"no branch of {self.map_id} holds {x}")
        return hits

    def __call__(self, x):
        return self.locate(x)[0].apply(x)


def _F(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


# --------------------------------------------------------------------------
# even maps


def _gen_f_e(_k):
    return [
        Branch((0,), F0, Fraction(1, 3), (1, 0, -2, 1)),
        Branch((1,), Fraction(1, 3), Fraction(1, 2), (-2, 1, 1, 0)),
        Branch((2,), Fraction(1, 2), F1, (2, -1, 1, 0)),
    ]


@lru_cache(maxsize=None)
def _gen_t_e(k):
    return [
        Branch((k, "L"), Fraction(1, 2 * k + 1), Fraction(1, 2 * k), (-2 * k, 1, 1, 0)),
        Branch((k, "R"), Fraction(1, 2 * k), Fraction(1, 2 * k - 1), (2 * k, -1, 1, 0)),
    ]


def _guess_t_e(x):
    return _floor(1 / (2 * abs(_F(x))) + Fraction(1, 2))


@lru_cache(maxsize=None)
def _gen_tt_e(k):
    out = []
    for s in (1, -1):
        lo, hi = Fraction(1, 2 * k + 1), Fraction(1, 2 * k - 1)
        if s == 1:
            out.append(Branch((k, 1), lo, hi, (-2 * k, 1, 1, 0), lo_closed=False))
        else:
            out.append(Branch((k, -1), -hi, -lo, (2 * k, 1, -1, 0), hi_closed=False))
    return out


# --------------------------------------------------------------------------
# odd maps


def _gen_f_o(_k):
    return [
        Branch((0,), F0, Fraction(1, 3), (1, 0, -2, 1), hi_closed=False),
        Branch((1,), Fraction(1, 3), Fraction(1, 2), (3, -1, 1, 0)),
        Branch((2,), Fraction(1, 2), F1, (-1, 1, 1, 0)),
    ]


@lru_cache(maxsize=None)
def _gen_t_o(k):
    return [
        Branch((k, "L"), Fraction(1, 2 * k + 1), Fraction(1, 2 * k), (2 * k + 1, -1, 1, 0)),
        Branch((k, "R"), Fraction(1, 2 * k), Fraction(1, 2 * k - 1), (-(2 * k - 1), 1, 1, 0)),
    ]


def _guess_t_o(x):
    return max(1, _floor(1 / (2 * _F(x))))


@lru_cache(maxsize=None)
def _gen_tt_o(m):
    lo = Fraction(1, 2 * m + 2)
    hi = Fraction(1, 2 * m) if m else F1
    n = 2 * m + 1
    return [
        Branch((m, 1), lo, hi, (-n, 1, 1, 0), lo_closed=False),
        Branch((m, -1), -hi, -lo, (n, 1, -1, 0), hi_closed=False),
    ]


def _guess_tt_o(x):
    return _floor(1 / (2 * abs(_F(x))))


# --------------------------------------------------------------------------
# classical maps


def _gen_farey(_k):
    return [
        Branch((0,), F0, Fraction(1, 2), (1, 0, -1, 1)),
        Branch((1,), Fraction(1, 2), F1, (-1, 1, 1, 0)),
    ]


@lru_cache(maxsize=None)
def _gen_gauss(k):
    return [Branch((k,), Fraction(1, k + 1), Fraction(1, k), (-k, 1, 1, 0), lo_closed=False)]


def _guess_gauss(x):
    return _floor(1 / _F(x))


def _gen_tent(_k):
    return [
        Branch((0,), F0, Fraction(1, 2), (2, 0, 0, 1)),
        Branch((1,), Fraction(1, 2), F1, (-2, 2, 0, 1)),
    ]


# --------------------------------------------------------------------------
# linearizations


def _gen_fbar_e(_k):
    return [
        Branch((0,), F0, Fraction(1, 3), (3, 0, 0, 1)),
        Branch((1,), Fraction(1, 3), Fraction(2, 3), (-3, 2, 0, 1)),
        Branch((2,), Fraction(2, 3), F1, (3, -2, 0, 1)),
    ]


@lru_cache(maxsize=None)
def _gen_tbar_e(k):
    p = 3**k
    return [
        Branch((k, "D"), Fraction(1, p), Fraction(2, p), (-p, 2, 0, 1)),
        Branch((k, "A"), Fraction(2, p), Fraction(3, p), (p, -2, 0, 1)),
    ]


def _guess_tbar_e(y):
    y = _F(y)
    k = 1
    while Fraction(1, 3**k) > y:
        k += 1
    return k


L_INV2 = _lambda_power(-2)
ONE_MINUS_LINV = ONE_CUBIC - _lambda_power(-1)


def _gen_fbar_o(_k):
    return [
        Branch((0,), CubicNumber(0), L_INV2, (_lambda_power(2), 0, 0, 1), hi_closed=False),
        Branch((1,), L_INV2, ONE_MINUS_LINV, (_lambda_power(3), -LAMBDA, 0, 1)),
        Branch((2,), ONE_MINUS_LINV, ONE_CUBIC, (-LAMBDA, LAMBDA, 0, 1)),
    ]


@lru_cache(maxsize=None)
def _gen_tbar_o(k):
    """Descending branch of index k and the ascending branch of index k + 1.

    Together they tile [lambda^(-2k), lambda^(2-2k)], split at
    (lambda - 1) / lambda^(2k-1) = (lambda + 1) / lambda^(2k+1).
    """
    top = _lambda_power(2 - 2 * k)
    split = (LAMBDA - 1) * _lambda_power(1 - 2 * k)
    bottom = _lambda_power(-2 * k)
    out = [Branch((k, "D"), split, top, (-_lambda_power(2 * k - 1), LAMBDA, 0, 1))]
    out.append(Branch((k + 1, "A"), bottom, split, (_lambda_power(2 * k + 1), -LAMBDA, 0, 1)))
    return out


def _guess_tbar_o(y):
    k = 1
    while _lambda_power(-2 * k) > y:
        k += 1
    return k


# --------------------------------------------------------------------------
# registry


def _closed(lo, hi):
    return (lo, hi, True, True)


MAPS: dict[str, PiecewiseMobius] = {
    "F_E": PiecewiseMobius("F_E", _closed(F0, F1), _gen_f_e, True, description="even Farey map"),
    "T_E": PiecewiseMobius(
        "T_E", _closed(F0, F1), _gen_t_e, False, _guess_t_e, 1, True, "even Gauss map"
    ),
    "Tt_E": PiecewiseMobius(
        "Tt_E", (-F1, F1, True, False), _gen_tt_e, False, _guess_t_e, 1, True,
        "extended even Gauss map on [-1, 1)",
    ),
    "F_O": PiecewiseMobius("F_O", _closed(F0, F1), _gen_f_o, True, description="odd Farey map"),
    "T_O": PiecewiseMobius(
        "T_O", _closed(F0, F1), _gen_t_o, False, _guess_t_o, 1, True, "odd Gauss map"
    ),
    "Tt_O": PiecewiseMobius(
        "Tt_O", (-F1, F1, True, False), _gen_tt_o, False, _guess_tt_o, 0, True,
        "extended odd Gauss map on [-1, 1)",
    ),
    "F": PiecewiseMobius("F", _closed(F0, F1), _gen_farey, True, description="Farey map"),
    "G": PiecewiseMobius(
        "G", _closed(F0, F1), _gen_gauss, False, _guess_gauss, 1, True, "Gauss map"
    ),
    "tent": PiecewiseMobius("tent", _closed(F0, F1), _gen_tent, True, description="2 dist(y, Z)"),
    "Fbar_E": PiecewiseMobius("Fbar_E", _closed(F0, F1), _gen_fbar_e, True),
    "Tbar_E": PiecewiseMobius(
        "Tbar_E", _closed(F0, F1), _gen_tbar_e, False, _guess_tbar_e, 1, True
    ),
    "Fbar_O": PiecewiseMobius("Fbar_O", _closed(CubicNumber(0), ONE_CUBIC), _gen_fbar_o, True),
    "Tbar_O": PiecewiseMobius(
        "Tbar_O", _closed(CubicNumber(0), ONE_CUBIC), _gen_tbar_o, False, _guess_tbar_o, 1, True
    ),
}

_ALIASES = {
    "TE": "T_E", "FE": "F_E", "FO": "F_O", "TO": "T_O",
    "Ttilde_E": "Tt_E", "T~_E": "Tt_E", "Ttilde_O": "Tt_O", "T~_O": "Tt_O",
    "Fbar_e": "Fbar_E", "Tbar_e": "Tbar_E", "Fbar_o": "Fbar_O", "Tbar_o": "Tbar_O",
}


def get_map(map_id: str) -> PiecewiseMobius:
    key = _ALIASES.get(map_id, map_id)
    if key not in MAPS:
        raise KeyError(f"unknown map {map_id!r}; known: {', '.join(MAPS)}")
    return MAPS[key]


def map_apply(map_id: str, x):
    """Exact image of x under the preferred branch."""
    m = get_map(map_id)
    if isinstance(x, (int, str)):
        x = Fraction(x)
    return m(x)


def is_ambiguous(map_id: str, x) -> bool:
    """True when two branches hold x and disagree on its image."""
    hits = get_map(map_id).locate(x)
    vals = {b.apply(x) for b in hits}
    return len(vals) > 1


def map_preimage(map_id: str, interval, max_index: int = 40) -> list[tuple[tuple, tuple]]:
    """(branch key, (lo, hi)) for each branch whose image meets ``interval``.

    Countable maps are truncated at branch index ``max_index``.
    """
    m = get_map(map_id)
    lo, hi = interval
    out = []
    for b in m.branches(max_index):
        u, v = b.image()
        a, c = max(lo, u), min(hi, v)
        if a > c:
            continue
        x1, x2 = b.inverse(a), b.inverse(c)
        out.append((b.key, (x1, x2) if x1 <= x2 else (x2, x1)))
    return out


def verify_level_sets(n: int) -> dict:
    """Compare F_E^{-n}({0, 1}) with the mediant-built level Y_n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    m = get_map("F_E")
    current = {F0, F1}
    for _ in range(n):
        nxt = set()
        for b in m.branches():
            u, v = b.image()
            for y in current:
                if u <= y <= v:
                    x = b.inverse(y)
                    if b.contains(x):
                        nxt.add(x)
        current = nxt
    expected = set(ecf_level(n).ordered)
    return {
        "check": "level_sets",
        "n": n,
        "size": len(current),
        "expected_size": len(expected),
        "missing": sorted(str(x) for x in expected - current)[:10],
        "extra": sorted(str(x) for x in current - expected)[:10],
        "pass": current == expected,
    }
