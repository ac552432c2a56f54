"""Question-mark functions for the regular, even and odd continued fractions.

``minkowski_q`` returns dyadic rationals, ``q_e`` triadic rationals and
``q_o`` exact elements of Q(lambda).  The inverses are exact for the first
two and a certified bisection for the third.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exact import (
    CubicNumber,
    DecimalApprox,
    Interval,
    _frac,
    _lambda_power,
    eval_decimal,
)
from .expansions import (
    EcfExpansion,
    OcfExpansion,
    RcfExpansion,
    ecf_expand,
    ocf_expand,
    rcf_expand,
)

__all__ = [
    "TriadicRational",
    "DyadicRational",
    "minkowski_q",
    "minkowski_q_inverse",
    "q_e",
    "q_e_rank",
    "q_e_inverse",
    "q_o",
    "q_o_decimal",
    "q_o_inverse",
]


def _split_power(m: int, k: int, base: int) -> tuple[int, int]:
    while k > 0 and m % base == 0:
        m //= base
        k -= 1
    if m == 0:
        k = 0
    return m, k


@dataclass(frozen=True, order=False)
class _PowerRational:
    m: int
    k: int

    base = 0  # overridden

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("exponent must be non-negative")
        m, k = _split_power(int(self.m), int(self.k), self.base)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "k", k)

    @classmethod
    def from_fraction(cls, x):
        x = _frac(x)
        d = x.denominator
        k = 0
        while d % cls.base == 0:
            d //= cls.base
            k += 1
        if d != 1:
            raise ValueError(f"{x} is not a power-of-{cls.base} fraction")
        return cls(x.numerator, k)

    def as_fraction(self) -> Fraction:
        return Fraction(self.m, self.base**self.k)

    def __eq__(self, other):
        if isinstance(other, _PowerRational):
            return self.as_fraction() == other.as_fraction()
        try:
            return self.as_fraction() == _frac(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.as_fraction())

    def __lt__(self, other):
        return self.as_fraction() < _to_frac(other)

    def __le__(self, other):
        return self.as_fraction() <= _to_frac(other)

    def __gt__(self, other):
        return self.as_fraction() > _to_frac(other)

    def __ge__(self, other):
        return self.as_fraction() >= _to_frac(other)

    def __neg__(self):
        return type(self)(-self.m, self.k)

    def __str__(self):
        if self.k == 0:
            return str(self.m)
        return f"{self.m}/{self.base ** self.k}"

    def __float__(self):
        return self.m / self.base**self.k


def _to_frac(x) -> Fraction:
    if isinstance(x, _PowerRational):
        return x.as_fraction()
    return _frac(x)


class TriadicRational(_PowerRational):
    """m / 3^k in lowest terms (m may be negative for the [-1, 1] extension)."""

    base = 3


class DyadicRational(_PowerRational):
    """m / 2^k in lowest terms."""

    base = 2


# --------------------------------------------------------------------------
# classical


def _check_unit(x) -> Fraction:
    x = _frac(x)
    if not 0 <= x <= 1:
        raise ValueError(f"{x} is outside [0, 1]")
    return x


def minkowski_q(x) -> DyadicRational:
    """Denjoy's alternating sum over the regular continued fraction digits."""
    if isinstance(x, RcfExpansion):
        digits = x.terms
    else:
        digits = rcf_expand(_check_unit(x)).terms
    if not digits:
        return DyadicRational(0, 0)
    total = sum(digits)
    m = 0
    s = 0
    sgn = 1
    # sum of 2 * (-1)^(k+1) / 2^(a_1+...+a_k), scaled by 2^total
    for a in digits:
        s += a
        m += sgn * (1 << (total - s + 1))
        sgn = -sgn
    return DyadicRational(m, total)


def minkowski_q_inverse(y) -> Fraction:
    """Exact inverse on dyadic rationals, by following the Farey conjugacy."""
    y = DyadicRational.from_fraction(_check_unit(_to_frac(y))).as_fraction()
    # ? F ?^-1 is the tent map; unwind it
    path = []
    while y not in (0, 1):
        if y <= Fraction(1, 2):
            path.append(0)
            y = 2 * y
        else:
            path.append(1)
            y = 2 - 2 * y
    x = y
    for b in reversed(path):
        x = x / (1 + x) if b == 0 else 1 / (1 + x)
    return x


# --------------------------------------------------------------------------
# even


def _ecf_terms(x) -> tuple[tuple[int, int], ...]:
    if isinstance(x, EcfExpansion):
        return x.terms
    x = _frac(x)
    if not -1 <= x <= 1:
        raise ValueError(f"{x} is outside [-1, 1]")
    return ecf_expand(x).terms


def q_e(x) -> TriadicRational:
    """Even question mark function as an exact triadic rational.

    Accepts a rational in [-1, 1] or an ECF expansion (prefixes included).
    The value is odd in x.
    """
    terms = _ecf_terms(x)
    if not terms:
        return TriadicRational(0, 0)
    total = sum(a // 2 for _, a in terms)
    m = 0
    prod = 1
    k = 0
    for e, a in terms:
        prod *= -e
        k += a // 2
        w = 1 if a == 1 else 2
        m -= w * prod * 3 ** (total - k)
    return TriadicRational(m, total)


def q_e_rank(x, k: int) -> int:
    """Rank of ``x`` inside the level set Y_k (the counting definition)."""
    from .farey import ecf_level, ecf_level_contains

    x = _check_unit(x)
    if not ecf_level_contains(x, k):
        raise ValueError(f"{x} is not in Y_{k}")
    level = ecf_level(k)
    import bisect

    return bisect.bisect_left(level.ordered, x)


def _fbar_e_branch(y: Fraction) -> int:
    if y <= Fraction(1, 3):
        return 0
    if y <= Fraction(2, 3):
        return 1
    return 2


def q_e_inverse(y) -> Fraction:
    """The rational x with q_e(x) = y, for triadic y in [-1, 1]."""
    y = _to_frac(y)
    TriadicRational.from_fraction(y)
    if not -1 <= y <= 1:
        raise ValueError(f"{y} is outside [-1, 1]")
    if y < 0:
        return -q_e_inverse(-y)
    path = []
    while y not in (0, 1):
        b = _fbar_e_branch(y)
        path.append(b)
        y = (3 * y, 2 - 3 * y, 3 * y - 2)[b]
    x = y
    for b in reversed(path):
        if b == 0:
            x = x / (1 + 2 * x)
        elif b == 1:
            x = 1 / (2 + x)
        else:
            x = 1 / (2 - x)
    return x


# --------------------------------------------------------------------------
# odd


def q_o(x) -> CubicNumber:
    """Odd question mark function, exact in Q(lambda)."""
    if isinstance(x, OcfExpansion):
        terms = x.terms
    else:
        terms = ocf_expand(_check_unit(x)).terms
    # integer coefficients of lambda^-(S_k - 1), collected before reduction
    coeff: dict[int, int] = {}
    prod = 1
    s = 0
    for e, a in terms:
        prod *= -e
        s += a
        coeff[s - 1] = coeff.get(s - 1, 0) - prod
    c0 = c1 = c2 = Fraction(0)
    for n, c in coeff.items():
        if c:
            p = _lambda_power(-n)
            c0 += c * p.c0
            c1 += c * p.c1
            c2 += c * p.c2
    return CubicNumber(c0, c1, c2)


def q_o_decimal(x, digits: int) -> DecimalApprox:
    return eval_decimal(q_o(x), digits)


def q_o_inverse(y, digits: int) -> Interval:
    """Rational interval of width < 10^-digits containing Q_O^{-1}(y).

    ``y`` may be a rational or an element of Q(lambda).  Comparisons are
    exact, so when a bisection point hits y the interval collapses to it.
    """
    y = y if isinstance(y, CubicNumber) else CubicNumber(_to_frac(y))
    if y < 0 or y > 1:
        raise ValueError("target outside [0, 1]")
    lo, hi = Fraction(0), Fraction(1)
    for end in (lo, hi):
        if q_o(end) == y:
            return Interval(end, end)
    unit = Fraction(1, 10**digits)
    while hi - lo >= unit:
        # the simplest rational in the bracket catches exact preimages early
        for mid in (_simplest_between(lo, hi), (lo + hi) / 2):
            if not lo < mid < hi:
                continue
            s = (q_o(mid) - y).sign()
            if s == 0:
                return Interval(mid, mid)
            if s < 0:
                lo = mid
            else:
                hi = mid
    return Interval(lo, hi)


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Smallest-denominator rational in the open interval (lo, hi), lo >= 0."""
    fl = lo.numerator // lo.denominator
    if fl + 1 < hi:
        return Fraction(fl + 1)
    if fl == lo:
        # lo is an integer; hi - lo <= 1
        if hi - fl == 0:
            return lo
        n = (1 / (hi - fl)).__floor__() + 1
        return fl + Fraction(1, n)
    # both in (fl, fl + 1]: recurse on reciprocals
    inner = _simplest_between(1 / (hi - fl), 1 / (lo - fl))
    return fl + 1 / inner


Number = Union[TriadicRational, DyadicRational, CubicNumber]
