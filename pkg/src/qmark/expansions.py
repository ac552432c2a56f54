"""Regular, even and odd continued fraction expansions of rationals.

Signed expansions are stored as tuples of ``(e, a)`` pairs meaning

    e_1 / (a_1 + e_2 / (a_2 + e_3 / ...))

and regular ones as tuples of positive integers.  A ``prefix`` flag marks
truncations (periodic patterns, tail replacements) that are not canonical
finite expansions; only the final-sign convention is waived for those.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .exact import THETA, QuadNumber

__all__ = [
    "InvalidExpansion",
    "EcfExpansion",
    "OcfExpansion",
    "RcfExpansion",
    "ConvergentList",
    "Expansion",
    "ecf_expand",
    "ocf_expand",
    "rcf_expand",
    "expand",
    "cf_value",
    "convergents",
    "periodic_ecf",
    "ecf_tail_equivalence",
    "digit_sum",
    "continuant_bound_holds",
    "expansion_to_json",
    "expansion_from_json",
]


class InvalidExpansion(ValueError):
    """An expansion violates one of its structural rules."""


def _signed_terms(terms) -> tuple[tuple[int, int], ...]:
    out = []
    for t in terms:
        e, a = t
        out.append((int(e), int(a)))
    return tuple(out)


@dataclass(frozen=True)
class EcfExpansion:
    """Even continued fraction: a_i even, except a final a_n = 1."""

    terms: tuple[tuple[int, int], ...] = ()
    prefix: bool = False
    kind: str = field(default="ecf", init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "terms", _signed_terms(self.terms))
        _check_ecf(self.terms, self.prefix)

    def __len__(self):
        return len(self.terms)


@dataclass(frozen=True)
class OcfExpansion:
    """Odd continued fraction: a_i odd, e_1 = +1, a_i + e_{i+1} > 0."""

    terms: tuple[tuple[int, int], ...] = ()
    prefix: bool = False
    kind: str = field(default="ocf", init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "terms", _signed_terms(self.terms))
        _check_ocf(self.terms, self.prefix)

    def __len__(self):
        return len(self.terms)


@dataclass(frozen=True)
class RcfExpansion:
    """Regular continued fraction [a_1, a_2, ...] of a number in [0, 1]."""

    terms: tuple[int, ...] = ()
    prefix: bool = False
    kind: str = field(default="rcf", init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(int(a) for a in self.terms))
        _check_rcf(self.terms, self.prefix)

    def __len__(self):
        return len(self.terms)


Expansion = Union[EcfExpansion, OcfExpansion, RcfExpansion]


def _check_signs(terms):
    for i, (e, a) in enumerate(terms, 1):
        if e not in (1, -1):
            raise InvalidExpansion(f"sign e_{i}={e} is not +1 or -1")
        if a < 1:
            raise InvalidExpansion(f"partial quotient a_{i}={a} is not positive")


def _check_ecf(terms, prefix):
    _check_signs(terms)
    n = len(terms)
    for i, (e, a) in enumerate(terms, 1):
        if a % 2 and not (a == 1 and i == n):
            raise InvalidExpansion(f"a_{i}={a} must be even (only a final digit may be 1)")
    if prefix or n == 0:
        return
    e_n, a_n = terms[-1]
    # e_1 carries the sign of the number, so -1 = [(-1, 1)] is allowed
    if n >= 2 and a_n == 1 and e_n != 1:
        raise InvalidExpansion(f"final a_{n}=1 requires e_{n}=+1")


def _check_ocf(terms, prefix):
    _check_signs(terms)
    n = len(terms)
    if n and terms[0][0] != 1:
        raise InvalidExpansion("e_1 must be +1")
    for i, (e, a) in enumerate(terms, 1):
        if a % 2 == 0:
            raise InvalidExpansion(f"a_{i}={a} must be odd")
        if i < n and a + terms[i][0] <= 0:
            raise InvalidExpansion(f"a_{i} + e_{i + 1} must be positive")
    if prefix or n == 0:
        return
    e_n, a_n = terms[-1]
    if a_n == 1 and e_n != 1:
        raise InvalidExpansion(f"final a_{n}=1 requires e_{n}=+1")


def _check_rcf(terms, prefix):
    for i, a in enumerate(terms, 1):
        if a < 1:
            raise InvalidExpansion(f"a_{i}={a} is not positive")
    if prefix or len(terms) <= 1:
        return
    if terms[-1] < 2:
        raise InvalidExpansion("final partial quotient of a canonical expansion must be >= 2")


# --------------------------------------------------------------------------
# digit extraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, str):
        from .exact import parse_rational

        return parse_rational(x)
    return Fraction(x)


def ecf_expand(x) -> EcfExpansion:
    """Finite ECF expansion of a rational in [-1, 1].

    The leading sign is the sign of ``x``.  When 1/|t| is an odd integer the
    smaller even digit is taken, so the expansion ends in (+1, 1).
    """
    x = _as_fraction(x)
    if abs(x) > 1:
        raise ValueError(f"{x} is outside [-1, 1]")
    terms = []
    sign = 1 if x >= 0 else -1
    t = abs(x)
    while t:
        y = 1 / t
        if y.denominator == 1:
            n = y.numerator
            if n % 2 == 0 or n == 1:
                terms.append((sign, n))
            else:
                terms.append((sign, n - 1))
                terms.append((1, 1))
            break
        a = 2 * int((y / 2 + Fraction(1, 2)).__floor__())
        r = y - a
        terms.append((sign, a))
        sign = 1 if r > 0 else -1
        t = abs(r)
    return EcfExpansion(tuple(terms))


def ocf_expand(x) -> OcfExpansion:
    """Finite OCF expansion of a rational in [0, 1]."""
    x = _as_fraction(x)
    if not 0 <= x <= 1:
        raise ValueError(f"{x} is outside [0, 1]")
    terms = []
    sign = 1
    t = x
    while t:
        y = 1 / t
        if y.denominator == 1:
            n = y.numerator
            if n % 2:
                terms.append((sign, n))
            else:
                terms.append((sign, n - 1))
                terms.append((1, 1))
            break
        a = 2 * (y // 2) + 1  # nearest odd integer to a non-integer y
        r = y - a
        terms.append((sign, int(a)))
        sign = 1 if r > 0 else -1
        t = abs(r)
    return OcfExpansion(tuple(terms))


def rcf_expand(x) -> RcfExpansion:
    """Canonical finite regular continued fraction of a rational in [0, 1]."""
    x = _as_fraction(x)
    if not 0 <= x <= 1:
        raise ValueError(f"{x} is outside [0, 1]")
    terms = []
    p, q = x.numerator, x.denominator
    while p:
        a, r = divmod(q, p)
        terms.append(a)
        p, q = r, p
    return RcfExpansion(tuple(terms))


def expand(kind: str, x) -> Expansion:
    return {"ecf": ecf_expand, "ocf": ocf_expand, "rcf": rcf_expand}[kind](x)


# --------------------------------------------------------------------------
# evaluation and convergents


def cf_value(e: Expansion) -> Fraction:
    """Exact value, evaluated from the tail upwards."""
    v = Fraction(0)
    if isinstance(e, RcfExpansion):
        for a in reversed(e.terms):
            v = 1 / (a + v)
        return v
    for s, a in reversed(e.terms):
        v = s / (a + v)
    return v


def digit_sum(e: Expansion) -> int:
    if isinstance(e, RcfExpansion):
        return sum(e.terms)
    return sum(a for _, a in e.terms)


@dataclass(frozen=True)
class ConvergentList:
    """Pairs (p_k, q_k), k = 1..n, with the seed (p_0, q_0) = (0, 1)."""

    entries: tuple[tuple[int, int], ...]
    seed: tuple[int, int] = (0, 1)

    def fractions(self) -> list[Fraction]:
        return [Fraction(p, q) for p, q in self.entries]

    @property
    def denominators(self) -> list[int]:
        return [q for _, q in self.entries]

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]


def _pairs(e: Expansion) -> list[tuple[int, int]]:
    if isinstance(e, RcfExpansion):
        return [(1, a) for a in e.terms]
    return list(e.terms)


def convergents(e: Expansion) -> ConvergentList:
    """All prefix values via p_k = a_k p_{k-1} + e_k p_{k-2} (same for q).

    For ECF input the continuant bound q_n < (1+sqrt 2)^{(a_1+...+a_n)/2} is
    verified exactly for every prefix.
    """
    p_prev, p = 1, 0
    q_prev, q = 0, 1
    out = []
    for s, a in _pairs(e):
        p_prev, p = p, a * p + s * p_prev
        q_prev, q = q, a * q + s * q_prev
        out.append((p, q))
    if isinstance(e, EcfExpansion):
        total = 0
        for (s, a), (_, qk) in zip(e.terms, out):
            total += a
            if not continuant_bound_holds(qk, total):
                raise ArithmeticError(f"continuant bound violated: q={qk}, digit sum {total}")
    return ConvergentList(tuple(out))


_theta_powers: dict[int, tuple[int, int]] = {0: (1, 0)}


def _theta_power(n: int) -> tuple[int, int]:
    """(A, B) with (1 + sqrt 2)^n = A + B sqrt 2."""
    if n not in _theta_powers:
        top = max(k for k in _theta_powers if k < n)
        a, b = _theta_powers[top]
        for k in range(top + 1, n + 1):
            a, b = a + 2 * b, a + b
            _theta_powers[k] = (a, b)
    return _theta_powers[n]


def continuant_bound_holds(q: int, digit_total: int) -> bool:
    """Exact test of q < theta^(digit_total / 2), done as q^2 < theta^digit_total."""
    a, b = _theta_power(digit_total)
    lhs = q * q - a  # compare with b*sqrt(2), b >= 0
    return lhs < 0 or lhs * lhs < 2 * b * b


def theta_power(n: int) -> QuadNumber:
    a, b = _theta_power(n)
    return QuadNumber(a, b, 2)


assert THETA == theta_power(1)


# --------------------------------------------------------------------------
# non-canonical prefixes


def periodic_ecf(pattern: Sequence[tuple[int, int]], repetitions: int) -> EcfExpansion:
    """``pattern`` repeated; the result is a prefix, not a canonical expansion."""
    pattern = _signed_terms(pattern)
    if not pattern:
        raise ValueError("empty pattern")
    if repetitions < 1:
        raise ValueError("repetitions must be positive")
    for e, a in pattern:
        if a % 2:
            raise InvalidExpansion(f"pattern digit {a} is odd")
    return EcfExpansion(pattern * repetitions, prefix=True)


def ecf_tail_equivalence(e: EcfExpansion, depth: int) -> EcfExpansion:
    """Replace a final (1, 1) by (1, 2) followed by ``depth`` copies of (-1, 2)."""
    if not e.terms or e.terms[-1] != (1, 1):
        raise InvalidExpansion("expansion must end in (1, 1)")
    if depth < 0:
        raise ValueError("depth must be non-negative")
    terms = e.terms[:-1] + ((1, 2),) + ((-1, 2),) * depth
    return EcfExpansion(terms, prefix=True)


# --------------------------------------------------------------------------
# JSON


def expansion_to_json(e: Expansion) -> dict:
    if isinstance(e, RcfExpansion):
        return {"kind": "rcf", "terms": list(e.terms)}
    return {"kind": e.kind, "terms": [[s, a] for s, a in e.terms]}


def expansion_from_json(obj: Union[dict, str]) -> Expansion:
    if isinstance(obj, str):
        obj = json.loads(obj)
    kind = obj["kind"]
    terms = obj["terms"]
    prefix = bool(obj.get("prefix", False))
    if kind == "rcf":
        return RcfExpansion(tuple(terms), prefix=prefix)
    if kind == "ecf":
        return EcfExpansion(tuple(map(tuple, terms)), prefix=prefix)
    if kind == "ocf":
        return OcfExpansion(tuple(map(tuple, terms)), prefix=prefix)
    raise ValueError(f"unknown expansion kind {kind!r}")


def iter_prefixes(e: Expansion) -> Iterable[Expansion]:
    """Each proper and full prefix as a (non-canonical) expansion."""
    cls = type(e)
    for k in range(1, len(e.terms) + 1):
        yield cls(e.terms[:k], prefix=True)
