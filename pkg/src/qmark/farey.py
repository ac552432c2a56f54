"""Farey-type level sets, the even and odd Stern-Brocot arrays, and Stern sequences."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .exact import QuadNumber, format_rational
from .expansions import EcfExpansion, OcfExpansion, cf_value, ecf_expand, ocf_expand

__all__ = [
    "EcfLevel",
    "OcfLevel",
    "SternPolynomial",
    "GenfunReport",
    "ecf_level",
    "ecf_level_refine",
    "ecf_level_enumerate",
    "ecf_level_contains",
    "ocf_level",
    "ocf_level_contains",
    "ocf_moves",
    "stern_beta",
    "stern_sequence",
    "stern_poly",
    "genfun_product_check",
    "extended_array_row",
    "extended_array_alignment",
    "level_to_csv",
    "rows_to_json",
    "fibonacci",
]


# --------------------------------------------------------------------------
# even levels


@dataclass(frozen=True)
class EcfLevel:
    """Ordered Y_k with a flag per element marking membership in Z_k."""

    k: int
    ordered: tuple[Fraction, ...]
    z_flags: tuple[bool, ...]

    @property
    def z_set(self) -> tuple[Fraction, ...]:
        return tuple(x for x, z in zip(self.ordered, self.z_flags) if z)

    def __len__(self):
        return len(self.ordered)

    def __iter__(self):
        return iter(self.ordered)

    def index(self, x) -> int:
        import bisect

        i = bisect.bisect_left(self.ordered, x)
        if i == len(self.ordered) or self.ordered[i] != x:
            raise ValueError(f"{x} not in Y_{self.k}")
        return i


def _check_ecf_counts(level: EcfLevel) -> None:
    k = level.k
    if len(level.ordered) != 3**k + 1:
        raise AssertionError(f"|Y_{k}| = {len(level.ordered)}, expected {3**k + 1}")
    if sum(level.z_flags) != (3**k + 1) // 2:
        raise AssertionError(f"|Z_{k}| = {sum(level.z_flags)}, expected {(3**k + 1) // 2}")


def ecf_level_refine(level: EcfLevel) -> EcfLevel:
    """Level k+1 by inserting a double and a single mediant in every gap.

    In each adjacent pair exactly one end lies in Z_k; that end p/q gets
    weight two, so the gap p/q, r/s becomes p/q, (2p+r)/(2q+s), (p+r)/(q+s), r/s
    (mirrored when the Z end is on the right).  The single mediant joins Z.
    """
    xs, zs = level.ordered, level.z_flags
    out = [xs[0]]
    flags = [zs[0]]
    for i in range(len(xs) - 1):
        a, b = xs[i], xs[i + 1]
        za, zb = zs[i], zs[i + 1]
        if za == zb:
            raise AssertionError(f"adjacent {a}, {b} share the same Z flag")
        p, q = a.numerator, a.denominator
        r, s = b.numerator, b.denominator
        single = Fraction(p + r, q + s)
        if za:
            double = Fraction(2 * p + r, 2 * q + s)
            out += [double, single, b]
            flags += [False, True, zb]
        else:
            double = Fraction(p + 2 * r, q + 2 * s)
            out += [single, double, b]
            flags += [True, False, zb]
    new = EcfLevel(level.k + 1, tuple(out), tuple(flags))
    _check_ecf_counts(new)
    if sum(new.z_flags) != 3 * sum(level.z_flags) - 1:
        raise AssertionError("Z_{k+1} != 3 Z_k - 1")
    return new


@lru_cache(maxsize=16)
def ecf_level(k: int) -> EcfLevel:
    """Ordered Y_k with Z_k flags, by mediant refinement from Y_0 = {0, 1}."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        level = EcfLevel(0, (Fraction(0), Fraction(1)), (True, False))
        _check_ecf_counts(level)
        return level
    return ecf_level_refine(ecf_level(k - 1))


def _ecf_strings(budget: int, first: bool) -> Iterator[tuple[tuple[int, int], ...]]:
    """Even-digit strings with digit sum <= budget, optionally closed by (1, 1)."""
    yield ()
    if budget >= 1 and not first:
        yield ((1, 1),)
    signs = (1,) if first else (1, -1)
    for a in range(2, budget + 1, 2):
        for e in signs:
            for tail in _ecf_strings(budget - a, False):
                yield ((e, a),) + tail


def ecf_level_enumerate(k: int) -> EcfLevel:
    """Y_k from the digit-sum description, independent of the mediant rule."""
    budget = 2 * k + 1
    vals: dict[Fraction, bool] = {Fraction(0): True, Fraction(1): False}
    for terms in _ecf_strings(budget, True):
        if not terms:
            continue
        x = cf_value(EcfExpansion(terms))
        vals[x] = terms[-1][1] != 1
    ordered = tuple(sorted(vals))
    return EcfLevel(k, ordered, tuple(vals[x] for x in ordered))


def ecf_level_contains(x, k: int) -> bool:
    x = Fraction(x)
    if not 0 <= x <= 1:
        return False
    return sum(a for _, a in ecf_expand(x).terms) <= 2 * k + 1


# --------------------------------------------------------------------------
# odd levels


@dataclass(frozen=True)
class OcfLevel:
    """Ordered Y_n of the odd system with flags for X_n = Y_n minus Y_{n-1}."""

    n: int
    ordered: tuple[Fraction, ...]
    new_flags: tuple[bool, ...]

    @property
    def x_set(self) -> tuple[Fraction, ...]:
        return tuple(x for x, f in zip(self.ordered, self.new_flags) if f)

    @property
    def max_denominator(self) -> int:
        return max(x.denominator for x in self.ordered)

    def __len__(self):
        return len(self.ordered)

    def __iter__(self):
        return iter(self.ordered)


def _ocf_strings(budget: int, prev_a: int | None) -> Iterator[tuple[tuple[int, int], ...]]:
    yield ()
    signs = (1,) if prev_a in (None, 1) else (1, -1)
    for a in range(1, budget + 1, 2):
        for e in signs:
            for tail in _ocf_strings(budget - a, a):
                if a == 1 and e == -1 and not tail:
                    continue  # final (-1, 1) is the non-canonical form
                yield ((e, a),) + tail


@lru_cache(maxsize=32)
def _ocf_values(n: int) -> frozenset:
    vals = set()
    for terms in _ocf_strings(n + 1, None):
        vals.add(cf_value(OcfExpansion(terms)) if terms else Fraction(0))
    return frozenset(vals)


@lru_cache(maxsize=32)
def ocf_level(n: int) -> OcfLevel:
    """Ordered Y_n: rationals whose odd expansion has digit sum <= n + 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    cur = _ocf_values(n)
    prev = _ocf_values(n - 1) if n > 0 else frozenset()
    ordered = tuple(sorted(cur))
    return OcfLevel(n, ordered, tuple(x not in prev for x in ordered))


def ocf_level_contains(x, n: int) -> bool:
    x = Fraction(x)
    if not 0 <= x <= 1:
        return False
    return sum(a for _, a in ocf_expand(x).terms) <= n + 1


def ocf_moves(x: OcfExpansion) -> list[tuple[int, OcfExpansion]]:
    """Children of ``x`` in the odd Farey tree as (move type, expansion)."""
    if not isinstance(x, OcfExpansion):
        raise TypeError("expected an OcfExpansion")
    terms = x.terms
    if not terms:
        raise ValueError("0 has no children in the tree")
    out = [(1, OcfExpansion(terms + ((1, 1),)))]
    e_j, a_j = terms[-1]
    if a_j > 1:
        out.append((2, OcfExpansion(terms + ((-1, 1), (1, 1)))))
    elif len(terms) >= 2:
        e_prev, a_prev = terms[-2]
        out.append((3, OcfExpansion(terms[:-2] + ((e_prev, a_prev + 2),))))
    return out


def fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


# --------------------------------------------------------------------------
# Stern sequence and polynomials


def _w(n: int) -> int:
    return 2 if n % 2 == 0 else 1


def stern_sequence(count: int) -> list[int]:
    """beta_0, ..., beta_{count-1}."""
    seq = [0, 1][:count]
    for m in range(2, count):
        n, r = divmod(m, 3)
        if r == 0:
            seq.append(seq[n])
        elif r == 1:
            seq.append(_w(n) * seq[n] + seq[n + 1])
        else:
            seq.append(seq[n] + _w(n + 1) * seq[n + 1])
    return seq


@lru_cache(maxsize=None)
def stern_beta(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n < 2:
        return n
    q, r = divmod(n, 3)
    if r == 0:
        return stern_beta(q)
    if r == 1:
        return _w(q) * stern_beta(q) + stern_beta(q + 1)
    return stern_beta(q) + _w(q + 1) * stern_beta(q + 1)


@dataclass(frozen=True)
class SternPolynomial:
    """0/1 polynomial stored by its exponent set (ascending)."""

    exponents: tuple[int, ...]

    @property
    def coeffs(self) -> list[int]:
        if not self.exponents:
            return []
        out = [0] * (self.exponents[-1] + 1)
        for e in self.exponents:
            out[e] += 1
        return out

    def __call__(self, x):
        return sum(x**e for e in self.exponents)

    def __str__(self):
        if not self.exponents:
            return "0"
        parts = []
        for e in self.exponents:
            parts.append("1" if e == 0 else "x" if e == 1 else f"x^{e}")
        return " + ".join(parts)


def _poly_add(*polys: tuple[int, ...]) -> tuple[int, ...]:
    merged = sorted(e for p in polys for e in p)
    if len(set(merged)) != len(merged):
        raise AssertionError("Stern polynomial coefficient exceeds 1")
    return tuple(merged)


def _shift(p: tuple[int, ...], s: int) -> tuple[int, ...]:
    return tuple(e + s for e in p)


@lru_cache(maxsize=None)
def _stern_exps(n: int) -> tuple[int, ...]:
    if n == 0:
        return ()
    if n in (1, 2):
        return (0,)
    q, r = divmod(n, 3)
    lo = tuple(4 * e for e in _stern_exps(q))
    hi = tuple(4 * e for e in _stern_exps(q + 1))
    if r == 0:
        return lo
    if r == 1:
        if q % 2 == 0:
            return _poly_add(lo, _shift(lo, 1), _shift(hi, 3))
        return _poly_add(lo, _shift(hi, 2))
    if q % 2 == 0:
        return _poly_add(lo, _shift(hi, 2))
    return _poly_add(lo, _shift(hi, 2), _shift(hi, 1))


def stern_poly(n: int) -> SternPolynomial:
    """beta(n, x); checks beta(n, 1) against the integer sequence."""
    if n < 0:
        raise ValueError("n must be non-negative")
    p = SternPolynomial(_stern_exps(n))
    if p(1) != stern_beta(n):
        raise AssertionError(f"beta({n}, 1) != beta_{n}")
    return p


# --------------------------------------------------------------------------
# generating function product in Q(sqrt 2)


@dataclass(frozen=True)
class GenfunReport:
    factors: int
    normalization: str
    stable_range: tuple[int, int]
    checked: int
    first_mismatch: tuple[int, str, str] | None

    @property
    def passed(self) -> bool:
        return self.first_mismatch is None

    def to_json(self) -> dict:
        return {
            "factors": self.factors,
            "normalization": self.normalization,
            "stable_range": list(self.stable_range),
            "checked": self.checked,
            "first_mismatch": list(self.first_mismatch) if self.first_mismatch else None,
            "pass": self.passed,
        }


def _product_coefficients(factors: int) -> dict[int, QuadNumber]:
    """Laurent coefficients of prod_{n < factors} (x^-2t + r x^-t + 1 + r x^t + x^2t), t = 3^n, r = sqrt 2."""
    poly: dict[int, tuple[int, int]] = {0: (1, 0)}  # exponent -> (a, b) meaning a + b sqrt 2
    for n in range(factors):
        t = 3**n
        factor = {-2 * t: (1, 0), -t: (0, 1), 0: (1, 0), t: (0, 1), 2 * t: (1, 0)}
        out: dict[int, tuple[int, int]] = {}
        for i, (a, b) in poly.items():
            for j, (c, d) in factor.items():
                x0, x1 = out.get(i + j, (0, 0))
                out[i + j] = (x0 + a * c + 2 * b * d, x1 + a * d + b * c)
        poly = out
    return {k: QuadNumber(a, b, 2) for k, (a, b) in poly.items()}


def genfun_product_check(factors: int, normalization: str = "stated") -> GenfunReport:
    """Compare the truncated product with scaled Stern numbers.

    With H(x) = P_N(x) H(x^(3^N)) and H starting at x^1, the coefficient of
    x^m in H equals the coefficient of x^(m - 3^N) in P_N for 1 <= m <= 3^N;
    those are the truncation-stable indices.

    ``normalization`` selects the target coefficients:
    ``"stated"``: sqrt2 * beta_m for odd m and beta_m for even m;
    ``"corrected"``: beta_m for odd m and sqrt2 * beta_m for even m, which
    corresponds to the left eigenvector (1, sqrt 2) of the recursion matrix.
    """
    if normalization not in ("stated", "corrected"):
        raise ValueError("normalization must be 'stated' or 'corrected'")
    if factors <= 0:
        return GenfunReport(max(factors, 0), normalization, (1, 0), 0, None)
    coeffs = _product_coefficients(factors)
    top = 3**factors
    zero = QuadNumber(0, 0, 2)
    root2_on_odd = normalization == "stated"
    for m in range(1, top + 1):
        b = stern_beta(m)
        scaled = (m % 2 == 1) == root2_on_odd
        want = QuadNumber(0, b, 2) if scaled else QuadNumber(b, 0, 2)
        got = coeffs.get(m - top, zero)
        if got != want:
            return GenfunReport(factors, normalization, (1, top), m - 1, (m, str(got), str(want)))
    return GenfunReport(factors, normalization, (1, top), top, None)


# --------------------------------------------------------------------------
# the array on [-1, 1)


def extended_array_row(k: int) -> list[Fraction]:
    """The 2*3^k rationals of [-1, 1) with signed even digit sum <= 2k + 1."""
    if k < 0:
        raise ValueError("k must be non-negative")
    ys = ecf_level(k).ordered
    negative = [-y for y in reversed(ys[1:])]
    return negative + list(ys[:-1])


def extended_array_alignment(max_row: int = 5) -> dict:
    """Locate where each row's denominator stream sits inside beta_n.

    Returns the offsets found by brute-force matching; the expected pattern
    is offset(k) = 3^k.
    """
    seq = stern_sequence(2 * 3 ** (max_row + 1) + 2)
    offsets = {}
    for k in range(max_row + 1):
        dens = [x.denominator for x in extended_array_row(k)]
        hits = [
            s
            for s in range(len(seq) - len(dens) + 1)
            if seq[s : s + len(dens)] == dens
        ]
        offsets[k] = hits
    return offsets


# --------------------------------------------------------------------------
# export


def level_to_csv(level, q_func=None) -> str:
    """CSV with index, numerator, denominator, stratum flag and optional exact Q value."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    flag_name = "in_Z" if isinstance(level, EcfLevel) else "in_X"
    flags = level.z_flags if isinstance(level, EcfLevel) else level.new_flags
    header = ["index", "numerator", "denominator", flag_name]
    if q_func is not None:
        header.append("q_value")
    writer.writerow(header)
    for i, (x, f) in enumerate(zip(level.ordered, flags)):
        row = [i, x.numerator, x.denominator, int(f)]
        if q_func is not None:
            row.append(str(q_func(x)))
        writer.writerow(row)
    return buf.getvalue()


def rows_to_json(rows: Sequence[Sequence[Fraction]]) -> str:
    return json.dumps([[format_rational(x) for x in row] for row in rows])
