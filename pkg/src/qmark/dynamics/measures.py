"""Densities built from terms coef / (c + d x) and branch-preimage mass checks.

Masses of intervals are computed from the antiderivative (coef / d) log|c + d x|
with certified interval logarithms.  For maps with countably many inverse
branches x = sigma / (n0 + h j + s t), j >= 0, the first few members are
summed directly and the rest in closed form through log-gamma (mpmath).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from ..exact import (
    GOLDEN,
    DecimalApprox,
    Interval,
    QuadNumber,
    decimal_from_interval,
    enclose,
    log_interval,
)

__all__ = [
    "Term",
    "Piece",
    "MeasureSpec",
    "MEASURES",
    "get_measure",
    "measure_mass",
    "InverseFamily",
    "INVERSE_BRANCHES",
    "invariance_check",
    "random_intervals",
    "INVARIANT_PAIRS",
]

BITS = 96
G = GOLDEN
G_SQ = G * G


@dataclass(frozen=True)
class Term:
    """coef / (c + d x)."""

    coef: object
    c: object
    d: object

    def at(self, x):
        return self.c + self.d * x


@dataclass(frozen=True)
class Piece:
    lo: Fraction
    hi: Fraction
    terms: tuple[Term, ...]


@dataclass(frozen=True)
class MeasureSpec:
    measure_id: str
    pieces: tuple[Piece, ...]
    singular: tuple[Fraction, ...] = ()
    description: str = ""

    @property
    def support(self) -> tuple[Fraction, Fraction]:
        return self.pieces[0].lo, self.pieces[-1].hi

    def density(self, x) -> float:
        for p in self.pieces:
            if p.lo <= x <= p.hi:
                return sum(float(t.coef) / float(t.at(x)) for t in p.terms)
        raise ValueError("outside support")


def _t(coef, c, d) -> Term:
    return Term(coef, c, d)


F0, F1 = Fraction(0), Fraction(1)
HALF_G = 1 / (G + 1)

MEASURES: dict[str, MeasureSpec] = {
    "nu_E": MeasureSpec(
        "nu_E", (Piece(F0, F1, (_t(1, 0, 1), _t(1, 1, -1))),), (F0, F1), "dx / (x (1 - x))"
    ),
    "mu_E": MeasureSpec(
        "mu_E", (Piece(F0, F1, (_t(1, 1, 1), _t(1, 1, -1))),), (F1,), "1/(1+x) + 1/(1-x)"
    ),
    "mu_tilde_E": MeasureSpec("mu_tilde_E", (Piece(-F1, F1, (_t(1, 1, 1),)),), (-F1,), "dx/(1+x)"),
    "nu_O": MeasureSpec(
        "nu_O", (Piece(F0, F1, (_t(1, 0, 1), _t(1, G + 1, -1))),), (F0,), "1/x + 1/(G+1-x)"
    ),
    "nu_O_scaled": MeasureSpec(
        "nu_O_scaled",
        (Piece(F0, F1, (_t(HALF_G, 0, 1), _t(HALF_G, G + 1, -1))),),
        (F0,),
        "dx / (x (G+1-x))",
    ),
    "mu_O": MeasureSpec(
        "mu_O", (Piece(F0, F1, (_t(1, G - 1, 1), _t(1, G + 1, -1))),), (), "1/(G-1+x) + 1/(G+1-x)"
    ),
    "mu_tilde_O": MeasureSpec(
        "mu_tilde_O",
        (
            Piece(-F1, F0, (_t(1 / G_SQ, G + 1, 1),)),
            Piece(F0, F1, (_t(1 / G_SQ, G - 1, 1),)),
        ),
        (),
        "G^-2 dy/(y+G+1) on [-1,0], G^-2 dy/(y+G-1) on (0,1)",
    ),
    "gauss": MeasureSpec("gauss", (Piece(F0, F1, (_t(1, 1, 1),)),), (), "dx/(1+x)"),
    "lebesgue": MeasureSpec("lebesgue", (Piece(F0, F1, ()),), (), "dx"),
}


def get_measure(measure_id: str) -> MeasureSpec:
    if measure_id not in MEASURES:
        raise KeyError(f"unknown measure {measure_id!r}; known: {', '.join(MEASURES)}")
    return MEASURES[measure_id]


def _log_abs(z, bits: int) -> Interval:
    iv = enclose(z, bits + 8) if isinstance(z, QuadNumber) else Interval.point(Fraction(z))
    if iv.hi < 0:
        iv = -iv
    return log_interval(iv, bits)


def _coef_over_d(t: Term, bits: int) -> Interval:
    q = t.coef / t.d if isinstance(t.coef, QuadNumber) else Fraction(t.coef) / t.d
    return enclose(q, bits) if isinstance(q, QuadNumber) else Interval.point(q)


def _piece_mass(piece: Piece, lo: Fraction, hi: Fraction, bits: int) -> Interval:
    if lo == hi:
        return Interval.point(0)
    if not piece.terms:  # Lebesgue
        return Interval.point(hi - lo)
    total = Interval.point(0)
    for t in piece.terms:
        diff = _log_abs(t.at(hi), bits) - _log_abs(t.at(lo), bits)
        total = total + _coef_over_d(t, bits) * diff
    return total


def _mass_interval(spec: MeasureSpec, lo: Fraction, hi: Fraction, bits: int = BITS) -> Interval:
    if lo > hi:
        lo, hi = hi, lo
    s_lo, s_hi = spec.support
    if lo < s_lo or hi > s_hi:
        raise ValueError(f"[{lo}, {hi}] leaves the support of {spec.measure_id}")
    if lo < hi:
        for p in spec.singular:
            if lo <= p <= hi:
                raise ValueError(f"[{lo}, {hi}] touches the singularity {p} of {spec.measure_id}")
    total = Interval.point(0)
    for piece in spec.pieces:
        a, b = max(lo, piece.lo), min(hi, piece.hi)
        if a < b:
            total = total + _piece_mass(piece, a, b, bits)
    return total


def measure_mass(measure_id: str, interval, digits: int = 20) -> DecimalApprox:
    """Certified mass of [lo, hi] under the named measure."""
    lo, hi = (Fraction(v) for v in interval)
    bits = int(digits * 3.33) + 24
    iv = _mass_interval(get_measure(measure_id), lo, hi, bits)
    return decimal_from_interval(iv, digits)


# --------------------------------------------------------------------------
# inverse branches


@dataclass(frozen=True)
class InverseFamily:
    """x = sigma / (n0 + h j + s t) for t in [t_lo, t_hi) and j >= 0.

    ``count`` limits the family to finitely many members (None: infinite).
    """

    sigma: int
    n0: int
    h: int
    s: int
    t_lo: Fraction
    t_hi: Fraction
    count: Optional[int] = None

    def member(self, j: int, t: Fraction) -> Fraction:
        return Fraction(self.sigma) / (self.n0 + self.h * j + self.s * t)


@dataclass(frozen=True)
class InverseMobius:
    """A single inverse branch x = (a t + b) / (c t + d) on [t_lo, t_hi]."""

    coeffs: tuple[int, int, int, int]
    t_lo: Fraction
    t_hi: Fraction

    def at(self, t):
        a, b, c, d = self.coeffs
        return Fraction(a * t + b, 1) / (c * t + d)


INVERSE_BRANCHES: dict[str, tuple] = {
    "F_E": (
        InverseMobius((1, 0, 2, 1), F0, F1),
        InverseMobius((0, 1, 1, 2), F0, F1),
        InverseMobius((0, 1, -1, 2), F0, F1),
    ),
    "F_O": (
        InverseMobius((1, 0, 2, 1), F0, F1),
        InverseMobius((0, 1, -1, 3), F0, F1),
        InverseMobius((0, 1, 1, 1), F0, F1),
    ),
    "T_E": (InverseFamily(1, 2, 2, 1, F0, F1), InverseFamily(1, 2, 2, -1, F0, F1)),
    "Tt_E": (InverseFamily(1, 2, 2, 1, -F1, F1), InverseFamily(-1, 2, 2, 1, -F1, F1)),
    "T_O": (InverseFamily(1, 3, 2, -1, F0, F1), InverseFamily(1, 1, 2, 1, F0, F1)),
    "Tt_O": (
        InverseFamily(1, 1, 2, 1, F0, F1, count=1),
        InverseFamily(-1, 1, 2, 1, F0, F1, count=1),
        InverseFamily(1, 3, 2, 1, -F1, F1),
        InverseFamily(-1, 3, 2, 1, -F1, F1),
    ),
    "G": (InverseFamily(1, 1, 1, 1, F0, F1),),
    "F": (InverseMobius((1, 0, 1, 1), F0, F1), InverseMobius((0, 1, 1, 1), F0, F1)),
}

INVARIANT_PAIRS = (
    ("F_E", "nu_E"),
    ("T_E", "mu_E"),
    ("Tt_E", "mu_tilde_E"),
    ("F_O", "nu_O"),
    ("T_O", "mu_O"),
    ("Tt_O", "mu_tilde_O"),
)


def _clip(lo, hi, a, b):
    return max(lo, a), min(hi, b)


def _piece_for(spec: MeasureSpec, x: Fraction) -> Piece:
    for p in spec.pieces:
        if p.lo <= x <= p.hi:
            return p
    raise ValueError("outside support")


def _mp(v) -> mpmath.mpf:
    q = enclose(v, 200).mid if isinstance(v, QuadNumber) else Fraction(v)
    return mpmath.mpf(q.numerator) / q.denominator


def _family_tail(fam: InverseFamily, spec: MeasureSpec, a: Fraction, b: Fraction, J: int):
    """Sum over j >= J of preimage masses of [a, b], via log-gamma."""
    piece = _piece_for(spec, fam.member(J, (a + b) / 2))
    sgn = -fam.sigma * fam.s  # +1 when x increases with t
    total = mpmath.mpf(0)
    for t in piece.terms:
        if t.c == 0:
            raise ValueError("closed-form tail needs c != 0")
        c, d, coef = (_mp(v) for v in (t.c, t.d, t.coef))
        delta = d * fam.sigma / c
        beta_a = (fam.n0 + fam.s * mpmath.mpf(a.numerator) / a.denominator) / fam.h
        beta_b = (fam.n0 + fam.s * mpmath.mpf(b.numerator) / b.denominator) / fam.h
        alpha_a, alpha_b = beta_a + delta / fam.h, beta_b + delta / fam.h
        s = (
            -mpmath.loggamma(J + alpha_b)
            + mpmath.loggamma(J + beta_b)
            + mpmath.loggamma(J + alpha_a)
            - mpmath.loggamma(J + beta_a)
        )
        total += coef / d * s
    return sgn * total


def _preimage_mass(map_id: str, spec: MeasureSpec, lo: Fraction, hi: Fraction,
                   direct: int = 3, bits: int = BITS):
    """Return (certified interval for the direct part, mpmath tail)."""
    exact = Interval.point(0)
    tail = mpmath.mpf(0)
    for br in INVERSE_BRANCHES[map_id]:
        a, b = _clip(lo, hi, br.t_lo, br.t_hi)
        if a >= b:
            continue
        if isinstance(br, InverseMobius):
            exact = exact + _mass_interval(spec, br.at(a), br.at(b), bits)
            continue
        n = direct if br.count is None else br.count
        for j in range(n):
            exact = exact + _mass_interval(spec, br.member(j, a), br.member(j, b), bits)
        if br.count is None:
            if spec.measure_id == "lebesgue" or not spec.pieces[0].terms:
                raise ValueError("no closed-form tail for Lebesgue")
            tail += _family_tail(br, spec, a, b, n)
    return exact, tail


def _tbar_e_lebesgue(lo: Fraction, hi: Fraction) -> Fraction:
    # each k contributes two preimages of length |I| / 3^k
    return (hi - lo) * sum(Fraction(2, 3**k) for k in range(1, 60)) + (hi - lo) * Fraction(1, 3**59)


def random_intervals(spec: MeasureSpec, count: int, seed: int = 0, margin=Fraction(1, 64),
                     max_den: int = 10**6) -> list[tuple[Fraction, Fraction]]:
    """Random rational subintervals of the support kept ``margin`` away from singular points."""
    rng = random.Random(seed)
    lo, hi = spec.support
    allowed_lo = lo + margin if lo in spec.singular else lo
    allowed_hi = hi - margin if hi in spec.singular else hi
    # the extended maps live on [-1, 1)
    if spec.measure_id.startswith("mu_tilde") and hi == 1:
        allowed_hi = hi - Fraction(1, max_den)
    out = []
    for _ in range(count):
        a = allowed_lo + (allowed_hi - allowed_lo) * Fraction(rng.randrange(max_den + 1), max_den)
        b = allowed_lo + (allowed_hi - allowed_lo) * Fraction(rng.randrange(max_den + 1), max_den)
        if a > b:
            a, b = b, a
        out.append((a, b))
    return out


@dataclass
class InvarianceReport:
    map_id: str
    measure_id: str
    intervals: int
    digits: int
    max_discrepancy: float
    worst_interval: Optional[tuple[str, str]] = None
    rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.max_discrepancy < 10.0 ** (-self.digits)

    def to_json(self) -> dict:
        return {
            "check": "invariance",
            "parameters": {"map": self.map_id, "measure": self.measure_id,
                           "intervals": self.intervals, "digits": self.digits},
            "max_discrepancy": self.max_discrepancy,
            "worst_interval": list(self.worst_interval) if self.worst_interval else None,
            "pass": self.passed,
        }


def invariance_check(map_id: str, measure_id: str,
                     intervals: Optional[Sequence] = None, digits: int = 10,
                     trials: int = 100, seed: int = 0) -> InvarianceReport:
    """Compare mass(I) with the total mass of the branch preimages of I."""
    spec = get_measure(measure_id)
    if intervals is None:
        intervals = random_intervals(spec, trials, seed)
    with mpmath.workdps(max(30, digits + 10)):
        worst = 0.0
        worst_iv = None
        for lo, hi in intervals:
            lo, hi = Fraction(lo), Fraction(hi)
            lhs = _mass_interval(spec, lo, hi)
            if map_id == "Tbar_E" and measure_id == "lebesgue":
                rhs_exact, tail = Interval.point(_tbar_e_lebesgue(lo, hi)), mpmath.mpf(0)
            else:
                rhs_exact, tail = _preimage_mass(map_id, spec, lo, hi)
            diff = rhs_exact - lhs
            # bound on |rhs - lhs| from the enclosures plus the floating tail
            t = Fraction(mpmath.nstr(tail, 40))
            d = float(max(abs(diff.lo + t), abs(diff.hi + t)))
            if worst_iv is None or d > worst:
                worst = d
                worst_iv = (str(lo), str(hi))
    return InvarianceReport(map_id, measure_id, len(intervals), digits, worst, worst_iv)
