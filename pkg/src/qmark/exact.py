"""Exact arithmetic kernels.

Rationals are :class:`fractions.Fraction`.  On top of that this module provides
the cubic field Q(lambda) with lambda^3 = lambda^2 + lambda + 1, real quadratic
fields Q(sqrt d), rational interval arithmetic, certified enclosures of the
relevant algebraic constants, a certified logarithm and decimal printing with a
guaranteed error bound.

Everything here is immutable and free of shared mutable state apart from
``functools`` caches of pure functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Union

Rational = Fraction

__all__ = [
    "Rational",
    "Interval",
    "CubicNumber",
    "QuadNumber",
    "DecimalApprox",
    "LAMBDA",
    "rational_arith",
    "mediant",
    "parse_rational",
    "format_rational",
    "cubic_arith",
    "lambda_isolate",
    "sqrt_isolate",
    "enclose",
    "eval_decimal",
    "log_interval",
    "sign",
    "LAMBDA_INV",
    "SQRT2",
    "SQRT5",
    "THETA",
    "GOLDEN",
    "log_rational",
    "decimal_from_interval",
]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


# --------------------------------------------------------------------------
# rationals


def rational_arith(a, b, op: str):
    """Apply ``op`` (add, sub, mul, div, cmp) to two rationals.

    ``cmp`` returns -1, 0 or 1.  Division by zero raises ZeroDivisionError.
    """
    a, b = _frac(a), _frac(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("rational division by zero")
        return a / b
    if op == "cmp":
        return (a > b) - (a < b)
    raise ValueError(f"unknown op {op!r}")


def mediant(a, b) -> Fraction:
    """(p+r)/(q+s) for reduced p/q and r/s.

    When the two fractions are Farey neighbours (|ps - rq| = 1) the result is
    already in lowest terms, and this is checked.
    """
    a, b = _frac(a), _frac(b)
    p, q = a.numerator, a.denominator
    r, s = b.numerator, b.denominator
    num, den = p + r, q + s
    if abs(p * s - r * q) == 1 and math.gcd(num, den) != 1:
        raise ArithmeticError(f"mediant of neighbours {a}, {b} is not reduced")
    return Fraction(num, den)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or a plain (signed) integer."""
    s = text.strip().replace("−", "-")
    if "/" in s:
        num, _, den = s.partition("/")
        try:
            n, d = int(num), int(den)
        except ValueError:
            raise ValueError(f"not a fraction: {text!r}") from None
        if d == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return Fraction(n, d)
    try:
        return Fraction(int(s))
    except ValueError:
        raise ValueError(f"not a fraction: {text!r}") from None


def format_rational(x) -> str:
    x = _frac(x)
    return f"{x.numerator}/{x.denominator}"


# --------------------------------------------------------------------------
# interval arithmetic


@dataclass(frozen=True)
class Interval:
    """Closed interval with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "Interval":
        x = _frac(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def _coerce(self, other) -> "Interval":
        if isinstance(other, Interval):
            return other
        return Interval.point(other)

    def __add__(self, other):
        o = self._coerce(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        o = self._coerce(other)
        return Interval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        c = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(c), max(c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.contains_zero():
            raise ZeroDivisionError("interval division by an interval containing 0")
        return self * Interval(1 / o.hi, 1 / o.lo)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(Fraction(0), max(-self.lo, self.hi))

    def sign(self) -> int | None:
        """Sign of every point of the interval, or None if it straddles 0."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None


# --------------------------------------------------------------------------
# root enclosures


def _cubic_scaled(x: int, bits: int) -> int:
    # 2^(3 bits) * f(x / 2^bits) for f(t) = t^3 - t^2 - t - 1
    s = 1 << bits
    return x * x * x - x * x * s - x * s * s - s * s * s


@lru_cache(maxsize=64)
def _lambda_floor(bits: int) -> int:
    """floor(lambda * 2^bits), certified by a sign change of the cubic."""
    if bits <= 64:
        lo, hi = 1 << bits, 2 << bits  # f(1) < 0 < f(2)
        while hi - lo > 1:
            m = (lo + hi) // 2
            if _cubic_scaled(m, bits) < 0:
                lo = m
            else:
                hi = m
        return lo
    # Newton refinement from half precision, then certify.
    half = bits // 2 + 8
    x = _lambda_floor(half) << (bits - half)
    s = 1 << bits
    for _ in range(3):
        fx = _cubic_scaled(x, bits)
        dfx = 3 * x * x - 2 * x * s - s * s  # 2^(2 bits) * f'(x / 2^bits)
        x = x - fx // dfx
    while _cubic_scaled(x, bits) >= 0:
        x -= 1
    while _cubic_scaled(x + 1, bits) < 0:
        x += 1
    return x


def _bits_for_digits(digits: int) -> int:
    return math.ceil(digits * math.log2(10)) + 2


def lambda_isolate(digits: int) -> Interval:
    """Rational interval of width < 10^-digits containing the real root of x^3-x^2-x-1.

    The enclosure is certified: the cubic is negative at the left endpoint and
    positive at the right endpoint.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    bits = _bits_for_digits(digits)
    x = _lambda_floor(bits)
    return Interval(Fraction(x, 1 << bits), Fraction(x + 1, 1 << bits))


def _lambda_interval_bits(bits: int) -> Interval:
    x = _lambda_floor(bits)
    return Interval(Fraction(x, 1 << bits), Fraction(x + 1, 1 << bits))


@lru_cache(maxsize=256)
def _sqrt_interval_bits(d: int, bits: int) -> Interval:
    r = math.isqrt(d << (2 * bits))
    if r * r == d << (2 * bits):
        return Interval.point(Fraction(r, 1 << bits))
    return Interval(Fraction(r, 1 << bits), Fraction(r + 1, 1 << bits))


def sqrt_isolate(d: int, digits: int) -> Interval:
    """Rational interval of width < 10^-digits containing sqrt(d)."""
    if d < 0:
        raise ValueError("negative radicand")
    return _sqrt_interval_bits(d, _bits_for_digits(digits))


# --------------------------------------------------------------------------
# Q(lambda)


@dataclass(frozen=True)
class CubicNumber:
    """c0 + c1*lambda + c2*lambda^2 with lambda^3 = lambda^2 + lambda + 1."""

    c0: Fraction = Fraction(0)
    c1: Fraction = Fraction(0)
    c2: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("c0", "c1", "c2"):
            v = getattr(self, name)
            if not isinstance(v, Fraction):
                object.__setattr__(self, name, _frac(v))

    @classmethod
    def coerce(cls, x) -> "CubicNumber":
        if isinstance(x, CubicNumber):
            return x
        return cls(_frac(x))

    @property
    def coeffs(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.c0, self.c1, self.c2)

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0 and self.c2 == 0

    def is_rational(self) -> bool:
        return self.c1 == 0 and self.c2 == 0

    def __add__(self, other):
        o = CubicNumber.coerce(other)
        return CubicNumber(self.c0 + o.c0, self.c1 + o.c1, self.c2 + o.c2)

    __radd__ = __add__

    def __neg__(self):
        return CubicNumber(-self.c0, -self.c1, -self.c2)

    def __sub__(self, other):
        return self + (-CubicNumber.coerce(other))

    def __rsub__(self, other):
        return CubicNumber.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, CubicNumber):
            k = _frac(other)
            return CubicNumber(self.c0 * k, self.c1 * k, self.c2 * k)
        a0, a1, a2 = self.coeffs
        b0, b1, b2 = other.coeffs
        # raw product coefficients of 1, L, L^2, L^3, L^4
        d0 = a0 * b0
        d1 = a0 * b1 + a1 * b0
        d2 = a0 * b2 + a1 * b1 + a2 * b0
        d3 = a1 * b2 + a2 * b1
        d4 = a2 * b2
        # L^4 = 2L^2 + 2L + 1, L^3 = L^2 + L + 1
        return CubicNumber(d0 + d3 + d4, d1 + d3 + 2 * d4, d2 + d3 + 2 * d4)

    __rmul__ = __mul__

    def inverse(self) -> "CubicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(lambda)")
        if self.is_rational():
            return CubicNumber(1 / self.c0)
        # Solve M v = e_0 where M is multiplication by self in basis (1, L, L^2).
        cols = [self, self * LAMBDA, self * LAMBDA * LAMBDA]
        m = [[cols[j].coeffs[i] for j in range(3)] + [Fraction(int(i == 0))] for i in range(3)]
        for c in range(3):
            piv = next(r for r in range(c, 3) if m[r][c] != 0)
            m[c], m[piv] = m[piv], m[c]
            pv = m[c][c]
            m[c] = [v / pv for v in m[c]]
            for r in range(3):
                if r != c and m[r][c] != 0:
                    f = m[r][c]
                    m[r] = [vr - f * vc for vr, vc in zip(m[r], m[c])]
        return CubicNumber(m[0][3], m[1][3], m[2][3])

    def __truediv__(self, other):
        o = CubicNumber.coerce(other)
        if o.is_rational():
            if o.c0 == 0:
                raise ZeroDivisionError("division by zero in Q(lambda)")
            return self * (1 / o.c0)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return CubicNumber.coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if self == LAMBDA:
                return _lambda_power(n)
            return self.inverse() ** (-n)
        if self == LAMBDA:
            return _lambda_power(n)
        result, base = ONE_CUBIC, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # exact real comparisons through certified sign determination
    def sign(self) -> int:
        return _cubic_sign(self)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __eq__(self, other):
        if isinstance(other, CubicNumber):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c0 == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.c0)
        return hash(self.coeffs)

    def __float__(self):
        return float(enclose(self, 64).mid)

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.coeffs) + "]"

    def basis_str(self) -> str:
        """Human readable form in the basis 1, L, L^2."""
        parts = []
        for c, mono in zip(self.coeffs, ("", "L", "L^2")):
            if c == 0:
                continue
            if mono and abs(c) == 1:
                term = ("-" if c < 0 else "+") + mono
            else:
                term = ("-" if c < 0 else "+") + str(abs(c)) + (f"*{mono}" if mono else "")
            parts.append(term)
        s = "".join(parts) or "0"
        return s[1:] if s.startswith("+") else s

    def to_json(self) -> list[str]:
        return [format_rational(c) if c.denominator != 1 else str(c.numerator) for c in self.coeffs]


ONE_CUBIC = CubicNumber(1)
LAMBDA = CubicNumber(0, 1)
LAMBDA_INV = CubicNumber(-1, -1, 1)  # L^2 - L - 1


@lru_cache(maxsize=4096)
def _lambda_power(n: int) -> CubicNumber:
    if n == 0:
        return ONE_CUBIC
    if n == 1:
        return LAMBDA
    if n == -1:
        return LAMBDA_INV
    half = _lambda_power(n // 2 if n > 0 else -((-n) // 2))
    sq = half * half
    if n > 0 and n % 2:
        return sq * LAMBDA
    if n < 0 and (-n) % 2:
        return sq * LAMBDA_INV
    return sq


def cubic_arith(a, b, op: str) -> CubicNumber:
    """Field arithmetic in Q(lambda); ``pow_int`` takes an integer ``b``."""
    a = CubicNumber.coerce(a)
    if op == "pow_int":
        return a ** int(b)
    b = CubicNumber.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def _cubic_fixed(z: CubicNumber, bits: int) -> tuple[int, int]:
    """Return (v, err) with |D*z*2^(2 bits) - v| <= err for some D > 0."""
    den = math.lcm(z.c0.denominator, z.c1.denominator, z.c2.denominator)
    c0 = z.c0.numerator * (den // z.c0.denominator)
    c1 = z.c1.numerator * (den // z.c1.denominator)
    c2 = z.c2.numerator * (den // z.c2.denominator)
    L = _lambda_floor(bits)  # lambda*2^bits in [L, L+1)
    s = 1 << bits
    v = c0 * s * s + c1 * L * s + c2 * L * L
    err = abs(c1) * s + abs(c2) * (2 * L + 1)
    return v, err


def _cubic_sign(z: CubicNumber) -> int:
    if z.is_zero():
        return 0
    if z.is_rational():
        return 1 if z.c0 > 0 else -1
    # Nonzero element of a field with no rational relation: some precision decides.
    size = max(abs(c.numerator).bit_length() + c.denominator.bit_length() for c in z.coeffs)
    bits = 64 + size
    while True:
        v, err = _cubic_fixed(z, bits)
        if v > err:
            return 1
        if v < -err:
            return -1
        bits *= 2


# --------------------------------------------------------------------------
# Q(sqrt d)


@dataclass(frozen=True)
class QuadNumber:
    """a + b*sqrt(d) for a squarefree radicand d (2 by default)."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    d: int = 2

    def __post_init__(self):
        for name in ("a", "b"):
            v = getattr(self, name)
            if not isinstance(v, Fraction):
                object.__setattr__(self, name, _frac(v))

    def _coerce(self, x) -> "QuadNumber":
        if isinstance(x, QuadNumber):
            if x.d != self.d and x.b != 0 and self.b != 0:
                raise ValueError("mixing different quadratic fields")
            if x.d != self.d:
                return QuadNumber(x.a, x.b, self.d) if x.b == 0 else x
            return x
        return QuadNumber(_frac(x), Fraction(0), self.d)

    def _field(self, o: "QuadNumber") -> int:
        if self.b == 0:
            return o.d
        return self.d

    def __add__(self, other):
        o = self._coerce(other)
        return QuadNumber(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        d = self._field(o)
        return QuadNumber(self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadNumber":
        return QuadNumber(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt d)")
        num = self * o.conjugate()
        return QuadNumber(num.a / n, num.b / n, num.d)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return (QuadNumber(1, 0, self.d) / self) ** (-n)
        result, base = QuadNumber(1, 0, self.d), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0 or sa == sb:
            return sa if sa else sb
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with d b^2
        diff = self.a * self.a - self.d * self.b * self.b
        return sa if diff > 0 else sb

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __eq__(self, other):
        if isinstance(other, QuadNumber):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __float__(self):
        return float(enclose(self, 64).mid)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.d})"


SQRT2 = QuadNumber(0, 1, 2)
THETA = QuadNumber(1, 1, 2)  # 1 + sqrt 2
SQRT5 = QuadNumber(0, 1, 5)
GOLDEN = QuadNumber(Fraction(1, 2), Fraction(1, 2), 5)


# --------------------------------------------------------------------------
# enclosures and certified printing

Number = Union[Fraction, int, CubicNumber, QuadNumber]


def enclose(z: Number, bits: int) -> Interval:
    """Rational interval containing the real value of z.

    The width shrinks like 2^-bits times the size of the coefficients.
    """
    if isinstance(z, (int, Fraction)):
        return Interval.point(z)
    if isinstance(z, QuadNumber):
        if z.b == 0:
            return Interval.point(z.a)
        return z.a + z.b * _sqrt_interval_bits(z.d, bits)
    if isinstance(z, CubicNumber):
        if z.is_rational():
            return Interval.point(z.c0)
        lam = _lambda_interval_bits(bits)
        # Horner with a positive interval for lambda
        return (lam * z.c2 + z.c1) * lam + z.c0
    raise TypeError(f"cannot enclose {type(z).__name__}")


def sign(z: Number) -> int:
    if isinstance(z, (int, Fraction)):
        return (z > 0) - (z < 0)
    return z.sign()


@dataclass(frozen=True)
class DecimalApprox:
    """A decimal string with a certified bound |true - value| <= error_bound < 10^-digits."""

    value: str
    digits: int
    error_bound: Fraction

    def __str__(self):
        return self.value

    def __float__(self):
        return float(self.value)

    def as_fraction(self) -> Fraction:
        return Fraction(self.value)


def _round_half_away(x: Fraction) -> int:
    n = abs(x)
    q, r = divmod(n.numerator, n.denominator)
    if 2 * r >= n.denominator:
        q += 1
    return q if x >= 0 else -q


def _format_scaled(m: int, digits: int) -> str:
    sgn = "-" if m < 0 else ""
    s = str(abs(m)).rjust(digits + 1, "0")
    return f"{sgn}{s[:-digits]}.{s[-digits:]}"


def decimal_from_interval(iv: Interval, digits: int) -> DecimalApprox:
    """Print the midpoint of ``iv``; requires width < 10^-digits."""
    unit = Fraction(1, 10**digits)
    if iv.width >= unit:
        raise ValueError("interval too wide for the requested digits")
    mid = iv.mid
    m = _round_half_away(mid / unit)
    printed = m * unit
    err = abs(printed - mid) + iv.width / 2
    return DecimalApprox(_format_scaled(m, digits), digits, err)


def eval_decimal(z: Number, digits: int) -> DecimalApprox:
    """Certified decimal approximation of z with error below 10^-digits."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    unit = Fraction(1, 10**digits)
    bits = _bits_for_digits(digits) + 16
    while True:
        iv = enclose(z, bits)
        if iv.width < unit:
            return decimal_from_interval(iv, digits)
        bits *= 2


# --------------------------------------------------------------------------
# certified logarithm


def _atanh_fixed(num: int, den: int, w: int) -> tuple[int, int]:
    """atanh(num/den) * 2^w as (value, error bound) for |num/den| <= 1/3."""
    if num < 0:
        v, e = _atanh_fixed(-num, den, w)
        return -v, e
    z = (num << w) // den  # floor, error < 1 ulp
    z2 = (z * z) >> w
    total = 0
    power = z
    k = 0
    while power != 0:
        total += power // (2 * k + 1)
        power = (power * z2) >> w
        k += 1
    # each truncation costs at most one ulp in power, the error in z propagates
    # with factor 1/(1 - z^2) < 9/8; the series tail is exhausted once power = 0
    err = 3 * (k + 2)
    return total, err


@lru_cache(maxsize=64)
def _log2_fixed(w: int) -> tuple[int, int]:
    v, e = _atanh_fixed(1, 3, w)
    return 2 * v, 2 * e


def log_rational(x, bits: int) -> Interval:
    """Certified enclosure of log(x) for rational x > 0, width about 2^-bits."""
    x = _frac(x)
    if x <= 0:
        raise ValueError("log of a non-positive number")
    if x == 1:
        return Interval.point(0)
    num, den = x.numerator, x.denominator
    e = num.bit_length() - den.bit_length()
    # m = x / 2^e in (1/2, 2); move into [2/3, 4/3)
    if e >= 0:
        mn, md = num, den << e
    else:
        mn, md = num << (-e), den
    if 3 * mn < 2 * md:
        mn <<= 1
        e -= 1
    elif 3 * mn >= 4 * md:
        md <<= 1
        e += 1
    w = bits + 16 + max(1, abs(e)).bit_length()
    at, at_err = _atanh_fixed(mn - md, mn + md, w)
    l2, l2_err = _log2_fixed(w)
    val = 2 * at + e * l2
    err = 2 * at_err + abs(e) * l2_err + 2
    scale = 1 << w
    return Interval(Fraction(val - err, scale), Fraction(val + err, scale))


def log_interval(iv: Interval, bits: int) -> Interval:
    """Certified enclosure of log over a positive interval."""
    if iv.lo <= 0:
        raise ValueError("log of an interval reaching 0")
    lo = log_rational(iv.lo, bits)
    if iv.hi == iv.lo:
        return lo
    hi = log_rational(iv.hi, bits)
    return Interval(lo.lo, hi.hi)


def _round_outward(iv: Interval, bits: int) -> Interval:
    """Replace endpoints by dyadic rationals with ``bits`` fractional bits."""
    s = 1 << bits
    lo = math.floor(iv.lo * s)
    hi = math.ceil(iv.hi * s)
    return Interval(Fraction(lo, s), Fraction(hi, s))
