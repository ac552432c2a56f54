from fractions import Fraction

from hypothesis import strategies as st


@st.composite
def unit_rationals(draw, max_den=2000, closed=True):
    q = draw(st.integers(1, max_den))
    lo = 0 if closed else 1
    hi = q if closed else q - 1
    if hi < lo:
        q, hi = 2, 1
    return Fraction(draw(st.integers(lo, hi)), q)


@st.composite
def signed_unit_rationals(draw, max_den=2000):
    q = draw(st.integers(1, max_den))
    return Fraction(draw(st.integers(-q, q)), q)


@st.composite
def ecf_terms(draw, min_size=1, max_size=8):
    n = draw(st.integers(min_size, max_size))
    terms = []
    for i in range(n):
        e = 1 if i == 0 else draw(st.sampled_from((1, -1)))
        a = draw(st.sampled_from((2, 2, 4, 6, 8, 10)))
        terms.append((e, a))
    if draw(st.booleans()):
        terms.append((1, 1))
    return tuple(terms)


cubic_coeffs = st.fractions(min_value=-50, max_value=50, max_denominator=30)
