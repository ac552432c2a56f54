"""Question-mark functions for even and odd continued fractions, in exact arithmetic."""

from .exact import CubicNumber, Interval, QuadNumber, LAMBDA, eval_decimal, parse_rational
from .expansions import (
    EcfExpansion,
    OcfExpansion,
    RcfExpansion,
    InvalidExpansion,
    cf_value,
    convergents,
    ecf_expand,
    expand,
    ocf_expand,
    rcf_expand,
)
from .qmaps import (
    DyadicRational,
    TriadicRational,
    minkowski_q,
    minkowski_q_inverse,
    q_e,
    q_e_inverse,
    q_o,
    q_o_inverse,
)

__version__ = "0.1.0"
