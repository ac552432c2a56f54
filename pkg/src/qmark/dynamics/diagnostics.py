"""Exact conjugacy checks, Holder exponent estimates and singularity diagnostics."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional

from ..exact import (
    GOLDEN,
    LAMBDA,
    SQRT2,
    CubicNumber,
    Interval,
    QuadNumber,
    decimal_from_interval,
    enclose,
    format_rational,
    log_interval,
    log_rational,
)
from ..expansions import (
    EcfExpansion,
    OcfExpansion,
    RcfExpansion,
    cf_value,
    convergents,
    ecf_expand,
    ocf_expand,
    periodic_ecf,
    rcf_expand,
)
from ..farey import ecf_level, ocf_level
from ..qmaps import minkowski_q, q_e, q_o
from .maps import get_map

__all__ = [
    "conjugacy_check",
    "conjugacy_sweep",
    "holder_estimate",
    "holder_constant",
    "derivative_ratio_diagnostic",
    "random_ecf_expansion",
    "singularity_sweep",
    "return_map_check",
    "symbolic_action_check",
    "extension_law_check",
    "plot_data",
    "is_discontinuity",
    "HOLDER_REFERENCE_VALUES",
]

F0, F1 = Fraction(0), Fraction(1)


def _exact(v):
    """Plain exact value: triadic/dyadic to Fraction, everything else unchanged."""
    if hasattr(v, "as_fraction"):
        return v.as_fraction()
    return v


def _show(v) -> str:
    v = _exact(v)
    if isinstance(v, CubicNumber):
        return str(v)
    return format_rational(Fraction(v))


def is_discontinuity(map_id: str, x) -> bool:
    """x is a branch endpoint where neighbouring formulas give different values."""
    m = get_map(map_id)
    if m.fixed_zero and x == 0:
        return False
    if m.finite:
        cands = m.generation(0)
    else:
        k = m.guess(x)
        cands = [b for j in (k - 1, k, k + 1) if j >= m.first for b in m.generation(j)]
    vals = {b.apply(x) for b in cands if b.lo <= x <= b.hi}
    return len(vals) > 1


_FAMILIES = {
    "E": (q_e, (("F_E", "Fbar_E"), ("T_E", "Tbar_E"))),
    "O": (q_o, (("F_O", "Fbar_O"), ("T_O", "Tbar_O"))),
    "RCF": (minkowski_q, (("F", "tent"),)),
}


def _family(family: str):
    key = {"even": "E", "odd": "O", "rcf": "RCF", "classical": "RCF", "minkowski": "RCF"}.get(
        family, family
    )
    if key not in _FAMILIES:
        raise KeyError(f"unknown family {family!r}")
    return key, _FAMILIES[key]


def conjugacy_check(family: str, x) -> dict:
    """Exact test of Q(M(x)) = Mbar(Q(x)) for each map pair of the family.

    Points where either map jumps are flagged as breakpoints; the comparison
    is still made with the declared branch preference.
    """
    key, (qf, pairs) = _family(family)
    x = Fraction(x)
    rows = []
    ok = True
    for m, mbar in pairs:
        qx = _exact(qf(x))
        lhs = _exact(qf(get_map(m)(x)))
        rhs = get_map(mbar)(qx)
        equal = lhs == rhs
        bp = is_discontinuity(m, x) or is_discontinuity(mbar, qx)
        rows.append({"map": m, "linear": mbar, "lhs": _show(lhs), "rhs": _show(rhs),
                     "equal": equal, "breakpoint": bp})
        if not equal and not bp:
            ok = False
    return {"check": "conjugacy", "family": key, "x": str(x), "results": rows, "pass": ok}


def conjugacy_sweep(family: str, points: Optional[Iterable] = None, level: int = 6) -> dict:
    key, _ = _family(family)
    if points is None:
        if key == "E":
            points = ecf_level(level).ordered
        elif key == "O":
            points = ocf_level(level).ordered
        else:
            points = sorted({Fraction(p, q) for q in range(1, level + 1) for p in range(q + 1)})
    checked = failures = breakpoints = 0
    first_failure = None
    for x in points:
        rep = conjugacy_check(key, x)
        checked += 1
        for r in rep["results"]:
            if r["breakpoint"]:
                breakpoints += 1
            elif not r["equal"]:
                failures += 1
                if first_failure is None:
                    first_failure = {"x": str(x), **r}
    return {
        "check": "conjugacy",
        "parameters": {"family": key, "points": checked},
        "breakpoints": breakpoints,
        "failures": failures,
        "first_failure": first_failure,
        "max_discrepancy": 0 if failures == 0 else None,
        "pass": failures == 0,
    }


# --------------------------------------------------------------------------
# Holder exponents

HOLDER_REFERENCE_VALUES = {"E": 0.62324, "O": 0.63317, "RCF": 0.72021}


def _log_abs(z, bits: int) -> Interval:
    if isinstance(z, (int, Fraction)):
        return log_rational(abs(Fraction(z)), bits)
    iv = enclose(z, bits)
    if iv.hi < 0:
        iv = -iv
    if iv.lo <= 0:
        raise ArithmeticError("enclosure too wide to take a logarithm")
    return log_interval(iv, bits)


def holder_constant(family: str, bits: int = 128) -> Interval:
    """log 3 / (2 log theta), log lambda / (2 log G), log 2 / (2 log G)."""
    key, _ = _family(family)
    if key == "E":
        num, den = log_rational(3, bits), _log_abs(1 + SQRT2, bits)
    elif key == "O":
        num, den = _log_abs(LAMBDA, bits), _log_abs(GOLDEN, bits)
    else:
        num, den = log_rational(2, bits), _log_abs(GOLDEN, bits)
    return num / (den * 2)


def _holder_setup(key: str, depth: int):
    """Target point, its exact Q value and the prefix sequence."""
    if key == "E":
        xstar = SQRT2 - 1
        qstar = Fraction(1, 2)
        prefixes = [periodic_ecf([(1, 2)], k) for k in range(1, depth + 1)]
        return xstar, qstar, prefixes, q_e
    golden_minus_one = GOLDEN - 1
    if key == "O":
        qstar = LAMBDA / (LAMBDA + 1)
        prefixes = [OcfExpansion(((1, 1),) * k, prefix=True) for k in range(1, depth + 1)]
        return golden_minus_one, qstar, prefixes, q_o
    prefixes = [RcfExpansion((1,) * k, prefix=True) for k in range(1, depth + 1)]
    return golden_minus_one, Fraction(2, 3), prefixes, minkowski_q


def holder_estimate(family: str, depth: int = 40, digits: int = 6) -> dict:
    """s_k = log|Q(x*) - Q(p_k/q_k)| / log|x* - p_k/q_k| along the extremal prefixes."""
    key, _ = _family(family)
    if depth < 1:
        raise ValueError("depth must be positive")
    xstar, qstar, prefixes, qf = _holder_setup(key, depth)
    bits = 96 + 4 * depth
    seq = []
    values = []
    for pre in prefixes:
        pk = cf_value(pre)
        dq = qstar - _exact(qf(pre))
        dx = xstar - pk
        s = _log_abs(dq, bits) / _log_abs(dx, bits)
        seq.append(decimal_from_interval(s, digits).value if s.width < Fraction(1, 10**digits)
                   else str(float(s.mid)))
        values.append(s.mid)
    target = holder_constant(key)
    terminal = values[-1]
    dist = abs(float(terminal - target.mid))
    reference = HOLDER_REFERENCE_VALUES[key]
    tail = values[len(values) // 2 :]
    monotone = all(abs(tail[i + 1] - target.mid) <= abs(tail[i] - target.mid) for i in range(len(tail) - 1))
    return {
        "check": "holder",
        "parameters": {"family": key, "depth": depth},
        "sequence": seq,
        "terminal": seq[-1],
        "target": decimal_from_interval(target, 8).value,
        "reference_value": reference,
        "distance": dist,
        "distance_to_reference": abs(float(terminal) - reference),
        "monotone_tail": monotone,
        "pass": abs(float(terminal) - reference) < 0.01,
    }


# --------------------------------------------------------------------------
# singularity diagnostic


def _lt_over_sqrt3_power(lhs: Fraction, num: Fraction, a: int) -> bool:
    """lhs < num / 3^(a/2), exactly, for positive lhs and num."""
    if a % 2 == 0:
        return lhs * 3 ** (a // 2) < num
    return lhs * lhs * 3**a < num * num


def derivative_ratio_diagnostic(expansion: EcfExpansion, n: Optional[int] = None) -> dict:
    """Check the growth ratios r_k / r_{k-1} and the two-sided gap enclosure.

    x is the value of the full expansion and y = Q_E(x); the convergents
    p_k/q_k come from its prefixes.  Everything is exact rational arithmetic.
    """
    terms = expansion.terms
    if n is None:
        n = len(terms) - 1
    if n < 1 or len(terms) < n + 1:
        raise ValueError("need at least n + 1 terms")
    x = cf_value(expansion)
    y = _exact(q_e(expansion))
    conv = convergents(EcfExpansion(terms[:n], prefix=True)).fractions()
    r = [None]
    enclosure_ok = True
    rows = []
    for k in range(1, n + 1):
        pk = conv[k - 1]
        qk = _exact(q_e(EcfExpansion(terms[:k], prefix=True)))
        gap = abs(y - qk)
        if x == pk:
            raise ValueError("x coincides with a convergent")
        r.append(gap / abs(x - pk))
        s = sum(a for _, a in terms[: k + 1])
        # 3^(-s/2) < gap <= 3^(1 - s/2), squared to stay rational
        lower = gap * gap * 3**s > 1
        upper = gap * gap * 3**s <= 9
        enclosure_ok &= lower and upper
        rows.append({"k": k, "r": float(r[k]), "enclosure": lower and upper})
    ratio_ok = True
    for k in range(2, n + 1):
        a_next = terms[k][1]
        a_k = terms[k - 1][1]
        num = Fraction(2 * (a_next + 2) * (a_k + 1) ** 2)
        holds = _lt_over_sqrt3_power(r[k] / r[k - 1], num, a_next)
        rows[k - 1]["ratio"] = float(r[k] / r[k - 1])
        rows[k - 1]["ratio_bound"] = float(num) / 3 ** (a_next / 2)
        rows[k - 1]["ratio_ok"] = holds
        ratio_ok &= holds
    return {
        "check": "singularity",
        "parameters": {"terms": [list(t) for t in terms], "n": n},
        "results": rows,
        "ratio_bound_holds": ratio_ok,
        "enclosure_holds": enclosure_ok,
        "pass": ratio_ok and enclosure_ok,
    }


def random_ecf_expansion(rng, length: int, digits=(2, 2, 2, 4, 4, 6, 8, 12)) -> EcfExpansion:
    """A random even-digit prefix in [0, 1] ending with sign +1.

    Only even digits are drawn, so the value is a truncation of an infinite
    expansion and the lower gap bound stays strict.
    """
    terms = [(1, rng.choice(digits))]
    for i in range(1, length):
        e = 1 if i == length - 1 else rng.choice((1, -1))
        terms.append((e, rng.choice(digits)))
    return EcfExpansion(tuple(terms), prefix=True)


def singularity_sweep(trials: int = 100, length: int = 15, seed: int = 0) -> dict:
    import random

    rng = random.Random(seed)
    failures = []
    worst = 0.0
    for t in range(trials):
        exp = random_ecf_expansion(rng, length)
        rep = derivative_ratio_diagnostic(exp)
        for row in rep["results"]:
            if "ratio" in row:
                worst = max(worst, row["ratio"] / row["ratio_bound"])
        if not rep["pass"]:
            failures.append([list(p) for p in exp.terms])
    return {"check": "singularity",
            "parameters": {"trials": trials, "length": length, "seed": seed},
            "worst_ratio_over_bound": worst,
            "failures": failures[:5], "failure_count": len(failures),
            "pass": not failures}


# --------------------------------------------------------------------------
# first return maps


def _raw_value(terms) -> Fraction:
    v = F0
    for e, a in reversed(terms):
        v = Fraction(e) / (a + v)
    return v


def _symbolic_return(key: str, x: Fraction) -> Optional[Fraction]:
    if key == "E":
        t = ecf_expand(x).terms
        if len(t) < 2:
            return x
        return _raw_value(((1, 2),) + t[2:])
    t = ocf_expand(x).terms
    if len(t) < 2:
        return x
    rest = t[2:]
    if not rest and t[1][1] == 1:
        return None  # the orbit passes through 1 and dies at 0
    lead = 3 if (rest and rest[0][0] == -1) or not rest else 1
    return _raw_value(((1, lead),) + rest)


def _in_return_domain(key: str, x) -> bool:
    if key == "E":
        return Fraction(1, 3) < x <= 1
    return Fraction(1, 3) <= x < 1


def _phi(key: str, x: Fraction) -> Fraction:
    if key == "E":
        return 1 / x - 2
    return 1 / x - 3 if x <= Fraction(1, 2) else 1 / x - 1


def return_map_check(family: str, x, iterations: int = 1) -> dict:
    """Iterate the Farey map to the first return and compare with the digit action."""
    key, _ = _family(family)
    if key == "RCF":
        raise ValueError("return maps are defined for the even and odd families")
    x = Fraction(x)
    if not _in_return_domain(key, x):
        raise ValueError(f"{x} is outside the return domain")
    farey = get_map("F_E" if key == "E" else "F_O")
    tgauss = get_map("Tt_E" if key == "E" else "Tt_O")
    rows = []
    ok = True
    cur = x
    for _ in range(iterations):
        z = farey(cur)
        steps = 1
        while not _in_return_domain(key, z) and z != 0:
            z = farey(z)
            steps += 1
        symbolic = _symbolic_return(key, cur)
        analytic = None if z == 0 else z
        boundary = key == "E" and symbolic == Fraction(1, 3) and analytic == 1
        agree = analytic == symbolic or boundary or (analytic is None and symbolic == cur)
        if symbolic is None:
            conj = None
        else:
            conj = _phi(key, symbolic) == tgauss(_phi(key, cur)) or boundary
        rows.append({
            "x": str(cur), "steps": steps,
            "analytic": None if analytic is None else str(analytic),
            "symbolic": None if symbolic is None else str(symbolic), "boundary": boundary,
            "agree": agree, "conjugacy": conj,
            "phi_x": str(_phi(key, cur)),
        })
        ok &= agree and conj is not False
        if analytic is None:
            break
        cur = analytic
    return {"check": "return_map", "family": key, "results": rows, "pass": ok}


# --------------------------------------------------------------------------
# digit actions


def _shift_value(map_id: str, x: Fraction) -> Optional[Fraction]:
    """The value predicted by the digit action of ``map_id`` on x, or None when undefined."""
    if map_id in ("T_E", "T_O", "G"):
        t = {"T_E": ecf_expand, "T_O": ocf_expand, "G": rcf_expand}[map_id](x).terms
        if not t:
            return F0
        if map_id == "G":
            return cf_value(RcfExpansion(t[1:], prefix=True))
        rest = t[1:]
        if map_id == "T_E" and x == 1:
            return F1  # 1 = [(1,2),(-1,2),...] is fixed
        if not rest:
            return F0
        return abs(_raw_value(rest))
    if map_id == "F_E":
        t = ecf_expand(x).terms
        if not t:
            return F0
        (e1, a1), rest = t[0], t[1:]
        if a1 >= 4:
            return _raw_value(((1, a1 - 2),) + rest)
        if a1 == 1:
            return F1  # x = 1 is fixed
        return abs(_raw_value(rest)) if rest else F0
    if map_id == "F_O":
        t = ocf_expand(x).terms
        if not t:
            return F0
        (e1, a1), rest = t[0], t[1:]
        e2 = rest[0][0] if rest else None
        if (a1, e2) in ((3, -1), (1, 1)) or (a1 == 1 and e2 is None):
            return abs(_raw_value(rest)) if rest else F0
        if a1 == 3 and e2 is None:
            return None  # 1/3 sits on the jump of F_O
        return _raw_value(((1, a1 - 2),) + rest)
    raise KeyError(map_id)


def symbolic_action_check(map_id: str, max_den: int = 200) -> dict:
    """Compare each map with its digit action on all rationals of bounded denominator."""
    checked = mismatches = skipped = 0
    first = None
    m = get_map(map_id)
    for q in range(1, max_den + 1):
        for p in range(0, q + 1):
            if p and Fraction(p, q).denominator != q:
                continue
            x = Fraction(p, q)
            want = _shift_value(map_id, x)
            if want is None:
                skipped += 1
                continue
            got = m(x)
            checked += 1
            if got != want:
                mismatches += 1
                if first is None:
                    first = {"x": str(x), "map": str(got), "digits": str(want)}
    return {"check": "symbolic_action", "map": map_id, "checked": checked,
            "skipped": skipped, "mismatches": mismatches, "first_mismatch": first,
            "pass": mismatches == 0}


def extension_law_check(family: str = "E", max_den: int = 100) -> dict:
    """|T~(x)| = T(|x|) on every rational of [-1, 1) with bounded denominator."""
    key, _ = _family(family)
    tt = get_map("Tt_E" if key == "E" else "Tt_O")
    t = get_map("T_E" if key == "E" else "T_O")
    bad = []
    count = 0
    for q in range(1, max_den + 1):
        for p in range(-q, q):
            x = Fraction(p, q)
            if x.denominator != q:
                continue
            count += 1
            lhs, rhs = abs(tt(x)), t(abs(x))
            # both extended maps send the T-fixed value 1 to -1
            if lhs != rhs and not (rhs == 1 and lhs == 1):
                bad.append(str(x))
    return {"check": "extension_law", "family": key, "checked": count,
            "failures": bad[:10], "pass": not bad}


# --------------------------------------------------------------------------
# plot data


def _rcf_level(n: int) -> list[Fraction]:
    """Rationals whose regular digits sum to at most n + 1."""
    out = {F0, F1}

    def walk(prefix, budget):
        for a in range(1, budget + 1):
            t = prefix + (a,)
            if a >= 2 or len(t) == 1:
                out.add(cf_value(RcfExpansion(t, prefix=True)))
            walk(t, budget - a)

    walk((), n + 1)
    return sorted(out)


def plot_data(family: str, level: int, digits: Optional[int] = None,
              map_id: Optional[str] = None) -> list[tuple[str, str]]:
    """(x, Q(x)) pairs, or (x, map(x)) when ``map_id`` is given, over a level set."""
    from ..exact import eval_decimal

    key, (qf, _) = _family(family)
    if key == "E":
        xs = ecf_level(level).ordered
    elif key == "O":
        xs = ocf_level(level).ordered
    else:
        xs = _rcf_level(level)
    rows = []
    for x in xs:
        v = get_map(map_id)(x) if map_id else _exact(qf(x))
        if digits is not None:
            rows.append((format_rational(x), eval_decimal(v if not isinstance(v, int) else Fraction(v), digits).value))
        else:
            rows.append((format_rational(x), _show(v)))
    return rows
