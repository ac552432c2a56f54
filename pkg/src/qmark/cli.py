"""Command line interface: ``qmark <command> ...``.

Check commands print a JSON report ``{command, params, results, pass}`` and
exit with status 0 exactly when every requested check passes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import CubicNumber, eval_decimal, format_rational, parse_rational
from .expansions import convergents, expand, expansion_to_json

LEVEL_CAPS = {"even": 12, "odd": 20, "rcf": 30}
HOLDER_CAP = 60
DEFAULT_DIGITS = 30


class CliError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    output_format: str
    digits: int
    force: bool

    def __post_init__(self):
        if self.digits < 1:
            raise CliError("--digits must be at least 1")
        cap = os.environ.get("QMARK_MAX_DIGITS")
        if cap:
            try:
                cap_n = int(cap)
            except ValueError:
                raise CliError(f"QMARK_MAX_DIGITS is not an integer: {cap!r}") from None
            if self.digits > cap_n:
                print(f"qmark: digits capped at {cap_n} by QMARK_MAX_DIGITS", file=sys.stderr)
                self.digits = cap_n


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(str(exc)) from None


def _loose_number(text: str) -> Fraction:
    """p/q or a finite decimal; used only where a bracketing answer is returned."""
    try:
        return parse_rational(text)
    except ValueError:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise CliError(f"not a number: {text!r}") from None


def _bound(cfg: CliConfig, what: str, value: int, cap: int) -> None:
    if value > cap and not cfg.force:
        raise CliError(f"{what} {value} exceeds the cap {cap}; pass --force to override")


def _show_value(v, cfg: CliConfig, exact: bool) -> str:
    if hasattr(v, "as_fraction"):
        v = v.as_fraction()
    if exact:
        return str(v) if isinstance(v, CubicNumber) else format_rational(Fraction(v))
    return eval_decimal(v, cfg.digits).value


def _emit(obj, cfg: CliConfig, plain: Optional[str] = None) -> None:
    if cfg.output_format == "json" or plain is None:
        print(json.dumps(obj, indent=None, sort_keys=False))
    else:
        print(plain)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


# --------------------------------------------------------------------------
# commands


def cmd_expand(args, cfg: CliConfig) -> int:
    x = _rational(args.x)
    try:
        e = expand(args.variant, x)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    terms = expansion_to_json(e)["terms"]
    out = {"command": "expand", "params": {"variant": args.variant, "x": format_rational(x)},
           "results": [terms]}
    if args.convergents:
        out["convergents"] = [format_rational(c) for c in convergents(e).fractions()]
    plain = json.dumps(terms)
    if args.convergents:
        plain += "\n" + ",".join(out["convergents"])
    _emit(out, cfg, plain)
    return 0


def _q_function(variant: str):
    from .qmaps import minkowski_q, q_e, q_o

    return {"minkowski": minkowski_q, "even": q_e, "odd": q_o}[variant]


def cmd_q(args, cfg: CliConfig) -> int:
    x = _rational(args.x)
    try:
        v = _q_function(args.variant)(x)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    exact = args.exact or not (args.decimal or args.digits is not None)
    text = _show_value(v, cfg, exact)
    out = {"command": "q", "params": {"variant": args.variant, "x": format_rational(x),
                                      "exact": exact, "digits": None if exact else cfg.digits},
           "results": [text]}
    if isinstance(v, CubicNumber):
        out["basis"] = "1, L, L^2 with L^3 = L^2 + L + 1"
    _emit(out, cfg, text)
    return 0


def cmd_inverse(args, cfg: CliConfig) -> int:
    from .qmaps import minkowski_q_inverse, q_e_inverse, q_o_inverse

    if args.variant == "odd":
        y = _loose_number(args.y)
        try:
            iv = q_o_inverse(y, cfg.digits)
        except ValueError as exc:
            raise CliError(str(exc)) from None
        if iv.lo == iv.hi:
            text = format_rational(iv.lo)
            res = [text]
        else:
            res = [format_rational(iv.lo), format_rational(iv.hi)]
            text = f"[{res[0]}, {res[1]}]"
    else:
        y = _rational(args.y)
        f = q_e_inverse if args.variant == "even" else minkowski_q_inverse
        try:
            text = format_rational(f(y))
        except ValueError as exc:
            raise CliError(str(exc)) from None
        res = [text]
    out = {"command": "inverse", "params": {"variant": args.variant, "y": args.y}, "results": res}
    _emit(out, cfg, text)
    return 0


def cmd_level(args, cfg: CliConfig) -> int:
    from .farey import ecf_level, ocf_level

    _bound(cfg, f"{args.variant} level", args.n, LEVEL_CAPS[args.variant])
    if args.variant == "even":
        level, flags, flag_name = ecf_level(args.n), None, "in_Z"
        flags = level.z_flags
    else:
        level = ocf_level(args.n)
        flags, flag_name = level.new_flags, "in_X"
    qf = _q_function(args.variant) if args.with_q else None
    rows = []
    for i, (x, f) in enumerate(zip(level.ordered, flags)):
        row = [i, x.numerator, x.denominator, int(f)]
        if qf:
            row.append(_show_value(qf(x), cfg, not (args.decimal or args.digits is not None)))
        rows.append(row)
    header = ["index", "numerator", "denominator", flag_name] + (["q_value"] if qf else [])
    if cfg.output_format == "csv":
        print(_csv(header, rows))
    elif cfg.output_format == "plain":
        print(",".join(format_rational(x) for x in level.ordered))
    else:
        print(json.dumps({"command": "level", "params": {"variant": args.variant, "n": args.n},
                          "results": [dict(zip(header, r)) for r in rows]}))
    return 0


def cmd_array(args, cfg: CliConfig) -> int:
    from .farey import ecf_level, extended_array_row, ocf_level

    cap = LEVEL_CAPS["odd"] if args.variant == "ocf" else LEVEL_CAPS["even"]
    _bound(cfg, "array rows", args.rows, cap)
    if args.variant == "ecf":
        rows = [ecf_level(k).ordered for k in range(args.rows)]
    elif args.variant == "ocf":
        rows = [ocf_level(n).ordered for n in range(1, args.rows + 1)]
    else:
        rows = [extended_array_row(k) for k in range(args.rows)]
    text_rows = [[format_rational(x) for x in r] for r in rows]
    if cfg.output_format == "csv":
        print(_csv(["row", "index", "x"], [[k, i, x] for k, r in enumerate(text_rows)
                                            for i, x in enumerate(r)]))
    elif cfg.output_format == "plain":
        print("\n".join(",".join(r) for r in text_rows))
    else:
        print(json.dumps({"command": "array", "params": {"variant": args.variant,
                                                         "rows": args.rows},
                          "results": text_rows}))
    return 0


def cmd_stern(args, cfg: CliConfig) -> int:
    from .farey import stern_poly, stern_sequence

    if args.poly is not None:
        p = stern_poly(args.poly)
        coeffs = p.coeffs
        params = {"poly": args.poly}
        plain = ",".join(map(str, coeffs))
        results = coeffs
    else:
        if args.count < 0:
            raise CliError("--count must be non-negative")
        results = stern_sequence(args.count)
        params = {"count": args.count}
        plain = ",".join(map(str, results))
    if cfg.output_format == "csv":
        print(_csv(["index", "value"], list(enumerate(results))))
    else:
        _emit({"command": "stern", "params": params, "results": results}, cfg, plain)
    return 0


# --------------------------------------------------------------------------
# checks


def _invariance_chunk(job):
    from .dynamics import invariance_check

    map_id, measure_id, chunk, digits = job
    return invariance_check(map_id, measure_id, intervals=chunk, digits=digits)


def _run_invariance(map_id, measure_id, trials, digits, seed, workers):
    from .dynamics.measures import get_measure, invariance_check, random_intervals

    intervals = random_intervals(get_measure(measure_id), trials, seed)
    if workers <= 1 or trials < 50:
        rep = invariance_check(map_id, measure_id, intervals=intervals, digits=digits)
        return rep.to_json()
    size = -(-len(intervals) // workers)
    jobs = [(map_id, measure_id, intervals[i : i + size], digits)
            for i in range(0, len(intervals), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        reports = list(pool.map(_invariance_chunk, jobs))
    worst = max(reports, key=lambda r: r.max_discrepancy)
    merged = worst.to_json()
    merged["parameters"]["intervals"] = trials
    return merged


def cmd_check(args, cfg: CliConfig) -> int:
    from . import dynamics as dyn
    from .farey import genfun_product_check

    kind = args.check
    params = {k: v for k, v in vars(args).items()
              if k not in ("func", "default_format", "command", "check", "format", "force")
              and v is not None}
    if kind == "conjugacy":
        cap = LEVEL_CAPS[args.family] if args.family != "rcf" else 10**4
        _bound(cfg, f"{args.family} level", args.level, cap)
        rep = dyn.conjugacy_sweep(args.family, level=args.level)
    elif kind == "invariance":
        workers = args.workers if args.workers is not None else (os.cpu_count() or 1)
        digits = args.digits if args.digits is not None else 10
        rep = _run_invariance(args.map, args.measure, args.trials, digits, args.seed, workers)
    elif kind == "holder":
        _bound(cfg, "holder depth", args.depth, HOLDER_CAP)
        rep = dyn.holder_estimate(args.family, args.depth)
    elif kind == "levels":
        _bound(cfg, "level", args.n, 8)
        rep = dyn.verify_level_sets(args.n)
    elif kind == "singularity":
        rep = dyn.singularity_sweep(args.trials, args.length, args.seed)
    elif kind == "genfun":
        rep = genfun_product_check(args.factors, args.normalization).to_json()
    elif kind == "returnmap":
        rep = _return_sweep(args.family, args.max_den)
    elif kind == "symbolic":
        rep = dyn.symbolic_action_check(args.map, args.max_den)
    else:  # pragma: no cover - argparse restricts the choices
        raise CliError(f"unknown check {kind}")
    ok = bool(rep["pass"])
    print(json.dumps({"command": f"check {kind}", "params": params, "results": [rep], "pass": ok}))
    return 0 if ok else 1


def _return_sweep(family: str, max_den: int) -> dict:
    from .dynamics import return_map_check

    checked = failed = 0
    first = None
    for q in range(2, max_den + 1):
        for p in range(1, q + 1):
            x = Fraction(p, q)
            if x.denominator != q:
                continue
            try:
                rep = return_map_check(family, x, 1)
            except ValueError:
                continue
            checked += 1
            if not rep["pass"]:
                failed += 1
                first = first or rep["results"][0]
    return {"check": "return_map", "parameters": {"family": family, "max_den": max_den},
            "checked": checked, "failures": failed, "first_failure": first, "pass": failed == 0}


def cmd_plotdata(args, cfg: CliConfig) -> int:
    from .dynamics import plot_data

    _bound(cfg, f"{args.family} level", args.level, LEVEL_CAPS[args.family])
    decimal = args.decimal or args.digits is not None
    rows = plot_data(args.family, args.level, cfg.digits if decimal else None, args.map)
    col = args.map or "q"
    if cfg.output_format == "json":
        print(json.dumps({"command": "plotdata",
                          "params": {"family": args.family, "level": args.level, "map": args.map},
                          "results": [list(r) for r in rows]}))
    elif cfg.output_format == "plain":
        print("\n".join(f"{x} {y}" for x, y in rows))
    else:
        print(_csv(["x", col], rows))
    return 0


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "plain"), default=None)
    common.add_argument("--digits", type=int, default=None)
    common.add_argument("--force", action="store_true", help="ignore enumeration caps")

    p = argparse.ArgumentParser(prog="qmark", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("expand", parents=[common], help="continued fraction digits")
    s.add_argument("variant", choices=("rcf", "ecf", "ocf"))
    s.add_argument("x")
    s.add_argument("--convergents", action="store_true")
    s.set_defaults(func=cmd_expand, default_format="plain")

    s = sub.add_parser("q", parents=[common], help="evaluate a question-mark function")
    s.add_argument("variant", choices=("minkowski", "even", "odd"))
    s.add_argument("x")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true")
    g.add_argument("--decimal", action="store_true", help="certified decimal with --digits places")
    s.set_defaults(func=cmd_q, default_format="plain")

    s = sub.add_parser("inverse", parents=[common], help="invert a question-mark function")
    s.add_argument("variant", choices=("minkowski", "even", "odd"))
    s.add_argument("y")
    s.set_defaults(func=cmd_inverse, default_format="plain")

    s = sub.add_parser("level", parents=[common], help="ordered level set")
    s.add_argument("variant", choices=("even", "odd"))
    s.add_argument("n", type=int)
    s.add_argument("--with-q", action="store_true")
    s.add_argument("--decimal", action="store_true")
    s.set_defaults(func=cmd_level, default_format="csv")

    s = sub.add_parser("array", parents=[common], help="rows of the mediant arrays")
    s.add_argument("variant", choices=("ecf", "ocf", "extended"))
    s.add_argument("--rows", type=int, default=4)
    s.set_defaults(func=cmd_array, default_format="plain")

    s = sub.add_parser("stern", parents=[common], help="Stern sequence or polynomial")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--count", type=int)
    g.add_argument("--poly", type=int)
    s.set_defaults(func=cmd_stern, default_format="plain")

    s = sub.add_parser("check", help="run a verification and print a JSON report")
    checks = s.add_subparsers(dest="check", required=True)
    c = checks.add_parser("conjugacy", parents=[common])
    c.add_argument("family", choices=("even", "odd", "rcf"))
    c.add_argument("--level", type=int, default=6, help="level, or max denominator for rcf")
    c = checks.add_parser("invariance", parents=[common])
    c.add_argument("map")
    c.add_argument("measure")
    c.add_argument("--trials", type=int, default=1000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--workers", type=int)
    c = checks.add_parser("holder", parents=[common])
    c.add_argument("family", choices=("even", "odd", "rcf"))
    c.add_argument("--depth", type=int, default=40)
    c = checks.add_parser("levels", parents=[common])
    c.add_argument("n", type=int)
    c = checks.add_parser("singularity", parents=[common])
    c.add_argument("--trials", type=int, default=100)
    c.add_argument("--length", type=int, default=15)
    c.add_argument("--seed", type=int, default=0)
    c = checks.add_parser("genfun", parents=[common])
    c.add_argument("--factors", type=int, default=4)
    c.add_argument("--normalization", choices=("stated", "corrected"), default="corrected")
    c = checks.add_parser("returnmap", parents=[common])
    c.add_argument("family", choices=("even", "odd"))
    c.add_argument("--max-den", type=int, default=60)
    c = checks.add_parser("symbolic", parents=[common])
    c.add_argument("map", choices=("T_E", "T_O", "G", "F_E", "F_O"))
    c.add_argument("--max-den", type=int, default=100)
    for cp in checks.choices.values():
        cp.set_defaults(func=cmd_check, default_format="json")

    s = sub.add_parser("plotdata", parents=[common], help="(x, Q(x)) or (x, map(x)) pairs")
    s.add_argument("family", choices=("even", "odd", "rcf"))
    s.add_argument("--level", type=int, default=8)
    s.add_argument("--map", default=None, help="emit a map graph instead of Q")
    s.add_argument("--decimal", action="store_true")
    s.set_defaults(func=cmd_plotdata, default_format="csv")
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        digits = args.digits if args.digits is not None else DEFAULT_DIGITS
        cfg = CliConfig(args.command, args.format or args.default_format, digits, args.force)
        return args.func(args, cfg)
    except (CliError, ValueError, KeyError, ArithmeticError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"qmark: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
