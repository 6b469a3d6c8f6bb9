"""Command-line front end: ``logmono seq|check|scan|certify``.

Exit codes: 0 every check holds, 1 usage error, 2 violation found,
3 indeterminate.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from functools import partial
from typing import List, Optional, Tuple

import mpmath

from . import certifier as cert
from . import exact_core as ec
from . import log_behavior as lb
from .errors import HypothesisViolation, LogMonoError
from .report import HOLDS, INDETERMINATE, VIOLATED, Report, ball_fields, jsonable, sign_verdict_dict
from .rigor import functions as fn
from .rigor.scan import PrecPolicy, Sign, grid_points, sign_scan
from .rigor.symbolic import parse_real


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# argument helpers


def exact_number(text: str) -> Fraction:
    """Integer, fraction or terminating decimal, converted without rounding."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not an exact number: {text!r}")


def real_param(text: str):
    try:
        return parse_real(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc))


def real_list(text: str):
    return tuple(real_param(t) for t in text.split(",") if t.strip())


def int_list(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def order_range(text: str):
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise UsageError(f"orders must look like LO..HI, got {text!r}")


def grid_spec(text: str) -> List[Fraction]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must look like LO:HI:STEP, got {text!r}")
    lo, hi, step = (exact_number(p) for p in parts)
    try:
        return grid_points(lo, hi, step)
    except ValueError as exc:
        raise UsageError(str(exc))


def _fmt_exact(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _policy(args) -> PrecPolicy:
    try:
        return PrecPolicy(args.prec_start, args.prec_max)
    except ValueError as exc:
        raise UsageError(str(exc))


def _config(args) -> dict:
    skip = {"handler"}
    return {k: jsonable(v) for k, v in sorted(vars(args).items()) if k not in skip}


# ---------------------------------------------------------------------------
# families


FAMILIES = (
    "bernoulli-abs",
    "tangent",
    "catalan",
    "fuss-catalan",
    "binomial",
    "derangement",
    "factorial-ratio",
    "literal",
)


def family_spec(args):
    f = args.family
    if f == "bernoulli-abs":
        return ec.BernoulliAbsEven()
    if f == "tangent":
        return ec.Tangent()
    if f == "catalan":
        return ec.FussCatalan(2)
    if f == "fuss-catalan":
        return ec.FussCatalan(args.p if args.p is not None else 2)
    if f == "binomial":
        if args.a is None or args.c is None:
            raise UsageError("binomial needs --a and --c")
        return ec.BinomialFamily(args.a, args.c)
    if f == "derangement":
        return ec.Derangement()
    if f == "factorial-ratio":
        if args.params is None:
            raise UsageError("factorial-ratio needs --params n0,k0,kbar0,a,b,bbar")
        ps = int_list(args.params)
        if len(ps) != 6:
            raise UsageError("factorial-ratio takes six parameters")
        return ec.FactorialRatio(*ps)
    if f == "literal":
        if args.values is None:
            raise UsageError("literal needs --values")
        return ec.Literal(tuple(exact_number(v) for v in args.values.split(",")), args.offset)
    raise UsageError(f"unknown family {f!r}")


def build_prefix(args, min_start: int = 0) -> ec.SequencePrefix:
    spec = family_spec(args)
    if isinstance(spec, ec.Literal):
        return ec.generate_prefix(spec)
    if args.to is None:
        raise UsageError("--to is required")
    start = args.start if args.start is not None else max(spec.offset, min_start)
    return ec.generate_prefix(spec, args.to, start=start)


def _add_family_args(p):
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--p", type=int, help="Fuss-Catalan order")
    p.add_argument("--a", type=int, help="binomial(an, cn)")
    p.add_argument("--c", type=int, help="binomial(an, cn)")
    p.add_argument("--params", help="factorial-ratio n0,k0,kbar0,a,b,bbar")
    p.add_argument("--values", help="literal values, comma separated")
    p.add_argument("--offset", type=int, default=0, help="index of the first literal value")
    p.add_argument("--from", dest="start", type=int, help="first index")
    p.add_argument("--to", type=int, help="last index")


# ---------------------------------------------------------------------------
# seq


def cmd_seq(args) -> Report:
    prefix = build_prefix(args)
    rows = [[n, "", _fmt_exact(v), "0"] for n, v in zip(prefix.indices, prefix.values)]
    results = [{"family": prefix.spec.name, "offset": prefix.offset, "values": [_fmt_exact(v) for v in prefix.values]}]
    return Report("seq", _config(args), HOLDS, results, rows)


def _text_seq(report: Report) -> str:
    return " ".join(report.results[0]["values"])


# ---------------------------------------------------------------------------
# check

PROPERTIES = ("log-concave", "log-convex", "ilm", "root-mono", "root-log-concave", "root-log-convex")


def _verdict_rows(v: lb.PropertyVerdict, label: str = ""):
    out = []
    for i, c in v.per_index:
        verdict = {"ok": "holds", "eq": "equality", "bad": "violated"}.get(c, c)
        out.append([f"{label}{i}", verdict, "", ""])
    return out


def cmd_check(args) -> Report:
    prop = args.property
    rooted = prop.startswith("root")
    prefix = build_prefix(args, min_start=1 if rooted else 0)
    if prop in ("log-concave", "log-convex"):
        verdicts = [lb.check_pairwise(prefix, prop, args.strict)]
    elif prop == "ilm":
        verdicts = lb.check_infinitely_log_monotonic(prefix, args.depth, args.strict)
    elif prop == "root-mono":
        verdicts = [lb.check_root_monotone(prefix, args.direction, args.strict)]
    else:
        mode = prop[len("root-"):]
        verdicts = [lb.check_root_log_behavior(prefix, mode, args.strict)]
    rows = []
    for r, v in enumerate(verdicts):
        rows += _verdict_rows(v, f"level{r}:" if prop == "ilm" else "")
    status = HOLDS if all(v.holds for v in verdicts) else VIOLATED
    return Report("check", _config(args), status, [v.to_dict() for v in verdicts], rows)


def _text_check(report: Report) -> str:
    lines = []
    for v in report.results:
        lo, hi = v["index_range"]
        word = "holds" if v["holds"] else "violated"
        extra = []
        if v["holds"] and not v["strict"]:
            extra.append("non-strict")
        elif v["strict"]:
            extra.append("strict")
        if v["first_violation"]:
            extra.append(f"first violation at n={v['first_violation']['index']}")
        extra.append(v["method"])
        lines.append(f"{v['property']} on [{lo}, {hi}]: {word} ({', '.join(extra)})")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# scan


def _env_upper(a, b, x, prec):
    return fn.gamma_envelopes(a, b, x, prec)[1]


def _env_lower(a, b, x, prec):
    return fn.gamma_envelopes(a, b, x, prec)[0]


def _one(x, prec):
    from .rigor.ball import ball

    return ball(1, prec)


SCAN_EXPRS = {
    # name: expected sign without --below/--above
    "log-theta-second": "negative",
    "zeta-part": None,
    "zeta-part-majorant": None,
    "gamma-part": None,
    "gamma-envelope-upper": None,
    "gamma-envelope-lower": None,
    "log-F-second": None,
    "log-F-second-scaled": None,
    "log-F-envelope": None,
    "eta-bound": "positive",
    "alzer": "positive",
    "h-positivity": "positive",
    "f-decreasing": "positive",
    "one": "positive",
}


def _f_params(args) -> fn.FGamma:
    if args.params is None:
        raise UsageError("F expressions need --params a,c,e,b,d,f")
    ps = [real_param(t) for t in args.params.split(",")]
    if len(ps) != 6 or not all(isinstance(p, Fraction) for p in ps):
        raise UsageError("F takes six rational parameters a,c,e,b,d,f")
    return fn.FGamma(*ps)


def _scan_callable(args):
    e = args.expr
    if e == "log-theta-second":
        return fn.log_theta_second
    if e == "zeta-part":
        return fn.zeta_part_scaled
    if e == "zeta-part-majorant":
        return fn.zeta_part_majorant
    if e in ("gamma-part", "gamma-envelope-upper", "gamma-envelope-lower"):
        a = exact_number(args.a) if args.a is not None else Fraction(1)
        b = exact_number(args.b) if args.b is not None else Fraction(0)
        target = {"gamma-part": fn.gamma_part_scaled, "gamma-envelope-upper": _env_upper, "gamma-envelope-lower": _env_lower}[e]
        return partial(target, a, b)
    if e == "log-F-second":
        return partial(fn.log_F_second, _f_params(args))
    if e == "log-F-second-scaled":
        return partial(fn.log_F_second_scaled, _f_params(args))
    if e == "log-F-envelope":
        return partial(fn.log_F_envelope, _f_params(args))
    if e == "eta-bound":
        return fn.eta_margin
    if e == "one":
        return _one
    raise UsageError(f"unknown expression {e!r}")


def _expected(args) -> Optional[str]:
    if args.below is not None and args.above is not None:
        raise UsageError("--below and --above are exclusive")
    if args.below is not None:
        return "negative"
    if args.above is not None:
        return "positive"
    return args.expect or SCAN_EXPRS[args.expr]


def _status_from_signs(signs, expected) -> str:
    signs = list(signs)
    if expected is not None:
        wrong = Sign.NEGATIVE if expected == "positive" else Sign.POSITIVE
        if wrong in signs:
            return VIOLATED
    if Sign.INDETERMINATE in signs:
        return INDETERMINATE
    return HOLDS


def _range(args, default_lo=None, default_hi=None, default_step=None):
    lo = args.lo if args.lo is not None else default_lo
    hi = args.hi if args.hi is not None else default_hi
    step = args.step if args.step is not None else default_step
    if lo is None or hi is None or step is None:
        raise UsageError("--from, --to and --step are required")
    lo, hi, step = exact_number(lo), exact_number(hi), exact_number(step)
    if not lo <= hi or step <= 0:
        raise UsageError("need --from <= --to and --step > 0")
    return lo, hi, step


def _scan_h(args) -> Report:
    p = real_param(args.p) if args.p is not None else Fraction(2)
    q = real_param(args.q) if args.q is not None else Fraction(2)
    lo, hi, step = _range(args, "0.01", "50", "0.01")
    u_step = exact_number(args.u_step)
    t_grid = grid_points(lo, hi, step)
    u_grid = grid_points(-1, 0, u_step)
    rep = cert.h_scan(p, q, t_grid, u_grid, _policy(args).start, _policy(args).cap)
    status = HOLDS if rep.all_positive else (INDETERMINATE if rep.indeterminate and not _any_negative(rep) else VIOLATED)
    result = {
        "expr": "h-positivity",
        "p": str(p),
        "q": str(q),
        "t_points": len(t_grid),
        "u_points": len(u_grid),
        "min_value": jsonable(rep.min_value),
        "argmin": [str(rep.argmin[0]), str(rep.argmin[1])],
        "all_positive": rep.all_positive,
        "indeterminate": [[str(t), str(u)] for t, u in rep.indeterminate],
    }
    rows = []
    for t, row in zip(t_grid, rep.values):
        for u, v in zip(u_grid, row):
            sign = "positive" if v.is_positive() else "negative" if v.is_negative() else "indeterminate"
            rows.append([f"{t},{u}", sign, *ball_fields(v)])
    return Report("scan", _config(args), status, [result], rows)


def _any_negative(rep) -> bool:
    return any(v.is_negative() for row in rep.values for v in row)


def _scan_f_decreasing(args) -> Report:
    lo, hi, step = _range(args, "0.1", "20", "0.1")
    v = cert.f_decreasing_check(grid_points(lo, hi, step), _policy(args))
    status = HOLDS if v.holds else VIOLATED
    return Report("scan", _config(args), status, [v.to_dict()], _verdict_rows(v))


def _scan_alzer(args) -> Report:
    lo, hi, step = _range(args)
    if lo <= 0:
        raise UsageError("the Gamma inequalities need x > 0")
    policy = _policy(args)
    rows, signs, per_point = [], [], []
    for x in grid_points(lo, hi, step):
        vs = fn.alzer_check(x, policy)
        per_point.append({"x": str(x), "verdicts": [sign_verdict_dict(v) for v in vs]})
        for k, v in enumerate(vs):
            signs.append(v.sign)
            rows.append([f"{x}#{k + 1}", v.sign.value, *ball_fields(v.ball)])
    labels = [name for name, _ in fn.ALZER_INEQUALITIES]
    status = _status_from_signs(signs, "positive")
    return Report("scan", _config(args), status, [{"expr": "alzer", "inequalities": labels, "points": per_point}], rows)


def cmd_scan(args) -> Report:
    if args.expr == "h-positivity":
        return _scan_h(args)
    if args.expr == "f-decreasing":
        return _scan_f_decreasing(args)
    if args.expr == "alzer":
        return _scan_alzer(args)
    expr = _scan_callable(args)
    lo, hi, step = _range(args)
    if args.expr == "eta-bound" and lo < 4:
        raise UsageError("eta-bound is stated for x >= 4")
    offset = 0
    if args.below is not None:
        offset = exact_number(args.below)
    elif args.above is not None:
        offset = exact_number(args.above)
    expected = _expected(args)
    summary = sign_scan(expr, lo, hi, step, _policy(args), offset=offset)
    status = _status_from_signs((p.sign for p in summary.points), expected)
    rows = [[str(p.x), p.sign.value, *ball_fields(p.ball)] for p in summary.points]
    first_wrong = None
    if expected is not None:
        wrong = Sign.NEGATIVE if expected == "positive" else Sign.POSITIVE
        hit = summary.first(wrong)
        first_wrong = str(hit.x) if hit else None
    result = {
        "expr": args.expr,
        "offset": str(offset),
        "expected": expected,
        "summary": summary.status,
        "points": len(summary.points),
        "indeterminate_points": [str(x) for x in summary.indeterminate_points],
        "first_unexpected": first_wrong,
        "max_upper": mpmath.nstr(summary.max_upper, 20),
        "min_lower": mpmath.nstr(summary.min_lower, 20),
    }
    return Report("scan", _config(args), status, [result], rows)


def _text_scan(report: Report) -> str:
    r = report.results[0]
    if r.get("expr") == "h-positivity":
        return f"h-positivity p={r['p']} q={r['q']}: min {r['min_value']['mid']} at t,u={r['argmin']}; all_positive={r['all_positive']}"
    if r.get("expr") == "alzer":
        return f"alzer: {report.status} on {len(r['points'])} points"
    if "summary" in r:
        msg = f"{r['expr']}: {r['summary']} on {r['points']} points"
        if r["indeterminate_points"]:
            msg += f"; indeterminate at {', '.join(r['indeterminate_points'][:10])}"
        if r["first_unexpected"]:
            msg += f"; first unexpected sign at x={r['first_unexpected']}"
        return msg
    return f"{r['property']}: {'holds' if r['holds'] else 'violated'}"


# ---------------------------------------------------------------------------
# certify

FUNCTIONS = ("chi", "theta-abc", "theta", "g-factorial", "f-gamma")


def build_fspec(args):
    f = args.fn
    try:
        if f == "chi":
            if args.rho is None or args.a is None or args.b is None:
                raise UsageError("chi needs --rho, --a and --b")
            return fn.Chi(real_param(args.rho), _rational_list(args.a), _rational_list(args.b))
        if f == "theta-abc":
            if args.a is None or args.b is None or args.c is None:
                raise UsageError("theta-abc needs --a, --b and --c")
            return fn.ThetaABC(real_param(args.a), _rational(args.b), _rational(args.c))
        if f == "theta":
            return fn.Theta()
        if f == "g-factorial":
            if args.params is None:
                raise UsageError("g-factorial needs --params n0,k0,kbar0,a,b,bbar")
            ps = int_list(args.params)
            if len(ps) != 6:
                raise UsageError("g-factorial takes six integers")
            return fn.GFactorial(*ps)
        if f == "f-gamma":
            return _f_params(args)
    except LogMonoError as exc:
        raise UsageError(str(exc))
    raise UsageError(f"unknown function {f!r}")


def _rational(text: str) -> Fraction:
    v = real_param(text)
    if not isinstance(v, Fraction):
        raise UsageError(f"expected a rational, got {text!r}")
    return v


def _rational_list(text: str):
    return tuple(_rational(t) for t in text.split(","))


def cmd_certify(args) -> Report:
    fspec = build_fspec(args)
    n_lo, n_hi = order_range(args.orders)
    grid = grid_spec(args.grid)
    try:
        rep = cert.lcm_check(fspec, args.mode, n_lo, n_hi, grid, _policy(args))
    except HypothesisViolation as exc:
        result = {"fn": args.fn, "mode": args.mode, "hypothesis_violation": exc.hypothesis, "detail": exc.detail}
        return Report("certify", _config(args), VIOLATED, [result], [])
    status = {"certified-on-grid": HOLDS, "violated": VIOLATED, "indeterminate": INDETERMINATE}[rep.conclusion["status"]]
    rows = []
    for i, n in enumerate(range(n_lo, n_hi + 1)):
        for x, v in zip(rep.grid, rep.verdicts[i]):
            rows.append([f"n={n},x={x}", v.sign.value, *ball_fields(v.ball)])
    result = {
        "fn": args.fn,
        "mode": args.mode,
        "orders": [n_lo, n_hi],
        "grid": [str(x) for x in rep.grid],
        "hypotheses": rep.hypotheses,
        "conclusion": jsonable(rep.conclusion),
        "verdicts": [[sign_verdict_dict(v) for v in row] for row in rep.verdicts],
    }
    return Report("certify", _config(args), status, [result], rows)


def _text_certify(report: Report) -> str:
    r = report.results[0]
    if "hypothesis_violation" in r:
        return f"{r['fn']} ({r['mode']}): hypothesis violated: {r['hypothesis_violation']} {r['detail']}".rstrip()
    c = r["conclusion"]
    msg = f"{r['fn']} ({r['mode']}), orders {r['orders'][0]}..{r['orders'][1]}, {len(r['grid'])} points: {c['status']}"
    if "order" in c:
        msg += f" at order {c['order']}, x={c['point']}"
    return msg


# ---------------------------------------------------------------------------
# parser


def _add_output_args(p):
    p.add_argument("--format", choices=("json", "csv"), help="machine-readable output (default: plain text)")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--prec-start", type=int, default=128, help="initial working precision in bits")
    p.add_argument("--prec-max", type=int, default=4096, help="precision cap in bits")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="logmono", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("seq", help="print exact sequence values")
    _add_family_args(p)
    _add_output_args(p)
    p.set_defaults(handler=cmd_seq)

    p = sub.add_parser("check", help="log-behaviour checks on a sequence prefix")
    _add_family_args(p)
    p.add_argument("--property", required=True, choices=PROPERTIES)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--depth", type=int, default=4, help="tower depth for ilm")
    p.add_argument("--direction", choices=("increasing", "decreasing"), default="increasing")
    _add_output_args(p)
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("scan", help="certified sign scans of zeta/Gamma expressions")
    p.add_argument("--expr", required=True, choices=sorted(SCAN_EXPRS))
    p.add_argument("--from", dest="lo")
    p.add_argument("--to", dest="hi")
    p.add_argument("--step")
    p.add_argument("--params", help="F parameters a,c,e,b,d,f")
    p.add_argument("--a", help="envelope slope")
    p.add_argument("--b", help="envelope shift")
    p.add_argument("--p", help="h exponent p")
    p.add_argument("--q", help="h exponent q")
    p.add_argument("--u-step", default="1/20", help="u grid step on [-1, 0] for h")
    p.add_argument("--below", help="check expr < VALUE")
    p.add_argument("--above", help="check expr > VALUE")
    p.add_argument("--expect", choices=("negative", "positive"))
    _add_output_args(p)
    p.set_defaults(handler=cmd_scan)

    p = sub.add_parser("certify", help="logarithmic complete monotonicity on a grid")
    p.add_argument("--fn", required=True, choices=FUNCTIONS)
    p.add_argument("--rho")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--c")
    p.add_argument("--params")
    p.add_argument("--mode", choices=cert.MODES, default="function")
    p.add_argument("--orders", default="1..4")
    p.add_argument("--grid", required=True, help="LO:HI:STEP")
    _add_output_args(p)
    p.set_defaults(handler=cmd_certify)
    return parser


_TEXT = {"seq": _text_seq, "check": _text_check, "scan": _text_scan, "certify": _text_certify}


def run(argv=None) -> Tuple[Report, argparse.Namespace]:
    """Parse ``argv``; return the report and the parsed arguments (UsageError on bad input)."""
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        report = args.handler(args)
    except UsageError:
        raise
    except (LogMonoError, ValueError) as exc:
        raise UsageError(str(exc))
    report.wall_time = round(time.perf_counter() - start, 6)
    return report, args


def main(argv=None) -> int:
    try:
        report, args = run(argv)
    except UsageError as exc:
        print(f"logmono: error: {exc}", file=sys.stderr)
        return 1
    if args.format == "json" or (args.out and args.format is None):
        text = report.to_json()
    elif args.format == "csv":
        text = report.to_csv()
    else:
        text = _TEXT[report.command](report) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
