"""Higher-order monotonicity certification on finite grids.

Everything here is "on-grid": a certified report says that each sampled
(order, point) cell has the required sign, nothing about points in between.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from math import comb, factorial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from mpmath.libmp import mpf_cmp

from ._parallel import pmap
from .errors import BadParams, BadRange, DomainError, HypothesisViolation, OrderTooHigh
from .exact_core import bernoulli_abs_even, derangement
from .log_behavior import PropertyVerdict
from .rigor.ball import DEFAULT_PREC, Ball, ball, exp, log
from .rigor.functions import Chi, GFactorial, ThetaABC
from .rigor.scan import DEFAULT_POLICY, PrecPolicy, Sign, SignVerdict, certify_sign
from .rigor.special import log_gamma, zeta_derivs
from .rigor.symbolic import SymbolicReal, gamma_exact, to_ball

__all__ = [
    "LcmReport",
    "HScanReport",
    "CriterionReport",
    "MAX_ORDER",
    "MODES",
    "quotient_derivative",
    "identity_check_integral_form",
    "lcm_check",
    "check_hypotheses",
    "h_value",
    "h_scan",
    "f_decreasing_check",
    "criterion_root_increasing",
    "derangement_sandwich",
]

MAX_ORDER = 8
MODES = ("function", "reciprocal", "d2log")


# ---------------------------------------------------------------------------
# (g/x)^(n)


def quotient_derivative(g_derivs: Sequence[Ball], x, n: int, g0=None) -> Ball:
    """(g(x)/x)^(n) = sum_k C(n,k) g^(k)(x) (-1)^(n-k) (n-k)! x^(k-n-1).

    ``g0`` is accepted for symmetry with the integral form and is not needed.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if len(g_derivs) < n + 1:
        raise ValueError(f"need g, g', ..., g^({n}); got {len(g_derivs)} values")
    prec = g_derivs[0].prec if isinstance(g_derivs[0], Ball) else DEFAULT_PREC
    xb = x if isinstance(x, Ball) else ball(x, prec)
    if not xb.is_positive():
        raise DomainError(f"quotient_derivative needs x > 0, got {x}")
    xi = 1 / xb
    # x^(k-n-1) for k = n down to 0
    pw = xi
    total = ball(0, prec)
    for k in range(n, -1, -1):
        c = comb(n, k) * factorial(n - k) * (1 if (n - k) % 2 == 0 else -1)
        total = total + c * g_derivs[k] * pw
        pw = pw * xi
    return total


def _poly_deriv(coeffs: Sequence[Fraction]) -> List[Fraction]:
    return [i * c for i, c in enumerate(coeffs)][1:]


def _poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass
class IdentityResult:
    passed: bool
    lhs: Ball
    rhs: Fraction


def identity_check_integral_form(coeffs: Sequence, n: int, x, prec: int = DEFAULT_PREC) -> IdentityResult:
    """Compare the Leibniz form of (g/x)^(n) with

        (-1)^n g(0) n! / x^(n+1) + x^(-n-1) int_0^x t^n g^(n+1)(t) dt

    for a polynomial g with rational ``coeffs`` (constant term first).
    """
    coeffs = [Fraction(c) for c in coeffs] or [Fraction(0)]
    x = Fraction(x)
    if x <= 0:
        raise DomainError("x must be positive")
    derivs = [coeffs]
    for _ in range(n + 1):
        derivs.append(_poly_deriv(derivs[-1]) or [Fraction(0)])
    lhs = quotient_derivative([ball(_poly_eval(d, x), prec) for d in derivs[: n + 1]], ball(x, prec), n)
    # t^n g^(n+1)(t) integrates term by term
    integral = sum(c * x ** (i + n + 1) / (i + n + 1) for i, c in enumerate(derivs[n + 1]))
    g0 = coeffs[0]
    rhs = (-1) ** n * g0 * factorial(n) / x ** (n + 1) + integral / x ** (n + 1)
    return IdentityResult(lhs.contains(rhs), lhs, rhs)


# ---------------------------------------------------------------------------
# hypothesis guards


def _gamma_ratio_product(a_list, b_list):
    """prod Gamma(a_i)/Gamma(b_i) as SymbolicReal, +inf/0 markers, or None if not closed form."""
    za = sum(1 for v in a_list if v == 0)
    zb = sum(1 for v in b_list if v == 0)
    if za != zb:
        return float("inf") if za > zb else 0
    out = SymbolicReal(1)
    for a, b in zip(a_list, b_list):
        for v, up in ((a, True), (b, False)):
            if v == 0:
                continue
            g = gamma_exact(v)
            if g is None:
                return None
            out = out * g if up else out / g
    return out


def _compare_with_one(value, policy: PrecPolicy = DEFAULT_POLICY) -> int:
    """Sign of value - 1, exactly for rationals, else by certified balls (0 if undecided)."""
    if isinstance(value, (int, float)):
        return (value > 1) - (value < 1)
    if isinstance(value, Fraction) or (isinstance(value, SymbolicReal) and value.is_rational):
        v = Fraction(value.coef if isinstance(value, SymbolicReal) else value)
        return (v > 1) - (v < 1)
    for prec in policy.precisions():
        s = (to_ball(value, prec) - 1).sign()
        if s:
            return s
    return 0


def _zeta_closed(b: Fraction):
    """zeta(b) as SymbolicReal for even integer b, else None."""
    if b.denominator == 1 and b.numerator % 2 == 0 and b > 0:
        k = b.numerator // 2
        # zeta(2k) = |B_2k| (2 pi)^(2k) / (2 (2k)!)
        coef = bernoulli_abs_even(k) * Fraction(2) ** (2 * k) / (2 * factorial(2 * k))
        return SymbolicReal(coef, 4 * k)
    return None


def check_hypotheses(fspec, mode: str) -> Dict[str, bool]:
    """Theorem hypotheses relevant to (fspec, mode); raises HypothesisViolation on failure."""
    checked: Dict[str, bool] = {}
    if isinstance(fspec, Chi):
        a, b = fspec.a_list, fspec.b_list
        if mode in ("function", "reciprocal"):
            want = 1 if mode == "function" else -1
            prod = _gamma_ratio_product(a, b)
            if prod is None:
                s = _gamma_product_sign(fspec)
            elif isinstance(prod, (int, float)):
                s = _compare_with_one(prod)
            else:
                s = _compare_with_one(prod * fspec.rho)
            name = "rho*prod Gamma(a_i)/Gamma(b_i) >= 1" if want > 0 else "rho*prod Gamma(a_i)/Gamma(b_i) <= 1"
            # s == 0 means "undecided" unless the product is exactly 1
            ok = s * want > 0 or (s == 0 and _exactly_one(fspec.rho, prod))
            checked[name] = ok
            if not ok:
                raise HypothesisViolation(name, f"undecided or false for rho={fspec.rho}")
            sa = sb = Fraction(0)
            for k, (ai, bi) in enumerate(zip(a, b), 1):
                sa += ai
                sb += bi
                good = sa >= sb if want > 0 else sa <= sb
                if not good:
                    rel = ">=" if want > 0 else "<="
                    raise HypothesisViolation(f"partial sums a {rel} b", f"fails at k={k}: {sa} vs {sb}")
            checked["partial sums"] = True
    elif isinstance(fspec, ThetaABC) and mode == "reciprocal":
        if not fspec.b > 1:
            raise HypothesisViolation("b > 1", f"b = {fspec.b}; zeta(b) diverges at b = 1")
        checked["b > 1"] = True
        z = _zeta_closed(fspec.b)
        g = gamma_exact(fspec.c)
        if z is not None and g is not None:
            s = _compare_with_one(SymbolicReal(1) * fspec.a * z * g)
        else:
            s = 0
            for prec in DEFAULT_POLICY.precisions():
                v = to_ball(fspec.a, prec) * zeta_derivs(0, fspec.b, prec) * exp(log_gamma(fspec.c, prec))
                s = (v - 1).sign()
                if s:
                    break
        ok = s < 0
        checked["a*zeta(b)*Gamma(c) <= 1"] = ok
        if not ok:
            raise HypothesisViolation("a*zeta(b)*Gamma(c) <= 1", "fails or is undecided")
    elif isinstance(fspec, GFactorial) and mode == "d2log":
        for name, ok in fspec.hypotheses.items():
            checked[name] = ok
            if not ok:
                raise HypothesisViolation(name)
    return checked


def _gamma_product_sign(fspec: Chi, policy: PrecPolicy = DEFAULT_POLICY) -> int:
    for prec in policy.precisions():
        v = log(to_ball(fspec.rho, prec))
        for ai, bi in zip(fspec.a_list, fspec.b_list):
            v = v + log_gamma(ai, prec) - log_gamma(bi, prec)
        s = v.sign()
        if s:
            return s
    return 0


def _exactly_one(rho, prod) -> bool:
    if isinstance(prod, SymbolicReal):
        v = prod * rho
        return v.is_rational and v.coef == 1
    return False


# ---------------------------------------------------------------------------
# LCM scans


@dataclass
class LcmReport:
    fspec: object
    mode: str
    orders: Tuple[int, int]
    grid: List[Fraction]
    verdicts: List[List[SignVerdict]]
    conclusion: dict
    hypotheses: Dict[str, bool] = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.conclusion["status"] == "certified-on-grid"


def _log_f_derivs(fspec, x: Ball, orders: Sequence[int], prec: int) -> Dict[int, Ball]:
    """(log f)^(m)(x) for each m in ``orders``."""
    top = max(orders)
    jet = fspec.numerator_jet(x, top, prec)
    if not fspec.quotient:
        return {m: jet[m] for m in orders}
    return {m: quotient_derivative(jet, x, m) for m in orders}


def _signed_quantity(mode: str, n: int) -> Tuple[int, int]:
    """(derivative order of log f, sign factor) for order n in ``mode``."""
    base = 1 if n % 2 == 0 else -1
    if mode == "function":
        return n, base
    if mode == "reciprocal":
        return n, -base
    return n + 2, base


def _lcm_point(fspec, mode, orders, policy, x):
    x = Fraction(x)
    fspec.check_domain(x)
    pending = list(orders)
    out: Dict[int, SignVerdict] = {}
    last: Dict[int, Tuple[Ball, int]] = {}
    for prec in policy.precisions():
        needed = {_signed_quantity(mode, n)[0] for n in pending}
        vals = _log_f_derivs(fspec, ball(x, prec), sorted(needed), prec)
        still = []
        for n in pending:
            m, sgn = _signed_quantity(mode, n)
            v = vals[m] if sgn > 0 else -vals[m]
            s = v.sign()
            if s:
                out[n] = SignVerdict(Sign.POSITIVE if s > 0 else Sign.NEGATIVE, v, prec)
            else:
                last[n] = (v, prec)
                still.append(n)
        pending = still
        if not pending:
            break
    for n in pending:
        out[n] = SignVerdict(Sign.INDETERMINATE, *last[n])
    return [out[n] for n in orders]


def lcm_check(
    fspec,
    mode: str,
    n_lo: int,
    n_hi: int,
    grid: Sequence,
    policy: PrecPolicy = DEFAULT_POLICY,
) -> LcmReport:
    """Check (-1)^n times the mode's derivative is positive on every (order, point) cell.

    function:   (-1)^n (log f)^(n)
    reciprocal: (-1)^n (log 1/f)^(n)
    d2log:      (-1)^n ((log f)'')^(n)
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if n_hi > MAX_ORDER:
        raise OrderTooHigh(f"orders above {MAX_ORDER} are not supported, got {n_hi}")
    low = 0 if mode == "d2log" else 1
    if not low <= n_lo <= n_hi:
        raise ValueError(f"need {low} <= n_lo <= n_hi, got {n_lo}..{n_hi}")
    grid = [Fraction(g) for g in grid]
    if not grid:
        raise ValueError("empty grid")
    for g in grid:
        fspec.check_domain(g)
    hyps = check_hypotheses(fspec, mode)
    orders = list(range(n_lo, n_hi + 1))
    per_point = pmap(partial(_lcm_point, fspec, mode, orders, policy), grid)
    matrix = [[per_point[j][i] for j in range(len(grid))] for i in range(len(orders))]
    conclusion = {"status": "certified-on-grid"}
    undecided = None
    for i, n in enumerate(orders):
        for j, x in enumerate(grid):
            s = matrix[i][j].sign
            if s is Sign.NEGATIVE:
                conclusion = {"status": "violated", "order": n, "point": x}
                break
            if s is Sign.INDETERMINATE and undecided is None:
                undecided = {"status": "indeterminate", "order": n, "point": x}
        if conclusion["status"] == "violated":
            break
    if conclusion["status"] != "violated" and undecided is not None:
        conclusion = undecided
    return LcmReport(fspec, mode, (n_lo, n_hi), grid, matrix, conclusion, hyps)


# ---------------------------------------------------------------------------
# h(t, u)


def h_value(t, u, p, q, prec: int = DEFAULT_PREC) -> Ball:
    """h(t,u) = 1/(1-e^-t) - e^(-tp(u+1))/(1-e^(-pt)) - e^(uqt)/(1-e^(-qt))."""
    t, u = to_ball(t, prec), to_ball(u, prec)
    p, q = to_ball(p, prec), to_ball(q, prec)
    a = 1 / (1 - exp(-t))
    b = exp(-t * p * (u + 1)) / (1 - exp(-p * t))
    c = exp(u * q * t) / (1 - exp(-q * t))
    return a - b - c


@dataclass
class HScanReport:
    p: Fraction
    q: Fraction
    t_grid: List[Fraction]
    u_grid: List[Fraction]
    min_value: Ball
    argmin: Tuple[Fraction, Fraction]
    all_positive: bool
    indeterminate: List[Tuple[Fraction, Fraction]] = field(default_factory=list)
    # values[i][j] = h(t_grid[i], u_grid[j])
    values: List[List[Ball]] = field(default_factory=list, repr=False)


def _h_row(p, q, u_grid, prec, cap, t):
    """h(t, u) for every u, with a per-cell retry at higher precision."""
    out = []
    tb = ball(t, prec)
    pb, qb = ball(p, prec), ball(q, prec)
    a = 1 / (1 - exp(-tb))
    db = 1 / (1 - exp(-pb * tb))
    dc = 1 / (1 - exp(-qb * tb))
    for u in u_grid:
        v = a - exp(-tb * pb * (u + 1)) * db - exp(u * qb * tb) * dc
        pr = prec
        while not v.is_positive() and not v.is_negative() and pr < cap:
            pr *= 2
            v = h_value(t, u, p, q, pr)
        out.append(v)
    return out


def h_scan(p, q, t_grid: Sequence, u_grid: Sequence, prec: int = DEFAULT_PREC, cap: int = 4096) -> HScanReport:
    p, q = Fraction(p), Fraction(q)
    if p <= 1 or q <= 1:
        raise BadParams(f"h_scan needs p, q > 1, got p={p}, q={q}")
    if 1 / p + 1 / q > 1:
        raise BadParams(f"h_scan needs 1/p + 1/q <= 1, got {1 / p + 1 / q}")
    t_grid = [Fraction(t) for t in t_grid]
    u_grid = [Fraction(u) for u in u_grid]
    if any(t <= 0 for t in t_grid):
        raise DomainError("t must be positive")
    if any(not -1 <= u <= 0 for u in u_grid):
        raise DomainError("u must lie in [-1, 0]")
    rows = pmap(partial(_h_row, p, q, u_grid, prec, cap), t_grid)
    best = None
    undecided = []
    all_pos = True
    for t, row in zip(t_grid, rows):
        for u, v in zip(u_grid, row):
            if not v.is_positive():
                all_pos = False
                if not v.is_negative():
                    undecided.append((t, u))
            if best is None or mpf_cmp(v._lower_raw(), best[0]._lower_raw()) < 0:
                best = (v, (t, u))
    return HScanReport(p, q, t_grid, u_grid, best[0], best[1], all_pos, undecided, rows)


# ---------------------------------------------------------------------------
# f(s) = s e^-s / (1 - e^-s)


def _f_of_s(s: Fraction, prec: int) -> Ball:
    if s == 0:
        return ball(1, prec)
    sb = ball(s, prec)
    return sb / (exp(sb) - 1)


def _f_drop(s0, s1, prec):
    return _f_of_s(s0, prec) - _f_of_s(s1, prec)


def f_decreasing_check(s_grid: Sequence, policy: PrecPolicy = DEFAULT_POLICY) -> PropertyVerdict:
    """Certify f(s_i) > f(s_{i+1}) for consecutive grid points (s = 0 means the limit 1)."""
    s = [Fraction(v) for v in s_grid]
    if len(s) < 2:
        raise ValueError("need at least two grid points")
    if s[0] < 0 or any(b <= a for a, b in zip(s, s[1:])):
        raise ValueError("grid must be nonnegative and strictly increasing")
    outcomes = []
    for i in range(len(s) - 1):
        v = certify_sign(_f_drop, s[i], s[i + 1], policy=policy)
        c = "ok" if v.sign is Sign.POSITIVE else "bad" if v.sign is Sign.NEGATIVE else "undecided"
        outcomes.append((i, c, {"s": [str(s[i]), str(s[i + 1])]}))
    bad = [(i, w) for i, c, w in outcomes if c != "ok"]
    first = {"index": bad[0][0], **bad[0][1]} if bad else None
    return PropertyVerdict(
        property="f-decreasing",
        index_range=(0, len(s) - 1),
        holds=not bad,
        strict=not bad,
        first_violation=first,
        method="escalated-precision",
        requested_strict=True,
        per_index=tuple((i, c) for i, c, _ in outcomes),
    )


# ---------------------------------------------------------------------------
# root criterion for functions


@dataclass
class CriterionReport:
    hypotheses: Dict[str, bool]
    hypotheses_hold: bool
    conclusion_holds: bool
    failures: Dict[str, List[Fraction]]


def _certify_pred(fn, pred, policy):
    for prec in policy.precisions():
        v = fn(prec)
        r = pred(v)
        if r is not None:
            return r
    return False


def criterion_root_increasing(
    log_f_jet: Callable[[Ball, int, int], List[Ball]],
    N,
    grid: Sequence,
    policy: PrecPolicy = DEFAULT_POLICY,
) -> CriterionReport:
    """Hypotheses f' > 0, (log f)'' >= 0, f(N) <= 1 and the conclusion f'/f - log f / x > 0 on ``grid``.

    ``log_f_jet(x, order, prec)`` returns [log f, (log f)', ..., (log f)^(order)]
    at the ball ``x``; f > 0 is implicit in having a logarithm.
    """
    N = Fraction(N)
    grid = [Fraction(g) for g in grid]
    if any(g < N for g in grid):
        raise DomainError("grid points must be >= N")

    fails: Dict[str, List[Fraction]] = {"f' > 0": [], "(log f)'' >= 0": [], "f(N) <= 1": [], "conclusion": []}

    def jet(x, prec):
        return log_f_jet(ball(x, prec), 2, prec)

    def tri(pos, neg):
        return lambda v: True if pos(v) else (False if neg(v) else None)

    for x in grid:
        if not _certify_pred(lambda pr: jet(x, pr)[1], tri(Ball.is_positive, Ball.is_nonpositive), policy):
            fails["f' > 0"].append(x)
        if not _certify_pred(lambda pr: jet(x, pr)[2], tri(Ball.is_nonnegative, Ball.is_negative), policy):
            fails["(log f)'' >= 0"].append(x)

        def e1(pr, x=x):
            j = jet(x, pr)
            return j[1] - j[0] / ball(x, pr)

        if not _certify_pred(e1, tri(Ball.is_positive, Ball.is_nonpositive), policy):
            fails["conclusion"].append(x)
    if not _certify_pred(lambda pr: jet(N, pr)[0], tri(Ball.is_nonpositive, Ball.is_positive), policy):
        fails["f(N) <= 1"].append(N)
    hyps = {k: not v for k, v in fails.items() if k != "conclusion"}
    return CriterionReport(hyps, all(hyps.values()), not fails["conclusion"], fails)


# ---------------------------------------------------------------------------
# derangement sandwich

_HALF3 = Fraction(3, 2)


def sandwich_first(n: int) -> Fraction:
    """[Gamma(n+2) - 3/2][Gamma(n) - 3/2] - [Gamma(n+1) + 3/2]^2."""
    return (factorial(n + 1) - _HALF3) * (factorial(n - 1) - _HALF3) - (factorial(n) + _HALF3) ** 2


def sandwich_second(n: int) -> Fraction:
    """[Gamma(n+2) - 3/2]^3 [Gamma(n) - 3/2] - [Gamma(n+1) + 3/2]^3 [Gamma(n+3) + 3/2]."""
    return (factorial(n + 1) - _HALF3) ** 3 * (factorial(n - 1) - _HALF3) - (factorial(n) + _HALF3) ** 3 * (
        factorial(n + 2) + _HALF3
    )


def _sandwich_verdict(name, fn, lo, hi):
    outcomes = []
    for n in range(lo, hi + 1):
        v = fn(n)
        c = "ok" if v > 0 else "eq" if v == 0 else "bad"
        outcomes.append((n, c, {"value": str(v)}))
    viol = [(i, w) for i, c, w in outcomes if c != "ok"]
    eq = tuple(i for i, c, _ in outcomes if c == "eq")
    return PropertyVerdict(
        property=name,
        index_range=(lo, hi),
        holds=not viol,
        strict=not viol,
        first_violation={"index": viol[0][0], **viol[0][1]} if viol else None,
        equality_indices=eq,
        method="exact",
        requested_strict=True,
        per_index=tuple((i, c) for i, c, _ in outcomes),
    )


def derangement_sandwich(n_lo: int, n_hi: int, n_lo_second: Optional[int] = None) -> Tuple[PropertyVerdict, PropertyVerdict]:
    """Both lower-bound inequalities, decided exactly over the integers.

    The second runs from ``n_lo_second`` (default ``max(n_lo, 8)``).
    """
    second_lo = max(n_lo, 8) if n_lo_second is None else n_lo_second
    if n_lo < 4:
        raise BadRange(f"the first inequality is stated for n >= 4, got {n_lo}")
    if second_lo < 8:
        raise BadRange(f"the second inequality is stated for n >= 8, got {second_lo}")
    if n_hi < max(n_lo, second_lo):
        raise BadRange(f"empty range {n_lo}..{n_hi}")
    return (
        _sandwich_verdict("sandwich-first", sandwich_first, n_lo, n_hi),
        _sandwich_verdict("sandwich-second", sandwich_second, second_lo, n_hi),
    )


def derangement_distance(n: int, prec: int = 256) -> Ball:
    """Ball for 1/2 - |d_n - n!/e|; ``prec`` is extra bits beyond the size of n!."""
    prec = prec + factorial(n).bit_length()
    v = ball(derangement(n), prec) - ball(factorial(n), prec) * exp(ball(-1, prec))
    return Fraction(1, 2) - abs(v)
