"""End-to-end acceptance checks, one recorded PASS/FAIL line per criterion.

A few criteria, taken literally, are false for the stated inputs; those tests
stay red and a companion test records what does hold.
"""

import subprocess
import sys
import time
from fractions import Fraction
from functools import partial
from math import factorial

import pytest

from logmono.certifier import derangement_distance, derangement_sandwich, h_scan, h_value, lcm_check
from logmono.exact_core import (
    BernoulliAbsEven,
    BinomialFamily,
    Derangement,
    FactorialRatio,
    FussCatalan,
    Tangent,
    bernoulli,
    generate_prefix,
)
from logmono.log_behavior import (
    Method,
    apply_R,
    check_infinitely_log_monotonic,
    check_pairwise,
    check_root_log_behavior,
)
from logmono.rigor.ball import ball, log, pi
from logmono.rigor.functions import (
    Chi,
    GFactorial,
    ThetaABC,
    gamma_envelopes,
    log_F_second,
    log_F_second_scaled,
    log_theta_second,
    theta,
    zeta_part_scaled,
)
from logmono.rigor.scan import Sign, grid_points, sign_scan
from logmono.rigor.special import zeta_derivs
from logmono.rigor.symbolic import SymbolicReal

from . import test_properties as props


def _upper_envelope(x, prec):
    return gamma_envelopes(1, 0, x, prec)[1]


# ---------------------------------------------------------------------------


def test_c01_tangent_golden_values(acceptance):
    t0 = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "logmono.cli", "seq", "--family", "tangent", "--to", "6"],
        capture_output=True,
        text=True,
    )
    dt = time.perf_counter() - t0
    values = proc.stdout.split()
    ok = proc.returncode == 0 and values == ["1", "2", "16", "272", "7936", "353792"] and dt < 1
    acceptance(1, "tangent golden values via CLI", ok, f"{' '.join(values)} in {dt:.2f} s")
    assert ok


def test_c02_bernoulli_zeta(acceptance):
    t0 = time.perf_counter()
    bad = []
    for n in range(1, 21):
        target = (-1) ** (n - 1) * bernoulli(2 * n)
        b = 2 * factorial(2 * n) * zeta_derivs(0, 2 * n, 256) / (2 * pi(256)) ** (2 * n)
        if not (b.contains(target) and b.rad_below(Fraction(1, 10**20))):
            bad.append(n)
    dt = time.perf_counter() - t0
    ok = not bad and dt < 5
    acceptance(2, "(-1)^(n-1) B_2n inside zeta balls, n=1..20", ok, f"failures {bad}, {dt:.2f} s")
    assert ok


def test_c03_theta_identity(acceptance):
    t = theta(2, 256)
    b = t * t / (4 * pi(256) ** 2)
    ok = b.contains(Fraction(1, 6)) and b.rad_below(Fraction(1, 10**25))
    acceptance(3, "theta(2)^2/(4 pi^2) contains 1/6", ok, f"{b}")
    assert ok


def test_c04_log_theta_concave_on_grid(acceptance):
    t0 = time.perf_counter()
    main = sign_scan(log_theta_second, Fraction(36, 5), 200, Fraction(1, 10))
    zeta = sign_scan(zeta_part_scaled, Fraction(36, 5), 200, Fraction(1, 10), offset=Fraction(267, 100))
    env = sign_scan(_upper_envelope, Fraction(36, 5), 200, Fraction(1, 10), offset=Fraction(-41, 10))
    dt = time.perf_counter() - t0
    ok = (
        main.status == "all_negative"
        and zeta.status == "all_negative"
        and env.status == "all_negative"
        and len(main.points) == 1929
        and dt < 120
    )
    detail = (
        f"(log theta)'' {main.status} on {len(main.points)} pts (max upper {float(main.max_upper):.3e}); "
        f"zeta part - 2.67 {zeta.status}; envelope + 4.1 {env.status}; {dt:.1f} s"
    )
    acceptance(4, "(log theta)'' < 0 on [7.2, 200] plus the envelope constants", ok, detail)
    assert ok


F_CASES = [((2, 1, 1, 0, 0, 0), 30, Fraction(-4, 100)), ((2, 1, 1, 0, 0, 1), 2, Fraction(-37, 100))]


def test_c05_F_constants_literal(acceptance):
    results = []
    for params, lo, bound in F_CASES:
        s = sign_scan(partial(log_F_second, params), lo, 200, Fraction(1, 2), offset=bound)
        first_bad = s.first(Sign.POSITIVE)
        results.append((params, s.status, first_bad.x if first_bad else None))
    ok = all(st == "all_negative" for _, st, _ in results)
    detail = "; ".join(f"{p}: {st}, first x above bound {x}" for p, st, x in results)
    acceptance(5, "(log F)'' below -0.04 / -0.37 (literal)", ok, detail)
    assert ok


def test_c05_companion_scaled_constants(acceptance):
    results = []
    for params, lo, bound in F_CASES:
        s = sign_scan(partial(log_F_second_scaled, params), lo, 200, Fraction(1, 2), offset=bound)
        results.append((params, s.status, float(s.max_upper + bound)))
    ok = all(st == "all_negative" for _, st, _ in results)
    detail = "; ".join(f"{p}: {st}, max {m:.4f}" for p, st, m in results)
    acceptance(5, "x^3 (log F)'' below -0.04 / -0.37", ok, detail, companion=True)
    assert ok


ROOT_FAMILIES = [
    ("binom(2n,n)", BinomialFamily(2, 1), 1),
    ("binom(3n,n)", BinomialFamily(3, 1), 1),
    ("binom(4n,n)", BinomialFamily(4, 1), 1),
    ("binom(5n,n)", BinomialFamily(5, 1), 1),
    ("binom(5n,2n)", BinomialFamily(5, 2), 1),
    ("Catalan", FussCatalan(2), 1),
    ("Fuss-Catalan p=3", FussCatalan(3), 2),
    ("Fuss-Catalan p=4", FussCatalan(4), 2),
    ("Fuss-Catalan p=5", FussCatalan(5), 2),
    ("BernoulliAbsEven", BernoulliAbsEven(), 1),
    ("Tangent", Tangent(), 1),
]


def _root_log_concave(spec, start):
    """Strict root log-concavity on start..60: exact through 40, escalated balls above."""
    low = check_root_log_behavior(generate_prefix(spec, 41, start=start), "log-concave", exact_threshold=None)
    high = check_root_log_behavior(generate_prefix(spec, 60, start=40), "log-concave", exact_threshold=0)
    return low, high


def test_c06_root_log_concavity(acceptance):
    t0 = time.perf_counter()
    failures = []
    for label, spec, start in ROOT_FAMILIES:
        low, high = _root_log_concave(spec, start)
        if not (low.holds and high.holds and low.method == Method.EXACT.value and high.method == Method.ESCALATED.value):
            fv = low.first_violation or high.first_violation
            failures.append(f"{label} first violation n={fv['index'] if fv else '?'}")
    dt = time.perf_counter() - t0
    ok = not failures and dt < 120
    acceptance(6, "strict root log-concavity n=1..60", ok, f"{failures or 'all hold'}; {dt:.1f} s")
    assert ok


def test_c06_companion_from_two(acceptance):
    failures = []
    for label, spec, start in ROOT_FAMILIES:
        if label in ("BernoulliAbsEven", "Tangent"):
            first = check_root_log_behavior(generate_prefix(spec, 10), "log-concave").first_violation
            if first is None or first["index"] != 2:
                failures.append(f"{label} violation not at n=2")
            start = 2
        low, high = _root_log_concave(spec, start)
        if not (low.holds and high.holds):
            failures.append(label)
    ok = not failures
    acceptance(6, "Bernoulli/Tangent fail only at n=2, hold on 2..60", ok, f"{failures or 'as stated'}", companion=True)
    assert ok


def test_c07_infinite_log_monotonicity(acceptance):
    cases = [("Catalan", FussCatalan(2)), ("binom(2n,n)", BinomialFamily(2, 1))]
    bad = []
    for label, spec in cases:
        if not all(v.holds for v in check_infinitely_log_monotonic(generate_prefix(spec, 40), 4)):
            bad.append(label)
    for params in [(0, 0, 1, 2, 1, 1), (0, 0, 0, 2, 1, 1), (0, 0, 0, 3, 1, 2)]:
        spec = FactorialRatio(*params)
        if not spec.hypotheses_hold:
            bad.append(f"{params} hypotheses")
        if not all(v.holds for v in check_infinitely_log_monotonic(generate_prefix(spec, 40), 4)):
            bad.append(str(params))
    ok = not bad
    acceptance(7, "depth-4 ratio towers, n <= 40", ok, f"{bad or 'all levels hold'}")
    assert ok


def test_c08_h_positivity(acceptance):
    t0 = time.perf_counter()
    t_grid = grid_points(Fraction(1, 100), 50, Fraction(1, 100))
    u_grid = grid_points(-1, 0, Fraction(1, 20))
    mins, ok = [], True
    for p, q in [(2, 2), (3, Fraction(3, 2)), (4, 2), (3, 3)]:
        rep = h_scan(p, q, t_grid, u_grid)
        ok = ok and rep.all_positive and rep.min_value.is_positive()
        mins.append(f"({p},{q}) min {float(rep.min_value):.3e}")
    spot = h_value(log(ball(2, 256)), 0, 2, 2, 256)
    ok = ok and spot.contains(Fraction(1, 3))
    dt = time.perf_counter() - t0
    acceptance(8, "h(t,u) > 0 on the grid; h(ln 2, 0) = 1/3", ok, f"{'; '.join(mins)}; {dt:.1f} s")
    assert ok


def test_c09_lcm_scans(acceptance):
    t0 = time.perf_counter()
    runs = [
        ("chi", lcm_check(Chi(SymbolicReal(2, 1), (1,), (Fraction(1, 2),)), "function", 1, 6, grid_points(Fraction(1, 10), 50, Fraction(1, 2)))),
        ("theta-abc", lcm_check(ThetaABC(Fraction(1, 2), 2, 1), "reciprocal", 1, 5, grid_points(Fraction(11, 10), 30, Fraction(1, 2)))),
        ("g-factorial", lcm_check(GFactorial(0, 0, 0, 2, 1, 1), "d2log", 0, 4, grid_points(0, 20, Fraction(1, 4)))),
    ]
    dt = time.perf_counter() - t0
    ok = all(r.certified for _, r in runs) and dt < 180
    acceptance(9, "LCM scans chi / theta-abc / g-factorial", ok, f"{[(n, r.conclusion['status']) for n, r in runs]}; {dt:.1f} s")
    assert ok


def test_c10_derangements_literal(acceptance):
    dist_bad = [n for n in range(3, 201) if not derangement_distance(n).is_nonnegative()]
    first, second = derangement_sandwich(4, 100)
    d4 = generate_prefix(Derangement(), 100, start=4)
    d8 = generate_prefix(Derangement(), 100, start=8)
    convex = check_pairwise(d4, "log-convex")
    concave = check_pairwise(apply_R(d8), "log-concave")
    ok = not dist_bad and first.holds and second.holds and convex.holds and concave.holds
    fv = first.first_violation
    detail = (
        f"distance failures {dist_bad}; sandwich 1 {'holds' if first.holds else 'fails at n=' + str(fv['index']) + ' value ' + fv['value']}; "
        f"sandwich 2 {second.holds}; d_n log-convex {convex.holds}; R d_n log-concave {concave.holds}"
    )
    acceptance(10, "derangement bounds, sandwich 4..100, tower", ok, detail)
    assert ok


def test_c10_companion_sandwich_from_five(acceptance):
    first4, _ = derangement_sandwich(4, 100)
    first5, second = derangement_sandwich(5, 100)
    ok = first4.first_violation["index"] == 4 and first5.holds and second.holds
    acceptance(10, "sandwich 1 fails only at n=4, holds on 5..100", ok, f"value at 4 = {first4.first_violation['value']}", companion=True)
    assert ok


@pytest.mark.parametrize(
    "suite",
    [
        "test_ball_refinement_is_monotone",
        "test_quotient_identity_random_polynomials",
        "test_pairwise_matches_ratio_monotonicity",
        "test_compare_powers_matches_exact",
    ],
)
def test_c11_property_suites(acceptance, suite):
    t0 = time.perf_counter()
    try:
        getattr(props, suite)()
        ok, detail = True, "passed"
    except Exception as exc:  # hypothesis re-raises the falsifying example's error
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    acceptance(11, "property suites", ok, f"{suite} {detail} in {time.perf_counter() - t0:.1f} s")
    assert ok
