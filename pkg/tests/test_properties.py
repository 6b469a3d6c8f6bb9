from fractions import Fraction

import mpmath
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from logmono.certifier import identity_check_integral_form
from logmono.exact_core import Literal, generate_prefix
from logmono.log_behavior import apply_R, check_pairwise, compare_powers, compare_powers_detail
from logmono.rigor.ball import ball, exp, log
from logmono.rigor.special import digamma, log_gamma

SUITE = dict(deadline=None, suppress_health_check=[HealthCheck.too_slow])

positive_rationals = st.fractions(min_value=Fraction(1, 50), max_value=60, max_denominator=997).filter(lambda q: q > 0)

FUNCS = {
    "exp": (lambda b: exp(b), mpmath.exp),
    "log": (lambda b: log(b), mpmath.log),
    "log_gamma": (lambda b: log_gamma(b, b.prec), mpmath.loggamma),
    "digamma": (lambda b: digamma(b, b.prec), mpmath.digamma),
}


@settings(max_examples=100, **SUITE)
@given(x=positive_rationals, name=st.sampled_from(sorted(FUNCS)), coarse=st.sampled_from([64, 96, 128]))
def test_ball_refinement_is_monotone(x, name, coarse):
    f, oracle = FUNCS[name]
    lo = f(ball(x, coarse))
    hi = f(ball(x, 4 * coarse))
    with mpmath.workprec(8 * coarse):
        ref = oracle(mpmath.mpf(x.numerator) / x.denominator)
    assert lo.contains(ref) and hi.contains(ref)
    assert hi.rad <= lo.rad
    assert lo.overlaps(hi)


@settings(max_examples=50, **SUITE)
@given(
    coeffs=st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=12), min_size=1, max_size=8),
    n=st.integers(min_value=0, max_value=6),
    x=st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=50),
)
def test_quotient_identity_random_polynomials(coeffs, n, x):
    assert identity_check_integral_form(coeffs, n, x, 256).passed


prefixes = st.lists(st.integers(min_value=1, max_value=10**6), min_size=4, max_size=25).map(
    lambda vs: generate_prefix(Literal(tuple(vs)))
)


@settings(max_examples=200, **SUITE)
@given(pre=prefixes, strict=st.booleans())
def test_pairwise_matches_ratio_monotonicity(pre, strict):
    r = apply_R(pre).values
    steps = list(zip(r, r[1:]))
    if strict:
        falling, rising = all(b < a for a, b in steps), all(b > a for a, b in steps)
    else:
        falling, rising = all(b <= a for a, b in steps), all(b >= a for a, b in steps)
    assert check_pairwise(pre, "log-concave", strict).holds == falling
    assert check_pairwise(pre, "log-convex", strict).holds == rising


def _exact(x, p, y, q):
    lhs = x.numerator**p * y.denominator**q
    rhs = y.numerator**q * x.denominator**p
    return (lhs > rhs) - (lhs < rhs)


big_rationals = st.fractions(min_value=Fraction(1, 10**6), max_value=10**6, max_denominator=10**6).filter(lambda q: q > 0)


@settings(max_examples=500, **SUITE)
@given(
    x=big_rationals,
    y=big_rationals,
    p=st.integers(min_value=0, max_value=400),
    q=st.integers(min_value=0, max_value=400),
    near=st.booleans(),
)
def test_compare_powers_matches_exact(x, y, p, q, near):
    if near:
        # make x^p and y^q equal or very close
        y, q = x, p
        y = y + Fraction(1, 10**9) if p % 3 == 0 else y
    order, method = compare_powers_detail(x, p, y, q, exact_threshold=0)
    sign = {"lt": -1, "eq": 0, "gt": 1}[order.value]
    assert sign == _exact(x, p, y, q)
    assert compare_powers(x, p, y, q) == order
