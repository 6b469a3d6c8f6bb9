from fractions import Fraction
import mpmath
import pytest

from logmono.certifier import (
    MAX_ORDER,
    check_hypotheses,
    criterion_root_increasing,
    derangement_distance,
    derangement_sandwich,
    f_decreasing_check,
    h_scan,
    h_value,
    identity_check_integral_form,
    lcm_check,
    quotient_derivative,
    sandwich_first,
    sandwich_second,
)
from logmono.errors import BadParams, BadRange, DomainError, HypothesisViolation, OrderTooHigh
from logmono.rigor.ball import ball, log
from logmono.rigor.functions import Chi, FGamma, GFactorial, ThetaABC
from logmono.rigor.special import loggamma_jet
from logmono.rigor.symbolic import SymbolicReal

TWO_SQRT_PI = SymbolicReal(2, 1)


@pytest.fixture(autouse=True)
def _oracle_precision():
    with mpmath.workprec(300):
        yield


def _cube_derivs(x):
    return [ball(x**3), ball(3 * x**2), ball(6 * x), ball(6)]


def test_quotient_derivative_cube():
    # (x^3 / x)' = 2x, (x^3 / x)'' = 2
    assert quotient_derivative(_cube_derivs(2), 2, 1).contains(4)
    assert quotient_derivative(_cube_derivs(2), 2, 2).contains(2)
    assert quotient_derivative(_cube_derivs(2), 2, 0).contains(4)


def test_quotient_derivative_log():
    # g = log x: (log x / x)'' = (2 log x - 3) / x^3
    x = Fraction(3)
    lx = log(ball(x))
    derivs = [lx, ball(1 / x), ball(-1 / x**2)]
    out = quotient_derivative(derivs, x, 2)
    assert out.contains((2 * mpmath.log(3) - 3) / 27)


def test_quotient_derivative_errors():
    with pytest.raises(ValueError):
        quotient_derivative([ball(1)], 1, 2)
    with pytest.raises(DomainError):
        quotient_derivative([ball(1)], 0, 0)


@pytest.mark.parametrize("n", [0, 1, 2, 5])
def test_identity_integral_form(n):
    r = identity_check_integral_form([1, -2, Fraction(1, 3), 4, 0, 7], n, Fraction(5, 2))
    assert r.passed


def test_hypotheses_chi():
    assert all(check_hypotheses(Chi(TWO_SQRT_PI, (1,), (Fraction(1, 2),)), "function").values())
    with pytest.raises(HypothesisViolation):
        check_hypotheses(Chi(Fraction(1, 4), (1,), (Fraction(1, 2),)), "function")
    with pytest.raises(HypothesisViolation) as exc:
        check_hypotheses(Chi(TWO_SQRT_PI, (1,), (Fraction(1, 2),)), "reciprocal")
    assert "<= 1" in exc.value.hypothesis


def test_hypotheses_theta_abc():
    assert check_hypotheses(ThetaABC(Fraction(1, 2), 2, 1), "reciprocal")["a*zeta(b)*Gamma(c) <= 1"]
    with pytest.raises(HypothesisViolation):
        check_hypotheses(ThetaABC(1, 1, 1), "reciprocal")
    with pytest.raises(HypothesisViolation):
        check_hypotheses(ThetaABC(1, 2, 1), "reciprocal")
    # non-closed-form zeta(3): 1/2 * 1.202 * 1 < 1
    assert check_hypotheses(ThetaABC(Fraction(1, 2), 3, 1), "reciprocal")


def test_hypotheses_g_factorial():
    assert check_hypotheses(GFactorial(0, 0, 0, 2, 1, 1), "d2log")
    with pytest.raises(HypothesisViolation):
        check_hypotheses(GFactorial(0, 2, 0, 2, 1, 1), "d2log")


def test_lcm_chi_small_grid():
    rep = lcm_check(Chi(TWO_SQRT_PI, (1,), (Fraction(1, 2),)), "function", 1, 4, ["1/10", 1, 7, 40])
    assert rep.certified
    assert len(rep.verdicts) == 4 and len(rep.verdicts[0]) == 4


def test_lcm_detects_violation():
    # F(2,1,1,0,0,0) = (binom(2x, x))^(1/x) increases, so (log F)' > 0 breaks order 1
    rep = lcm_check(FGamma(2, 1, 1, 0, 0, 0), "function", 1, 2, [1, 2, 3])
    assert rep.conclusion["status"] == "violated"
    assert rep.conclusion["order"] == 1


def test_lcm_argument_errors():
    chi = Chi(TWO_SQRT_PI, (1,), (Fraction(1, 2),))
    with pytest.raises(OrderTooHigh):
        lcm_check(chi, "function", 1, MAX_ORDER + 1, [1])
    with pytest.raises(ValueError):
        lcm_check(chi, "function", 0, 2, [1])
    with pytest.raises(ValueError):
        lcm_check(chi, "sideways", 1, 2, [1])
    with pytest.raises(DomainError):
        lcm_check(chi, "function", 1, 2, [0])


def test_h_value_spot():
    assert h_value(log(ball(2, 256)), 0, 2, 2, 256).contains(Fraction(1, 3))
    # u = 0, t = 1: 1/(1-e^-1) - e^-2/(1-e^-2) - 1/(1-e^-2)
    ref = 1 / (1 - mpmath.e**-1) - (1 + mpmath.e**-2) / (1 - mpmath.e**-2)
    assert h_value(1, 0, 2, 2, 256).contains(ref)


def test_h_scan_small_grid_positive():
    rep = h_scan(2, 2, [Fraction(k, 10) for k in range(1, 30)], [Fraction(-k, 10) for k in range(11)])
    assert rep.all_positive and not rep.indeterminate
    assert rep.min_value.is_positive()


def test_h_scan_bad_params():
    with pytest.raises(BadParams):
        h_scan(1, 2, [1], [0])
    with pytest.raises(BadParams):
        h_scan(Fraction(3, 2), Fraction(3, 2), [1], [0])
    with pytest.raises(DomainError):
        h_scan(2, 2, [0], [0])


def test_f_decreasing():
    v = f_decreasing_check([0, Fraction(1, 2), 1, 2, 5, 10])
    assert v.holds
    with pytest.raises(ValueError):
        f_decreasing_check([1, 1])


def test_criterion_root_increasing_gamma():
    # f = Gamma(x+1): log-convex, increasing past x = 0.47, f(1/2) < 1
    rep = criterion_root_increasing(
        lambda x, order, prec: loggamma_jet(x + 1, order, prec), Fraction(1, 2), [Fraction(1, 2), 1, 2, 5, 20]
    )
    assert rep.hypotheses_hold
    assert rep.conclusion_holds


def test_sandwich_exact_values():
    assert sandwich_first(4) == Fraction(-117)
    assert sandwich_first(5) > 0
    assert sandwich_second(8) > 0


def test_sandwich_verdicts():
    first, second = derangement_sandwich(4, 100)
    assert not first.holds and first.first_violation["index"] == 4
    assert first.first_violation["value"] == "-117"
    assert second.holds
    first5, _ = derangement_sandwich(5, 100)
    assert first5.holds
    with pytest.raises(BadRange):
        derangement_sandwich(3, 10)
    with pytest.raises(BadRange):
        derangement_sandwich(4, 10, 7)


def test_derangement_distance():
    for n in (3, 10, 50, 200):
        assert derangement_distance(n).is_positive()
    assert derangement_distance(3).contains(mpmath.mpf(1) / 2 - abs(2 - 6 / mpmath.e))
