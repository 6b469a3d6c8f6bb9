"""Composite functions built from zeta and Gamma, evaluated as balls.

theta(x)          = (2 zeta(x) Gamma(x+1))^(1/x)
theta_abc(x)      = (a zeta(x+b) Gamma(x+c))^(1/x)
F(x)              = (Gamma(ax+b+1) / (Gamma(cx+d+1) Gamma(ex+f+1)))^(1/x)
G(x)              = Gamma(n0+ax+1) / (Gamma(k0+bx+1) Gamma(kbar0+bbar x+1))
chi(x)            = (rho prod Gamma(x+a_i)/Gamma(x+b_i))^(1/x)

For a function of the form ``exp(g(x)/x)`` the identity

    x^3 (g/x)'' = x^2 g'' - 2 x g' + 2 g

is used throughout; the "scaled" helpers return the right-hand side.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

from ..errors import BadParams, DomainError
from .ball import DEFAULT_PREC, Ball, ball, exp, ln2, log, pi
from .scan import DEFAULT_POLICY, PrecPolicy, SignVerdict, certify_sign
from .special import ZETA_MIN_X, log_gamma, log_zeta_jet, loggamma_jet, polygamma, zeta_derivs
from .symbolic import SymbolicReal, to_ball

__all__ = [
    "theta",
    "log_theta_second",
    "zeta_part_scaled",
    "zeta_part_majorant",
    "gamma_part_scaled",
    "gamma_envelopes",
    "log_F_second",
    "log_F_second_scaled",
    "log_F_envelope",
    "eta_margin",
    "check_eta_bound",
    "alzer_check",
    "ALZER_INEQUALITIES",
    "classify_F",
    "FClass",
    "Theta",
    "ThetaABC",
    "FGamma",
    "GFactorial",
    "Chi",
    "FunctionSpec",
]


def _x(x, prec) -> Ball:
    if isinstance(x, Ball):
        return x if x.prec == prec else x.with_prec(prec)
    return ball(x, prec)


def _zeta_domain(x: Ball):
    if not (x - Fraction(101, 100)).is_positive():
        raise DomainError(f"zeta-based expressions need x > {ZETA_MIN_X}, got {x!r}")


def _scaled_second(g0: Ball, g1: Ball, g2: Ball, x: Ball) -> Ball:
    return x * x * g2 - 2 * x * g1 + 2 * g0


def theta(x, prec: int = DEFAULT_PREC) -> Ball:
    x = _x(x, prec)
    _zeta_domain(x)
    lz = log(zeta_derivs(0, x, prec))
    return exp((ln2(prec) + lz + log_gamma(x + 1, prec)) / x)


def zeta_part_scaled(x, prec: int = DEFAULT_PREC) -> Ball:
    """x^3 (log zeta(x) / x)''."""
    xb = _x(x, prec)
    _zeta_domain(xb)
    L = log_zeta_jet(2, x if isinstance(x, (int, Fraction)) else xb, prec)
    x = xb
    return _scaled_second(L[0], L[1], L[2], x)


def zeta_part_majorant(x, prec: int = DEFAULT_PREC) -> Ball:
    """x^2 zeta''/zeta - 2x zeta'/zeta + 2 log zeta: drops the -x^2 (zeta'/zeta)^2 term."""
    from .special import zeta_jet

    x = _x(x, prec)
    _zeta_domain(x)
    z0, z1, z2 = zeta_jet(2, x, prec)
    return x * x * z2 / z0 - 2 * x * z1 / z0 + 2 * log(z0)


def gamma_part_scaled(a, b, x, prec: int = DEFAULT_PREC) -> Ball:
    """x^3 (log Gamma(ax+b+1) / x)''."""
    x = _x(x, prec)
    a_ = to_ball(a, prec)
    y = a_ * x + to_ball(b, prec) + 1
    if not y.is_positive():
        raise DomainError(f"Gamma argument a*x+b+1 must be positive, got {y!r}")
    lg = log_gamma(y, prec)
    if a == 0:
        return 2 * lg
    return a_ * a_ * x * x * polygamma(1, y, prec) - 2 * a_ * x * polygamma(0, y, prec) + 2 * lg


def log_theta_second(x, prec: int = DEFAULT_PREC) -> Ball:
    """(log theta)''(x) for theta(x) = (2 zeta(x) Gamma(x+1))^(1/x)."""
    xb = _x(x, prec)
    _zeta_domain(xb)
    total = 2 * ln2(prec) + zeta_part_scaled(x, prec) + gamma_part_scaled(1, 0, xb, prec)
    return total / (xb * xb * xb)


def gamma_envelopes(a, b, x, prec: int = DEFAULT_PREC) -> Tuple[Ball, Ball]:
    """Lower and upper bounds for x^3 (log Gamma(ax+b+1)/x)'' (a > 0, b >= -1, ax+b >= 0)."""
    a, b, xq = Fraction(a), Fraction(b), Fraction(x) if not isinstance(x, Ball) else None
    if a <= 0 or b < -1:
        raise DomainError(f"envelopes need a > 0 and b >= -1, got a={a}, b={b}")
    if xq is not None and a * xq + b < 0:
        raise DomainError(f"envelopes need a*x + b >= 0, got {a * xq + b}")
    xb = _x(x, prec)
    y = a * xb + b + 1
    common = -a * xb + (2 * b + 1) * log(y) - 3 * b + log(2 * pi(prec))
    lower = common - 3
    upper = common - Fraction(3, 2) + (b * b + b + Fraction(1, 2)) / y
    return lower, upper


# ---------------------------------------------------------------------------
# F


@dataclass(frozen=True)
class FGamma:
    """Parameters in the order (a, c, e, b, d, f): slopes first, then shifts."""

    a: Fraction
    c: Fraction
    e: Fraction
    b: Fraction
    d: Fraction
    f: Fraction
    quotient = True
    name = "f-gamma"

    def __post_init__(self):
        for key in "acebdf":
            object.__setattr__(self, key, Fraction(getattr(self, key)))
        if min(self.a, self.c, self.e) < 0:
            raise BadParams("F needs a, c, e >= 0")

    @property
    def factors(self):
        return ((self.a, self.b, 1), (self.c, self.d, -1), (self.e, self.f, -1))

    def check_domain(self, x: Fraction):
        for alpha, beta, _ in self.factors:
            if alpha * x + beta + 1 <= 0:
                raise DomainError(f"Gamma({alpha}x+{beta}+1) undefined at x={x}")
        if x <= 0:
            raise DomainError("F is defined through a 1/x power; need x > 0")

    def numerator_jet(self, x: Ball, order: int, prec: int) -> List[Ball]:
        out = [ball(0, prec) for _ in range(order + 1)]
        for alpha, beta, sgn in self.factors:
            jet = loggamma_jet(alpha * x + beta + 1, order, prec)
            scale = ball(1, prec)
            for k in range(order + 1):
                if k and alpha == 0:
                    break
                term = jet[k] * scale
                out[k] = out[k] + term if sgn > 0 else out[k] - term
                scale = scale * alpha
        return out


def _f_params(params) -> FGamma:
    return params if isinstance(params, FGamma) else FGamma(*params)


def log_F_second_scaled(params, x, prec: int = DEFAULT_PREC) -> Ball:
    """x^3 (log F)''(x)."""
    p = _f_params(params)
    out = gamma_part_scaled(p.a, p.b, x, prec)
    out = out - gamma_part_scaled(p.c, p.d, x, prec)
    return out - gamma_part_scaled(p.e, p.f, x, prec)


def log_F_second(params, x, prec: int = DEFAULT_PREC) -> Ball:
    """(log F)''(x) from polygamma values (no envelope)."""
    xb = _x(x, prec)
    return log_F_second_scaled(params, xb, prec) / (xb * xb * xb)


def log_F_envelope(params, x, prec: int = DEFAULT_PREC) -> Ball:
    """Upper bound for x^3 (log F)'' assembled from the Gamma envelopes."""
    p = _f_params(params)
    if min(p.a, p.c, p.e) <= 0:
        raise DomainError("the envelope needs a, c, e > 0")
    _, up = gamma_envelopes(p.a, p.b, x, prec)
    low_c, _ = gamma_envelopes(p.c, p.d, x, prec)
    low_e, _ = gamma_envelopes(p.e, p.f, x, prec)
    return up - low_c - low_e


class FClass(str, enum.Enum):
    CONCAVE = "asymp_log_concave"
    CONVEX = "asymp_log_convex"
    INDETERMINATE = "indeterminate"


def classify_F(params) -> Tuple[FClass, str]:
    """Asymptotic log-behaviour of F from its parameters alone."""
    p = _f_params(params)
    a, b, c, d, e, f = p.a, p.b, p.c, p.d, p.e, p.f
    if a > c + e:
        return FClass.CONCAVE, "case-i"
    if a < c + e:
        return FClass.CONVEX, "case-iv"
    if c >= e > 0 and b < d + f + Fraction(1, 2):
        return FClass.CONCAVE, "case-ii"
    if c > e == 0 and b < d:
        return FClass.CONCAVE, "case-iii"
    return FClass.INDETERMINATE, "none"


# ---------------------------------------------------------------------------
# eta and the Alzer inequalities


def eta_margin(x, prec: int = DEFAULT_PREC) -> Ball:
    """3 * 2^-x - (zeta(x) - 1)."""
    x = _x(x, prec)
    return 3 * exp(-x * ln2(prec)) - (zeta_derivs(0, x, prec) - 1)


def check_eta_bound(x, prec: int = None, policy: PrecPolicy = DEFAULT_POLICY) -> SignVerdict:
    """Positive verdict certifies zeta(x) - 1 <= 3 / 2^x at x (x >= 4)."""
    if Fraction(x) < 4:
        raise DomainError(f"the eta bound is stated for x >= 4, got {x}")
    if prec is not None:
        policy = PrecPolicy(prec, max(prec, policy.cap))
    return certify_sign(eta_margin, Fraction(x), policy=policy)


def _alzer_7(x, prec):
    x = _x(x, prec)
    return (x - Fraction(1, 2)) * log(x) - x + log(2 * pi(prec)) / 2 + 1 / (12 * x) - log_gamma(x, prec)


def _alzer_8(x, prec):
    x = _x(x, prec)
    return polygamma(0, x, prec) - log(x) + 1 / (2 * x) + 1 / (12 * x * x)


def _alzer_9(x, prec):
    x = _x(x, prec)
    return 1 / x + 1 / (2 * x * x) + 1 / (6 * x * x * x) - polygamma(1, x, prec)


def _alzer_10(x, prec):
    x = _x(x, prec)
    return log_gamma(x, prec) - (x - Fraction(1, 2)) * log(x) + x - log(2 * pi(prec)) / 2


def _alzer_11(x, prec):
    x = _x(x, prec)
    return log(x) - 1 / (2 * x) - polygamma(0, x, prec)


def _alzer_12(x, prec):
    x = _x(x, prec)
    return polygamma(1, x, prec) - 1 / x - 1 / (2 * x * x)


ALZER_INEQUALITIES = (
    ("log Gamma(x) < (x-1/2)log x - x + log sqrt(2pi) + 1/(12x)", _alzer_7),
    ("psi(x) > log x - 1/(2x) - 1/(12x^2)", _alzer_8),
    ("psi'(x) < 1/x + 1/(2x^2) + 1/(6x^3)", _alzer_9),
    ("log Gamma(x) > (x-1/2)log x - x + log sqrt(2pi)", _alzer_10),
    ("psi(x) < log x - 1/(2x)", _alzer_11),
    ("psi'(x) > 1/x + 1/(2x^2)", _alzer_12),
)


def alzer_check(x, policy: PrecPolicy = DEFAULT_POLICY) -> List[SignVerdict]:
    """Six verdicts; each is Positive when its inequality is certified at x."""
    if Fraction(x) <= 0:
        raise DomainError(f"the Gamma inequalities need x > 0, got {x}")
    return [certify_sign(fn, Fraction(x), policy=policy) for _, fn in ALZER_INEQUALITIES]


# ---------------------------------------------------------------------------
# function specs used by the certifier


@dataclass(frozen=True)
class Theta:
    """(2 zeta(x) Gamma(x+1))^(1/x)."""

    quotient = True
    name = "theta"

    def check_domain(self, x: Fraction):
        if x <= Fraction(101, 100):
            raise DomainError(f"theta needs x > {ZETA_MIN_X}")

    def numerator_jet(self, x: Ball, order: int, prec: int) -> List[Ball]:
        return _theta_like_jet(ball(2, prec), x, ball(0, prec), x + 1, order, prec)


@dataclass(frozen=True)
class ThetaABC:
    """(a zeta(x+b) Gamma(x+c))^(1/x)."""

    a: Union[Fraction, SymbolicReal]
    b: Fraction
    c: Fraction
    quotient = True
    name = "theta-abc"

    def __post_init__(self):
        if not isinstance(self.a, SymbolicReal):
            object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        object.__setattr__(self, "c", Fraction(self.c))
        if to_ball(self.a, 64).is_positive() is False or self.b <= 0 or self.c <= 0:
            raise BadParams("theta_abc needs a, b, c > 0")

    def check_domain(self, x: Fraction):
        if x <= 0 or x + self.b <= Fraction(101, 100) or x + self.c <= 0:
            raise DomainError(f"theta_abc undefined (or uncertifiable) at x={x}")

    def numerator_jet(self, x: Ball, order: int, prec: int) -> List[Ball]:
        return _theta_like_jet(to_ball(self.a, prec), x, ball(self.b, prec), x + self.c, order, prec)


def _theta_like_jet(a: Ball, x: Ball, b: Ball, gamma_arg: Ball, order: int, prec: int) -> List[Ball]:
    lz = log_zeta_jet(order, x + b, prec)
    lg = loggamma_jet(gamma_arg, order, prec)
    out = [lz[k] + lg[k] for k in range(order + 1)]
    out[0] = out[0] + log(a)
    return out


@dataclass(frozen=True)
class GFactorial:
    """Gamma(n0+ax+1) / (Gamma(k0+bx+1) Gamma(kbar0+bbar x+1)); its log is not divided by x."""

    n0: int
    k0: int
    kbar0: int
    a: int
    b: int
    bbar: int
    quotient = False
    name = "g-factorial"

    def __post_init__(self):
        if min(self.n0, self.k0, self.kbar0) < 0 or min(self.a, self.b, self.bbar) < 1:
            raise BadParams("g-factorial needs n0, k0, kbar0 >= 0 and a, b, bbar >= 1")

    @property
    def as_f(self) -> FGamma:
        return FGamma(self.a, self.b, self.bbar, self.n0, self.k0, self.kbar0)

    @property
    def hypotheses(self) -> dict:
        u = self.k0 - Fraction((self.n0 + 1) * self.b, self.a)
        return {"a >= b + bbar": self.a >= self.b + self.bbar, "-1 <= k0 - (n0+1)b/a <= 0": -1 <= u <= 0}

    def check_domain(self, x: Fraction):
        if x < 0:
            raise DomainError("g-factorial is considered for x >= 0")

    def numerator_jet(self, x: Ball, order: int, prec: int) -> List[Ball]:
        return self.as_f.numerator_jet(x, order, prec)


@dataclass(frozen=True)
class Chi:
    """(rho prod Gamma(x+a_i)/Gamma(x+b_i))^(1/x)."""

    rho: Union[Fraction, SymbolicReal]
    a_list: Tuple[Fraction, ...]
    b_list: Tuple[Fraction, ...]
    quotient = True
    name = "chi"

    def __post_init__(self):
        if not isinstance(self.rho, SymbolicReal):
            object.__setattr__(self, "rho", Fraction(self.rho))
        a = tuple(Fraction(v) for v in self.a_list)
        b = tuple(Fraction(v) for v in self.b_list)
        object.__setattr__(self, "a_list", a)
        object.__setattr__(self, "b_list", b)
        if len(a) != len(b) or not a:
            raise BadParams("chi needs equal-length, non-empty a and b lists")
        for seq in (a, b):
            if seq[0] < 0 or any(u > v for u, v in zip(seq, seq[1:])):
                raise BadParams("chi parameter lists must be nonnegative and weakly increasing")
        if not to_ball(self.rho, 64).is_positive():
            raise BadParams("chi needs rho > 0")

    def check_domain(self, x: Fraction):
        if x <= 0:
            raise DomainError("chi is defined for x > 0")

    def numerator_jet(self, x: Ball, order: int, prec: int) -> List[Ball]:
        out = [ball(0, prec) for _ in range(order + 1)]
        out[0] = log(to_ball(self.rho, prec))
        for ai, bi in zip(self.a_list, self.b_list):
            ja = loggamma_jet(x + ai, order, prec)
            jb = loggamma_jet(x + bi, order, prec)
            for k in range(order + 1):
                out[k] = out[k] + ja[k] - jb[k]
        return out


FunctionSpec = Union[Theta, ThetaABC, FGamma, GFactorial, Chi]
