"""Exact real parameters: rationals times powers of sqrt(pi) and e.

Hypotheses such as ``rho * Gamma(1)/Gamma(1/2) >= 1`` with
``rho = 2 sqrt(pi)`` cancel exactly in this representation, so they can be
decided without rounding.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Union

from .ball import DEFAULT_PREC, Ball, ball, exp, pi, sqrt

__all__ = ["SymbolicReal", "parse_real", "to_ball", "gamma_exact", "Real"]


@dataclass(frozen=True)
class SymbolicReal:
    """coef * sqrt(pi)**sqrtpi_pow * e**e_pow."""

    coef: Fraction
    sqrtpi_pow: int = 0
    e_pow: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coef", Fraction(self.coef))

    @property
    def is_rational(self) -> bool:
        return self.coef == 0 or (self.sqrtpi_pow == 0 and self.e_pow == 0)

    def rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self.coef

    def __mul__(self, other):
        o = _lift(other)
        return SymbolicReal(self.coef * o.coef, self.sqrtpi_pow + o.sqrtpi_pow, self.e_pow + o.e_pow)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _lift(other)
        return SymbolicReal(self.coef / o.coef, self.sqrtpi_pow - o.sqrtpi_pow, self.e_pow - o.e_pow)

    def to_ball(self, prec=DEFAULT_PREC) -> Ball:
        out = ball(self.coef, prec)
        if self.sqrtpi_pow:
            out = out * sqrt(pi(prec)) ** self.sqrtpi_pow
        if self.e_pow:
            out = out * exp(ball(self.e_pow, prec))
        return out

    def __str__(self):
        parts = [str(self.coef)]
        if self.sqrtpi_pow:
            parts.append(f"sqrtpi^{self.sqrtpi_pow}")
        if self.e_pow:
            parts.append(f"e^{self.e_pow}")
        return "*".join(parts)


Real = Union[int, Fraction, SymbolicReal]


def _lift(v) -> SymbolicReal:
    if isinstance(v, SymbolicReal):
        return v
    return SymbolicReal(Fraction(v))


def to_ball(v, prec=DEFAULT_PREC) -> Ball:
    if isinstance(v, SymbolicReal):
        return v.to_ball(prec)
    return ball(v, prec)


_NAMED = {
    "pi": SymbolicReal(1, 2),
    "sqrtpi": SymbolicReal(1, 1),
    "sqrt(pi)": SymbolicReal(1, 1),
    "e": SymbolicReal(1, 0, 1),
}
_LEADING = re.compile(r"^([+-]?\d+(?:/\d+)?)(pi|sqrtpi|sqrt\(pi\)|e)$")


def parse_real(text: str) -> Union[Fraction, SymbolicReal]:
    """Parse ``3/2``, ``pi``, ``2sqrtpi``, ``2*sqrt(pi)``, ``1/2*e`` ... (no decimals).

    Plain rationals come back as :class:`Fraction`.
    """
    text = text.strip().replace(" ", "")
    if not text:
        raise ValueError("empty number")
    value = SymbolicReal(1)
    for tok in text.split("*"):
        m = _LEADING.match(tok)
        if m:
            value = value * Fraction(m.group(1)) * _NAMED[m.group(2)]
        elif tok in _NAMED:
            value = value * _NAMED[tok]
        elif re.fullmatch(r"[+-]?\d+(/\d+)?", tok):
            value = value * Fraction(tok)
        else:
            raise ValueError(f"not an exact rational or named constant: {tok!r}")
    return value.coef if value.is_rational else value


def gamma_exact(q) -> Optional[SymbolicReal]:
    """Gamma(q) in closed form for positive integers and half-integers, else None."""
    q = Fraction(q)
    if q <= 0:
        return None
    if q.denominator == 1:
        return SymbolicReal(factorial(q.numerator - 1))
    if q.denominator == 2:
        n = (q.numerator - 1) // 2
        # Gamma(n + 1/2) = (2n)! / (4^n n!) sqrt(pi)
        return SymbolicReal(Fraction(factorial(2 * n), 4**n * factorial(n)), 1)
    return None
