"""Exact generators for the sequence families under study.

Every value is a Python ``int`` or :class:`fractions.Fraction`; nothing here
touches floating point.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Tuple, Union

from .errors import GeneratorError, NonPositiveValue

__all__ = [
    "bernoulli",
    "bernoulli_abs_even",
    "tangent",
    "fuss_catalan",
    "binomial_family",
    "derangement",
    "factorial_ratio",
    "generate_prefix",
    "BernoulliAbsEven",
    "Tangent",
    "FussCatalan",
    "BinomialFamily",
    "Derangement",
    "FactorialRatio",
    "Literal",
    "SequenceSpec",
    "SequencePrefix",
]

Exact = Union[int, Fraction]

# B_0, B_1, ... filled on demand; readers never see a half-written entry
# because the list only grows by append under the lock.
_bernoulli_table = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def _extend_bernoulli(n: int) -> None:
    with _bernoulli_lock:
        table = _bernoulli_table
        for m in range(len(table), n + 1):
            # sum_{k=0}^{m} C(m+1, k) B_k = 0
            s = Fraction(0)
            for k in range(m):
                bk = table[k]
                if bk:
                    s += comb(m + 1, k) * bk
            table.append(-s / (m + 1))


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n (convention B_1 = -1/2) via the binomial recurrence."""
    if n < 0:
        raise ValueError(f"bernoulli index must be >= 0, got {n}")
    if n >= len(_bernoulli_table):
        _extend_bernoulli(n)
    return _bernoulli_table[n]


def bernoulli_abs_even(n: int) -> Fraction:
    """(-1)^(n-1) B_{2n}, strictly positive for n >= 1."""
    if n < 1:
        raise ValueError(f"bernoulli_abs_even needs n >= 1, got {n}")
    value = bernoulli(2 * n)
    return value if n % 2 else -value


def tangent(n: int) -> int:
    """Tangent number T(n), with tan x = sum T(n) x^(2n-1)/(2n-1)!, so T(1) = 1."""
    if n < 1:
        raise ValueError(f"tangent needs n >= 1, got {n}")
    value = bernoulli_abs_even(n) * (4**n - 1) * 4**n / (2 * n)
    if value.denominator != 1:
        raise GeneratorError(f"T({n}) came out non-integral: {value}")
    return value.numerator


def fuss_catalan(p: int, n: int) -> int:
    """C_p(n) = binom(pn, n) / ((p-1)n + 1)."""
    if p < 2 or n < 0:
        raise ValueError(f"fuss_catalan needs p >= 2 and n >= 0, got p={p}, n={n}")
    q, r = divmod(comb(p * n, n), (p - 1) * n + 1)
    if r:
        raise GeneratorError(f"C_{p}({n}) came out non-integral")
    return q


def binomial_family(a: int, c: int, n: int) -> int:
    """binom(an, cn)."""
    if not a > c >= 1 or n < 0:
        raise ValueError(f"binomial_family needs a > c >= 1 and n >= 0, got a={a}, c={c}, n={n}")
    return comb(a * n, c * n)


_derangements = [1, 0]
_derangement_lock = threading.Lock()


def derangement(n: int) -> int:
    """Number of fixed-point-free permutations of n elements."""
    if n < 0:
        raise ValueError(f"derangement needs n >= 0, got {n}")
    if n >= len(_derangements):
        with _derangement_lock:
            d = _derangements
            for m in range(len(d), n + 1):
                d.append((m - 1) * (d[m - 1] + d[m - 2]))
    return _derangements[n]


# ---------------------------------------------------------------------------
# sequence specs


@dataclass(frozen=True)
class BernoulliAbsEven:
    name = "bernoulli-abs"
    offset = 1

    def term(self, n: int) -> Exact:
        return bernoulli_abs_even(n)


@dataclass(frozen=True)
class Tangent:
    name = "tangent"
    offset = 1

    def term(self, n: int) -> Exact:
        return tangent(n)


@dataclass(frozen=True)
class FussCatalan:
    p: int = 2
    name = "fuss-catalan"
    offset = 0

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"FussCatalan needs p >= 2, got {self.p}")

    def term(self, n: int) -> Exact:
        return fuss_catalan(self.p, n)


@dataclass(frozen=True)
class BinomialFamily:
    a: int
    c: int
    name = "binomial"
    offset = 0

    def __post_init__(self):
        if not self.a > self.c >= 1:
            raise ValueError(f"BinomialFamily needs a > c >= 1, got a={self.a}, c={self.c}")

    def term(self, n: int) -> Exact:
        return binomial_family(self.a, self.c, n)


@dataclass(frozen=True)
class Derangement:
    # d_0 = 1, d_1 = 0: the first strictly positive run starts at d_2
    name = "derangement"
    offset = 2

    def term(self, n: int) -> Exact:
        return derangement(n)


@dataclass(frozen=True)
class FactorialRatio:
    """(n0 + i a)! / ((k0 + i b)! (kbar0 + i bbar)!) for i = 0, 1, ..."""

    n0: int
    k0: int
    kbar0: int
    a: int
    b: int
    bbar: int
    name = "factorial-ratio"
    offset = 0

    def __post_init__(self):
        if min(self.n0, self.k0, self.kbar0) < 0:
            raise ValueError("n0, k0, kbar0 must be nonnegative")
        if min(self.a, self.b, self.bbar) < 1:
            raise ValueError("a, b, bbar must be positive")

    @property
    def shift(self) -> Fraction:
        """u = k0 - (n0 + 1) b / a."""
        return self.k0 - Fraction((self.n0 + 1) * self.b, self.a)

    @property
    def hypotheses(self) -> dict:
        return {
            "a >= b + bbar": self.a >= self.b + self.bbar,
            "-1 <= k0 - (n0+1)b/a <= 0": -1 <= self.shift <= 0,
        }

    @property
    def hypotheses_hold(self) -> bool:
        return all(self.hypotheses.values())

    def term(self, i: int) -> Exact:
        return factorial_ratio(self, i)


@dataclass(frozen=True)
class Literal:
    values: Tuple[Exact, ...]
    offset: int = 0
    name = "literal"

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def term(self, n: int) -> Exact:
        return self.values[n - self.offset]


SequenceSpec = Union[
    BernoulliAbsEven, Tangent, FussCatalan, BinomialFamily, Derangement, FactorialRatio, Literal
]


def factorial_ratio(spec: FactorialRatio, i: int) -> Fraction:
    if i < 0:
        raise ValueError(f"factorial_ratio needs i >= 0, got {i}")
    num = factorial(spec.n0 + i * spec.a)
    den = factorial(spec.k0 + i * spec.b) * factorial(spec.kbar0 + i * spec.bbar)
    return Fraction(num, den)


@dataclass(frozen=True)
class SequencePrefix:
    """values[i] is the term with index offset + i."""

    spec: SequenceSpec
    offset: int
    values: Tuple[Fraction, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))
        if not self.values:
            raise ValueError("a prefix needs at least one value")

    def __len__(self) -> int:
        return len(self.values)

    @property
    def last_index(self) -> int:
        return self.offset + len(self.values) - 1

    @property
    def indices(self) -> range:
        return range(self.offset, self.offset + len(self.values))

    def at(self, n: int) -> Fraction:
        return self.values[n - self.offset]


def generate_prefix(spec: SequenceSpec, n_max: int = None, start: int = None) -> SequencePrefix:
    """Values of ``spec`` for indices ``start..n_max`` (``start`` defaults to the family offset).

    A Literal spec passes through unchanged and ignores ``n_max``.
    """
    if isinstance(spec, Literal):
        values = spec.values
        first = spec.offset
    else:
        first = spec.offset if start is None else start
        if first < spec.offset:
            raise ValueError(f"{spec.name} starts at index {spec.offset}, asked for {first}")
        if n_max is None or n_max < first:
            raise ValueError(f"n_max must be >= {first}, got {n_max}")
        values = tuple(Fraction(spec.term(n)) for n in range(first, n_max + 1))
    for i, v in enumerate(values):
        if v <= 0:
            raise NonPositiveValue(first + i, v)
    return SequencePrefix(spec, first, values)
