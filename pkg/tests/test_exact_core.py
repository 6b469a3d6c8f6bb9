import itertools
from fractions import Fraction
from math import comb, factorial

import pytest

from logmono.errors import GeneratorError, NonPositiveValue
from logmono.exact_core import (
    BernoulliAbsEven,
    BinomialFamily,
    Derangement,
    FactorialRatio,
    FussCatalan,
    Literal,
    Tangent,
    bernoulli,
    bernoulli_abs_even,
    binomial_family,
    derangement,
    factorial_ratio,
    fuss_catalan,
    generate_prefix,
    tangent,
)


def _bernoulli_by_hand(n):
    # independent O(n^2) run of sum_{k<=m} C(m+1,k) B_k = 0
    b = [Fraction(1)]
    for m in range(1, n + 1):
        b.append(-sum(comb(m + 1, k) * b[k] for k in range(m)) / (m + 1))
    return b[n]


@pytest.mark.parametrize("n, expected", [(0, 1), (1, Fraction(-1, 2)), (2, Fraction(1, 6)), (3, 0), (4, Fraction(-1, 30))])
def test_bernoulli_small(n, expected):
    assert bernoulli(n) == expected


def test_bernoulli_matches_independent_recurrence():
    for n in range(0, 40):
        assert bernoulli(n) == _bernoulli_by_hand(n)


def test_bernoulli_frozen_large():
    assert bernoulli(20) == Fraction(-174611, 330)
    assert bernoulli(30) == Fraction(8615841276005, 14322)


def test_bernoulli_odd_vanish():
    assert all(bernoulli(2 * k + 1) == 0 for k in range(1, 30))


def test_bernoulli_negative_rejected():
    with pytest.raises(ValueError):
        bernoulli(-1)


@pytest.mark.parametrize("n, expected", [(1, Fraction(1, 6)), (2, Fraction(1, 30)), (3, Fraction(1, 42)), (4, Fraction(1, 30))])
def test_bernoulli_abs_even(n, expected):
    assert bernoulli_abs_even(n) == expected


def test_bernoulli_abs_even_positive():
    assert all(bernoulli_abs_even(n) > 0 for n in range(1, 80))


def test_bernoulli_abs_even_rejects_zero():
    with pytest.raises(ValueError):
        bernoulli_abs_even(0)


def test_tangent_values():
    assert [tangent(n) for n in range(1, 7)] == [1, 2, 16, 272, 7936, 353792]


def test_tangent_bernoulli_consistency():
    for n in range(1, 51):
        assert tangent(n) * 2 * n == bernoulli_abs_even(n) * (4**n - 1) * 4**n


def test_tangent_from_series():
    # tan^(m)(x) = P_m(tan x) with P_{m+1}(t) = P_m'(t) (1 + t^2); T(n) = P_{2n-1}(0)
    poly = [0, 1]
    values = []
    for m in range(1, 12):
        deriv = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            if i:
                deriv[i - 1] += i * c
                deriv[i + 1] += i * c
        poly = deriv
        if m % 2 == 1:
            values.append(poly[0])
    assert values == [tangent(n) for n in range(1, 7)]


def test_tangent_rejects_zero():
    with pytest.raises(ValueError):
        tangent(0)


@pytest.mark.parametrize("p, n, expected", [(2, 0, 1), (2, 3, 5), (3, 3, 12), (2, 10, 16796), (4, 2, 4)])
def test_fuss_catalan(p, n, expected):
    assert fuss_catalan(p, n) == expected


def test_fuss_catalan_lattice_paths():
    # C_3(n) counts ternary trees: 1, 1, 3, 12, 55, 273
    assert [fuss_catalan(3, n) for n in range(6)] == [1, 1, 3, 12, 55, 273]


@pytest.mark.parametrize("a, c, n, expected", [(2, 1, 0, 1), (2, 1, 3, 20), (5, 2, 1, 10), (3, 1, 2, 15)])
def test_binomial_family(a, c, n, expected):
    assert binomial_family(a, c, n) == expected


def test_binomial_family_bad_params():
    with pytest.raises(ValueError):
        BinomialFamily(2, 2)
    with pytest.raises(ValueError):
        binomial_family(1, 1, 3)


def _count_derangements(n):
    return sum(1 for p in itertools.permutations(range(n)) if all(p[i] != i for i in range(n)))


def test_derangement_enumeration():
    for n in range(0, 8):
        assert derangement(n) == _count_derangements(n)


def test_derangement_frozen():
    assert derangement(4) == 9
    assert derangement(6) == 265
    assert derangement(10) == 1334961


def test_factorial_ratio_examples():
    assert factorial_ratio(FactorialRatio(0, 0, 1, 2, 1, 1), 3) == 5
    assert factorial_ratio(FactorialRatio(0, 0, 0, 2, 1, 1), 2) == 6
    assert factorial_ratio(FactorialRatio(0, 0, 0, 3, 1, 2), 0) == 1


def test_factorial_ratio_specialisations():
    cat = FactorialRatio(0, 0, 1, 2, 1, 1)
    cen = FactorialRatio(0, 0, 0, 2, 1, 1)
    for i in range(0, 101):
        assert cat.term(i) == fuss_catalan(2, i)
        assert cen.term(i) == binomial_family(2, 1, i)


def test_factorial_ratio_hypotheses():
    assert FactorialRatio(0, 0, 1, 2, 1, 1).hypotheses_hold
    assert FactorialRatio(0, 0, 0, 3, 1, 2).hypotheses_hold
    # u = k0 - (n0+1) b / a = 2 - 1/2 > 0
    bad = FactorialRatio(0, 2, 0, 2, 1, 1)
    assert bad.shift == Fraction(3, 2)
    assert not bad.hypotheses_hold
    assert not FactorialRatio(0, 0, 0, 2, 1, 2).hypotheses["a >= b + bbar"]


def test_factorial_ratio_non_integer_values():
    spec = FactorialRatio(0, 1, 1, 2, 1, 1)
    assert spec.term(1) == Fraction(factorial(2), factorial(2) * factorial(2))


def test_generate_prefix_tangent():
    pre = generate_prefix(Tangent(), 3)
    assert pre.offset == 1
    assert list(pre.values) == [1, 2, 16]
    assert pre.at(3) == 16
    assert pre.last_index == 3


def test_generate_prefix_catalan():
    pre = generate_prefix(FussCatalan(2), 4)
    assert pre.offset == 0
    assert list(pre.values) == [1, 1, 2, 5, 14]


def test_generate_prefix_literal_passthrough():
    pre = generate_prefix(Literal((1, 2, 4, 8)))
    assert list(pre.values) == [1, 2, 4, 8]
    assert pre.offset == 0


def test_generate_prefix_start():
    pre = generate_prefix(FussCatalan(2), 5, start=1)
    assert pre.offset == 1
    assert list(pre.values) == [1, 2, 5, 14, 42]


def test_generate_prefix_rejects_nonpositive():
    with pytest.raises(NonPositiveValue) as exc:
        generate_prefix(Literal((1, 0, 2)))
    assert exc.value.index == 1


def test_derangement_family_offset():
    pre = generate_prefix(Derangement(), 6)
    assert pre.offset == 2
    assert list(pre.values) == [1, 2, 9, 44, 265]


def test_generate_prefix_bad_range():
    with pytest.raises(ValueError):
        generate_prefix(BernoulliAbsEven(), 0)
    with pytest.raises(ValueError):
        generate_prefix(Tangent(), 5, start=0)


def test_generator_error_type():
    assert issubclass(GeneratorError, RuntimeError)
