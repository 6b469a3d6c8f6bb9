"""Midpoint-radius real balls over mpmath's raw binary floats.

A :class:`Ball` ``(mid, rad)`` stands for the closed interval
``[mid - rad, mid + rad]``.  Every operation returns a ball that contains
the exact image of its inputs: the midpoint is rounded to nearest at the
working precision and the radius absorbs both the propagated input radii
and the rounding error, with all radius arithmetic rounded upward.

Radii are carried at ``RAD_PREC`` bits, which is plenty for a bound and
keeps radius bookkeeping cheap.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import mpmath
from mpmath.libmp import (
    fone,
    from_float,
    from_int,
    from_rational,
    fzero,
    mpf_abs,
    mpf_add,
    mpf_cmp,
    mpf_cos,
    mpf_div,
    mpf_exp,
    mpf_ln2,
    mpf_log,
    mpf_mul,
    mpf_neg,
    mpf_pi,
    mpf_shift,
    mpf_sin,
    mpf_sqrt,
    mpf_sub,
    round_ceiling,
    round_floor,
    round_nearest,
    to_float,
    to_rational,
    to_str,
)

from ..errors import DomainError

__all__ = ["Ball", "DEFAULT_PREC", "exp", "log", "sqrt", "sin", "cos", "pi", "ln2", "ball"]

DEFAULT_PREC = 128
RAD_PREC = 30


def _up_add(a, b):
    return mpf_add(a, b, RAD_PREC, round_ceiling)


def _up_mul(a, b):
    return mpf_mul(a, b, RAD_PREC, round_ceiling)


def _up_div(a, b):
    return mpf_div(a, b, RAD_PREC, round_ceiling)


def _ulps(m, prec, slack=1):
    """Upper bound for ``2**slack`` ulps of ``m`` at ``prec`` bits."""
    if m == fzero:
        return fzero
    return mpf_shift(mpf_abs(m), slack - prec)


def _is_neg(t):
    return t[0] == 1 and t != fzero


class Ball:
    __slots__ = ("_m", "_r", "prec")

    def __init__(self, mid=0, rad=0, prec=DEFAULT_PREC):
        b = ball(mid, prec)
        r = _rad_of(rad)
        self._m = b._m
        self._r = _up_add(b._r, r)
        self.prec = prec

    @classmethod
    def _make(cls, m, r, prec):
        obj = object.__new__(cls)
        obj._m = m
        obj._r = r
        obj.prec = prec
        return obj

    # -- views -----------------------------------------------------------
    @property
    def mid(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(self._m)

    @property
    def rad(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(self._r)

    @property
    def lower(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(mpf_sub(self._m, self._r, self.prec + RAD_PREC, round_floor))

    @property
    def upper(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(mpf_add(self._m, self._r, self.prec + RAD_PREC, round_ceiling))

    def _lower_raw(self, prec=RAD_PREC):
        return mpf_sub(self._m, self._r, prec, round_floor)

    def _upper_raw(self, prec=RAD_PREC):
        return mpf_add(self._m, self._r, prec, round_ceiling)

    def _mag_raw(self):
        """Upper bound on |x| over the ball."""
        return _up_add(mpf_abs(self._m), self._r)

    def __float__(self):
        return to_float(self._m)

    def __repr__(self):
        return f"Ball({to_str(self._m, 20)} +/- {to_str(self._r, 5)}, prec={self.prec})"

    __str__ = __repr__

    # -- predicates ------------------------------------------------------
    def is_exact(self) -> bool:
        return self._r == fzero

    def is_positive(self) -> bool:
        return mpf_cmp(self._m, self._r) > 0

    def is_negative(self) -> bool:
        return mpf_cmp(mpf_neg(self._m), self._r) > 0

    def is_nonnegative(self) -> bool:
        return mpf_cmp(self._m, self._r) >= 0

    def is_nonpositive(self) -> bool:
        return mpf_cmp(mpf_neg(self._m), self._r) >= 0

    def sign(self) -> int:
        """+1 or -1 when certified, 0 when the ball straddles (or touches) zero."""
        if self.is_positive():
            return 1
        if self.is_negative():
            return -1
        return 0

    def contains_zero(self) -> bool:
        return not self.is_positive() and not self.is_negative()

    def _bounds_exact(self):
        m = Fraction(*to_rational(self._m))
        r = Fraction(*to_rational(self._r))
        return m - r, m + r

    def contains(self, other) -> bool:
        """Exact membership test for a rational number or a whole ball."""
        lo, hi = self._bounds_exact()
        if isinstance(other, Ball):
            olo, ohi = other._bounds_exact()
            return lo <= olo and ohi <= hi
        if hasattr(other, "_mpf_"):
            q = Fraction(*to_rational(other._mpf_))
        else:
            q = Fraction(other)
        return lo <= q <= hi

    def __contains__(self, other):
        return self.contains(other)

    def overlaps(self, other) -> bool:
        lo, hi = self._bounds_exact()
        olo, ohi = ball(other, self.prec)._bounds_exact()
        return lo <= ohi and olo <= hi

    def rad_below(self, bound) -> bool:
        """True when the radius is strictly below ``bound`` (a number)."""
        return Fraction(*to_rational(self._r)) < Fraction(bound)

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Ball):
            return other
        return ball(other, self.prec)

    def __neg__(self):
        return Ball._make(mpf_neg(self._m), self._r, self.prec)

    def __pos__(self):
        return self

    def __abs__(self):
        if self.is_nonnegative():
            return self
        if self.is_nonpositive():
            return -self
        # straddles zero: [0, max(|lo|, |hi|)]
        top = self._mag_raw()
        half = mpf_shift(top, -1)
        return Ball._make(half, half, self.prec)

    def __add__(self, other):
        o = self._coerce(other)
        prec = max(self.prec, o.prec)
        m = mpf_add(self._m, o._m, prec, round_nearest)
        r = _up_add(_up_add(self._r, o._r), _ulps(m, prec))
        return Ball._make(m, r, prec)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        prec = max(self.prec, o.prec)
        m = mpf_sub(self._m, o._m, prec, round_nearest)
        r = _up_add(_up_add(self._r, o._r), _ulps(m, prec))
        return Ball._make(m, r, prec)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        prec = max(self.prec, o.prec)
        m = mpf_mul(self._m, o._m, prec, round_nearest)
        r = _ulps(m, prec)
        if self._r != fzero or o._r != fzero:
            r = _up_add(r, _up_mul(mpf_abs(self._m), o._r))
            r = _up_add(r, _up_mul(mpf_abs(o._m), self._r))
            r = _up_add(r, _up_mul(self._r, o._r))
        return Ball._make(m, r, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        prec = max(self.prec, o.prec)
        if not (o.is_positive() or o.is_negative()):
            raise DomainError(f"division by a ball containing zero: {o!r}")
        m = mpf_div(self._m, o._m, prec, round_nearest)
        r = _ulps(m, prec)
        if self._r != fzero or o._r != fzero:
            bm = mpf_abs(o._m)
            gap = mpf_sub(bm, o._r, RAD_PREC, round_floor)
            den = mpf_mul(bm, gap, RAD_PREC, round_floor)
            num = _up_add(_up_mul(mpf_abs(self._m), o._r), _up_mul(bm, self._r))
            r = _up_add(r, _up_div(num, den))
        return Ball._make(m, r, prec)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        if isinstance(n, Ball):
            return exp(n * log(self))
        if isinstance(n, Rational) and Fraction(n).denominator == 1:
            n = int(n)
            if n < 0:
                return 1 / (self ** (-n))
            result = ball(1, self.prec)
            base = self
            while n:
                if n & 1:
                    result = result * base
                n >>= 1
                if n:
                    base = base * base
            return result
        return exp(ball(n, self.prec) * log(self))

    def __rpow__(self, other):
        return exp(self * log(self._coerce(other)))

    def with_prec(self, prec):
        return Ball._make(self._m, self._r, prec)

    def add_error(self, err):
        """Widen the radius by ``err`` (a nonnegative number or raw mpf)."""
        return Ball._make(self._m, _up_add(self._r, _rad_of(err)), self.prec)


def _rad_of(r):
    if isinstance(r, tuple):
        return r
    if isinstance(r, Ball):
        return r._mag_raw()
    if isinstance(r, mpmath.mpf):
        t = r._mpf_
    elif isinstance(r, float):
        t = from_float(r)
    elif isinstance(r, int):
        t = from_int(r, RAD_PREC, round_ceiling)
    else:
        q = Fraction(r)
        t = from_rational(q.numerator, q.denominator, RAD_PREC, round_ceiling)
    if _is_neg(t):
        raise ValueError("radius must be nonnegative")
    return mpf_abs(mpf_add(t, fzero, RAD_PREC, round_ceiling))


def ball(value, prec=DEFAULT_PREC) -> Ball:
    """Exact-or-rounded enclosure of ``value`` (int, Fraction, float, mpf, str or Ball)."""
    if isinstance(value, Ball):
        return value
    if isinstance(value, bool):
        value = int(value)
    if isinstance(value, int):
        m = from_int(value, prec, round_nearest)
        r = fzero if value.bit_length() <= prec else _ulps(m, prec)
        return Ball._make(m, r, prec)
    if isinstance(value, float):
        return Ball._make(from_float(value), fzero, prec)
    if isinstance(value, mpmath.mpf):
        return Ball._make(value._mpf_, fzero, prec)
    if isinstance(value, str):
        value = Fraction(value)
    if isinstance(value, Rational):
        q = Fraction(value)
        m = from_rational(q.numerator, q.denominator, prec, round_nearest)
        exact = Fraction(*to_rational(m)) == q
        return Ball._make(m, fzero if exact else _ulps(m, prec), prec)
    raise TypeError(f"cannot make a Ball from {type(value).__name__}")


# ---------------------------------------------------------------------------
# elementary functions

# mpmath's elementary functions are accurate to about an ulp; allow 4.
_FN_SLACK = 2


def exp(x, prec=None) -> Ball:
    x = ball(x, prec or DEFAULT_PREC) if not isinstance(x, Ball) else x
    p = x.prec
    m = mpf_exp(x._m, p, round_nearest)
    r = _ulps(m, p, _FN_SLACK)
    if x._r != fzero:
        # |e^y - e^m| <= e^m (e^r - 1) <= e^m r e^r
        top = mpf_exp(x._m, RAD_PREC, round_ceiling)
        grow = _up_mul(x._r, mpf_exp(x._r, RAD_PREC, round_ceiling))
        r = _up_add(r, _up_mul(top, grow))
    return Ball._make(m, r, p)


def log(x, prec=None) -> Ball:
    x = ball(x, prec or DEFAULT_PREC) if not isinstance(x, Ball) else x
    p = x.prec
    if not x.is_positive():
        raise DomainError(f"log of a ball not certified positive: {x!r}")
    m = mpf_log(x._m, p, round_nearest)
    r = _ulps(m, p, _FN_SLACK)
    if x._r != fzero:
        low = mpf_sub(x._m, x._r, RAD_PREC, round_floor)
        r = _up_add(r, _up_div(x._r, low))
    return Ball._make(m, r, p)


def sqrt(x, prec=None) -> Ball:
    x = ball(x, prec or DEFAULT_PREC) if not isinstance(x, Ball) else x
    p = x.prec
    if x.is_negative():
        raise DomainError(f"sqrt of a negative ball: {x!r}")
    if not x.is_positive():
        top = mpf_sqrt(x._upper_raw(), RAD_PREC, round_ceiling)
        half = mpf_shift(top, -1)
        return Ball._make(half, half, p)
    m = mpf_sqrt(x._m, p, round_nearest)
    r = _ulps(m, p)
    if x._r != fzero:
        low = mpf_sqrt(mpf_sub(x._m, x._r, RAD_PREC, round_floor), RAD_PREC, round_floor)
        den = mpf_add(low, mpf_sqrt(x._m, RAD_PREC, round_floor), RAD_PREC, round_floor)
        r = _up_add(r, _up_div(x._r, den))
    return Ball._make(m, r, p)


def _trig(fn, x, prec):
    x = ball(x, prec or DEFAULT_PREC) if not isinstance(x, Ball) else x
    p = x.prec
    m = fn(x._m, p, round_nearest)
    # absolute floor guards results that cancel to (near) zero
    r = _up_add(_ulps(m, p, _FN_SLACK), mpf_shift(fone, -2 * p))
    r = _up_add(r, x._r)
    return Ball._make(m, r, p)


def sin(x, prec=None) -> Ball:
    return _trig(mpf_sin, x, prec)


def cos(x, prec=None) -> Ball:
    return _trig(mpf_cos, x, prec)


def pi(prec=DEFAULT_PREC) -> Ball:
    m = mpf_pi(prec, round_nearest)
    return Ball._make(m, _ulps(m, prec), prec)


def ln2(prec=DEFAULT_PREC) -> Ball:
    m = mpf_ln2(prec, round_nearest)
    return Ball._make(m, _ulps(m, prec), prec)


def union(a: Ball, b: Ball) -> Ball:
    """Smallest-ish ball containing both arguments."""
    prec = max(a.prec, b.prec)
    lo = a._lower_raw(prec + RAD_PREC)
    if mpf_cmp(b._lower_raw(prec + RAD_PREC), lo) < 0:
        lo = b._lower_raw(prec + RAD_PREC)
    hi = a._upper_raw(prec + RAD_PREC)
    if mpf_cmp(b._upper_raw(prec + RAD_PREC), hi) > 0:
        hi = b._upper_raw(prec + RAD_PREC)
    m = mpf_shift(mpf_add(lo, hi, prec, round_nearest), -1)
    r = _up_add(mpf_abs(mpf_sub(hi, m, RAD_PREC, round_ceiling)), mpf_abs(mpf_sub(m, lo, RAD_PREC, round_ceiling)))
    return Ball._make(m, r, prec)
