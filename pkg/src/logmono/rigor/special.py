"""Ball enclosures of log Gamma, the polygamma functions and zeta derivatives.

* ``log_gamma`` and ``digamma``: shift the argument up with the functional
  equation, then sum the Stirling series.  For real z > 0 the series is
  enveloping, so the first omitted term bounds the remainder.
* ``polygamma(k >= 1)``: ``(-1)^(k+1) k! sum_j (x+j)^-(k+1)``, first terms
  directly, the tail by Euler-Maclaurin with the standard
  ``2|B_2M|/(2M)! * int |f^(2M)|`` remainder bound.
* ``zeta_jet``: ``zeta^(k)(x) = sum (-log n)^k n^-x``.  Large x: plain
  truncation with an integral bound for the tail.  Otherwise the tail is
  summed by Euler-Maclaurin, with the derivatives of ``(log t)^k t^-x``
  tracked as polynomials in ``log t``.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from mpmath.libmp import fone, mpf_cmp, mpf_shift, to_float

from ..errors import DomainError
from ..exact_core import bernoulli
from .ball import DEFAULT_PREC, Ball, ball, exp, log, pi

__all__ = [
    "log_gamma",
    "digamma",
    "polygamma",
    "loggamma_jet",
    "zeta_jet",
    "zeta_derivs",
    "log_zeta_jet",
    "log_of_jet",
]

_cache_lock = threading.Lock()
_bern_balls = {}
_log_n = {}
_consts = {}


def _as_ball(x, prec):
    if isinstance(x, Ball):
        return x if x.prec == prec else x.with_prec(prec)
    return ball(x, prec)


def _lower_float(x: Ball) -> float:
    return to_float(x._lower_raw(53))


def _bern2(m, prec) -> Ball:
    """B_{2m} as a ball."""
    table = _bern_balls.get(prec)
    if table is None:
        with _cache_lock:
            table = _bern_balls.setdefault(prec, [])
    while len(table) <= m:
        with _cache_lock:
            if len(table) <= m:
                table.append(ball(bernoulli(2 * len(table)), prec))
    return table[m]


def _log_int(n, prec) -> Ball:
    table = _log_n.get(prec)
    if table is None:
        with _cache_lock:
            table = _log_n.setdefault(prec, [None, ball(0, prec)])
    while len(table) <= n:
        with _cache_lock:
            if len(table) <= n:
                table.append(log(ball(len(table), prec)))
    return table[n]


def _half_log_2pi(prec) -> Ball:
    key = ("hl2pi", prec)
    v = _consts.get(key)
    if v is None:
        v = log(2 * pi(prec)) / 2
        _consts[key] = v
    return v


def _target(scale: Ball, prec):
    """Absolute stopping tolerance for series remainders."""
    return mpf_shift(scale._mag_raw() if scale is not None else fone, -prec - 6)


def _shift_for(x: Ball, z0: int) -> int:
    lo = _lower_float(x)
    return max(0, math.ceil(z0 - lo))


def _check_positive(x: Ball, what: str):
    if not x.is_positive():
        raise DomainError(f"{what} needs x > 0, got {x!r}")


def _max_terms(prec):
    return prec // 2 + 20


def log_gamma(x, prec: int = DEFAULT_PREC) -> Ball:
    """Enclosure of log Gamma(x) for x > 0."""
    x = _as_ball(x, prec)
    _check_positive(x, "log_gamma")
    shift = _shift_for(x, prec // 4 + 8)
    z = x + shift
    zl = ball(z.lower, prec)
    s = (z - ball(1, prec) / 2) * log(z) - z + _half_log_2pi(prec)
    zi = 1 / z
    zi2 = zi * zi
    zli = 1 / zl
    zli2 = zli * zli
    pw, pwl = zi, zli
    for m in range(1, _max_terms(prec)):
        c = _bern2(m, prec) / ((2 * m) * (2 * m - 1))
        s = s + c * pw
        pw = pw * zi2
        pwl = pwl * zli2
        nxt = (_bern2(m + 1, prec) / ((2 * m + 2) * (2 * m + 1))) * pwl
        bound = nxt._mag_raw()
        if mpf_cmp(bound, _target(s, prec)) <= 0:
            break
    s = s.add_error(bound)
    if shift:
        prod = x
        for j in range(1, shift):
            prod = prod * (x + j)
        s = s - log(prod)
    return s


def digamma(x, prec: int = DEFAULT_PREC) -> Ball:
    x = _as_ball(x, prec)
    _check_positive(x, "digamma")
    shift = _shift_for(x, prec // 4 + 8)
    z = x + shift
    zl = ball(z.lower, prec)
    zi = 1 / z
    zi2 = zi * zi
    zli2 = (1 / zl) ** 2
    s = log(z) - zi / 2
    pw, pwl = zi2, zli2
    for m in range(1, _max_terms(prec)):
        s = s - (_bern2(m, prec) / (2 * m)) * pw
        pw = pw * zi2
        pwl = pwl * zli2
        bound = ((_bern2(m + 1, prec) / (2 * m + 2)) * pwl)._mag_raw()
        if mpf_cmp(bound, _target(s, prec)) <= 0:
            break
    s = s.add_error(bound)
    if shift:
        acc = 1 / x
        for j in range(1, shift):
            acc = acc + 1 / (x + j)
        s = s - acc
    return s


def _rising(s, j):
    out = 1
    for i in range(j):
        out *= s + i
    return out


def _hurwitz_int(s: int, x: Ball, prec: int) -> Ball:
    """sum_{j>=0} (x+j)^-s for integer s >= 2."""
    shift = _shift_for(x, prec // 4 + 8)
    direct = ball(0, prec)
    for j in range(shift):
        direct = direct + (x + j) ** (-s)
    z = x + shift
    zl = ball(z.lower, prec)
    zi = 1 / z
    zli = 1 / zl
    zi2 = zi * zi
    zli2 = zli * zli
    zs = zi**s
    zls = zli**s
    tail = z * zs / (s - 1) + zs / 2
    pw = zs * zi  # z^(-s-2m+1) at m = 1
    pwl = zls * zli
    for m in range(1, _max_terms(prec)):
        # remainder if terms 1..m-1 are kept
        bound = (2 * abs(_bern2(m, prec)) * (_rising(s, 2 * m - 1) * pwl) / factorial(2 * m))._mag_raw()
        if mpf_cmp(bound, _target(tail, prec)) <= 0:
            break
        tail = tail + _bern2(m, prec) * (_rising(s, 2 * m - 1) * pw) / factorial(2 * m)
        pw = pw * zi2
        pwl = pwl * zli2
    return (direct + tail).add_error(bound)


def polygamma(k: int, x, prec: int = DEFAULT_PREC) -> Ball:
    """Enclosure of psi^(k)(x) = (log Gamma)^(k+1)(x) for x > 0."""
    if k < 0:
        raise ValueError(f"polygamma order must be >= 0, got {k}")
    x = _as_ball(x, prec)
    _check_positive(x, "polygamma")
    if k == 0:
        return digamma(x, prec)
    sign = 1 if k % 2 else -1
    return _hurwitz_int(k + 1, x, prec) * (sign * factorial(k))


def loggamma_jet(x, order: int, prec: int = DEFAULT_PREC) -> list:
    """[log Gamma(x), psi(x), psi'(x), ...] up to the ``order``-th derivative."""
    x = _as_ball(x, prec)
    out = [log_gamma(x, prec)]
    for k in range(order):
        out.append(polygamma(k, x, prec))
    return out


# ---------------------------------------------------------------------------
# zeta

ZETA_MIN_X = 1.01


def _log_tail_integral(i: int, alpha: Ball, L: Ball, N: int, npow: Ball = None) -> Ball:
    """int_N^inf (log t)^i t^-alpha dt for alpha > 1, L = log N (npow = N^(1-alpha) if known)."""
    am1 = alpha - 1
    y = am1 * L
    acc = ball(1, alpha.prec)
    term = ball(1, alpha.prec)
    for j in range(1, i + 1):
        term = term * y / j
        acc = acc + term
    if npow is None:
        npow = exp(-am1 * L)
    return factorial(i) * npow * acc / am1 ** (i + 1)


def zeta_jet(order: int, x, prec: int = DEFAULT_PREC) -> list:
    """[zeta(x), zeta'(x), ..., zeta^(order)(x)] for real x > 1.01."""
    x = _as_ball(x, prec)
    if order < 0:
        raise ValueError("order must be >= 0")
    xlo = _lower_float(x)
    if not xlo > ZETA_MIN_X:
        raise DomainError(f"zeta needs x > {ZETA_MIN_X}, got {x!r}")
    K = order

    n_em = 16 + prec // 3
    expo = (prec + 12 + 4 * K) / (xlo - 1)
    n_direct = None
    if expo < 40:
        cand = max(3, math.ceil(2.0**expo) + 1)
        if cand <= n_em and math.log(cand - 1) * xlo >= K:
            n_direct = cand
    N = n_direct or n_em

    sums = [ball(0, prec) for _ in range(K + 1)]
    for n in range(1, N):
        L = _log_int(n, prec)
        p = exp(-x * L) if n > 1 else ball(1, prec)
        sums[0] = sums[0] + p
        for k in range(1, K + 1):
            p = p * L
            sums[k] = sums[k] + p

    LN = _log_int(N, prec)
    if n_direct is not None:
        # f_k decreasing on [N-1, inf): tail <= int_{N-1}^inf f_k
        Lm = _log_int(N - 1, prec)
        for k in range(K + 1):
            top = _log_tail_integral(k, x, Lm, N - 1)._mag_raw()
            half = mpf_shift(top, -1)
            sums[k] = sums[k] + Ball._make(half, half, prec)
    else:
        _zeta_em_tail(sums, x, N, LN, K, prec)

    return [s if k % 2 == 0 else -s for k, s in enumerate(sums)]


def _zeta_em_tail(sums, x, N, LN, K, prec):
    """Add sum_{n>=N} (log n)^k n^-x to ``sums[k]`` for k = 0..K."""
    Lpow = [ball(1, prec)]
    for _ in range(2 * K + 2):
        Lpow.append(Lpow[-1] * LN)
    NX = exp(-x * LN)  # N^-x
    for k in range(K + 1):
        tail = _log_tail_integral(k, x, LN, N) + NX * Lpow[k] / 2
        coeffs = [ball(0, prec)] * k + [ball(1, prec)]
        scale = NX
        pending = None
        bound = None
        for j in range(1, 2 * _max_terms(prec)):
            # derivative: d/dt [t^-(x+j-1) L^i] = t^-(x+j) (-(x+j-1) L^i + i L^(i-1))
            beta = x + (j - 1)
            new = [c * (-beta) for c in coeffs]
            for i in range(1, len(coeffs)):
                new[i - 1] = new[i - 1] + coeffs[i] * i
            coeffs = new
            scale = scale / N
            if j % 2 == 1:
                m = (j + 1) // 2
                val = ball(0, prec)
                for i, c in enumerate(coeffs):
                    val = val + c * Lpow[i]
                pending = _bern2(m, prec) * val * scale / factorial(2 * m)
            else:
                m = j // 2
                acc = ball(0, prec)
                alpha = x + j
                npow = scale * N
                for i, c in enumerate(coeffs):
                    acc = acc + abs(c) * _log_tail_integral(i, alpha, LN, N, npow)
                bound = (2 * abs(_bern2(m, prec)) * acc / factorial(2 * m))._mag_raw()
                if mpf_cmp(bound, _target(tail, prec)) <= 0:
                    break
                tail = tail - pending
        sums[k] = sums[k] + tail.add_error(bound)


def zeta_derivs(k: int, x, prec: int = DEFAULT_PREC) -> Ball:
    """Enclosure of zeta^(k)(x) for x > 1.01."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return zeta_jet(k, x, prec)[k]


def log_of_jet(jet: list) -> list:
    """Derivatives of log f from derivatives of f (f > 0)."""
    f0 = jet[0]
    out = [log(f0)]
    for n in range(1, len(jet)):
        acc = jet[n]
        for j in range(1, n):
            acc = acc - comb(n - 1, j) * jet[j] * out[n - j]
        out.append(acc / f0)
    return out


@lru_cache(maxsize=8192)
def _log_zeta_jet_exact(order, x, prec):
    return tuple(log_of_jet(zeta_jet(order, x, prec)))


def log_zeta_jet(order: int, x, prec: int = DEFAULT_PREC) -> list:
    """Derivatives of log zeta; exact rational arguments are memoized."""
    if isinstance(x, (int, Fraction)):
        return list(_log_zeta_jet_exact(order, Fraction(x), prec))
    return log_of_jet(zeta_jet(order, x, prec))
