"""Sign certification with precision escalation, and grid scans built on it."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Callable, List, Optional

from .._parallel import pmap
from .ball import Ball

__all__ = [
    "Sign",
    "SignVerdict",
    "PrecPolicy",
    "DEFAULT_POLICY",
    "certify_sign",
    "grid_points",
    "ScanPoint",
    "ScanSummary",
    "sign_scan",
]


class Sign(str, enum.Enum):
    NEGATIVE = "negative"
    POSITIVE = "positive"
    INDETERMINATE = "indeterminate"


@dataclass
class SignVerdict:
    sign: Sign
    ball: Ball
    prec: int

    @property
    def certified(self) -> bool:
        return self.sign is not Sign.INDETERMINATE


@dataclass(frozen=True)
class PrecPolicy:
    """Working precisions start, 2*start, ... up to cap (bits)."""

    start: int = 128
    cap: int = 4096

    def __post_init__(self):
        if self.start < 16 or self.cap < self.start:
            raise ValueError(f"bad precision policy {self.start}..{self.cap}")

    def precisions(self):
        p = self.start
        while p <= self.cap:
            yield p
            p *= 2


DEFAULT_POLICY = PrecPolicy()


def certify_sign(fn: Callable[..., Ball], *args, policy: PrecPolicy = DEFAULT_POLICY) -> SignVerdict:
    """Evaluate ``fn(*args, prec=p)`` at escalating precision until its sign is certified."""
    last = None
    for prec in policy.precisions():
        b = fn(*args, prec=prec)
        s = b.sign()
        if s:
            return SignVerdict(Sign.POSITIVE if s > 0 else Sign.NEGATIVE, b, prec)
        last = (b, prec)
    return SignVerdict(Sign.INDETERMINATE, *last)


def grid_points(lo, hi, step) -> List[Fraction]:
    """lo, lo+step, ... <= hi as exact rationals."""
    lo, hi, step = Fraction(lo), Fraction(hi), Fraction(step)
    if step <= 0:
        raise ValueError("step must be positive")
    if hi < lo:
        raise ValueError("empty interval")
    n = int((hi - lo) // step)
    return [lo + i * step for i in range(n + 1)]


@dataclass
class ScanPoint:
    x: Fraction
    sign: Sign
    ball: Ball
    prec: int


@dataclass
class ScanSummary:
    status: str
    points: List[ScanPoint] = field(default_factory=list)

    @property
    def indeterminate_points(self) -> List[Fraction]:
        return [p.x for p in self.points if p.sign is Sign.INDETERMINATE]

    @property
    def max_upper(self):
        return max(p.ball.upper for p in self.points)

    @property
    def min_lower(self):
        return min(p.ball.lower for p in self.points)

    def first(self, sign: Sign) -> Optional[ScanPoint]:
        return next((p for p in self.points if p.sign is sign), None)


def _scan_one(expr, policy, offset, x):
    if offset:
        v = certify_sign(_shifted, expr, offset, x, policy=policy)
    else:
        v = certify_sign(expr, x, policy=policy)
    return ScanPoint(x, v.sign, v.ball, v.prec)


def _shifted(expr, offset, x, prec):
    return expr(x, prec=prec) - offset


def summarize(points: List[ScanPoint]) -> ScanSummary:
    signs = {p.sign for p in points}
    certified = signs - {Sign.INDETERMINATE}
    if len(certified) == 2:
        status = "mixed"
    elif Sign.INDETERMINATE in signs:
        status = "indeterminate"
    elif certified == {Sign.NEGATIVE}:
        status = "all_negative"
    else:
        status = "all_positive"
    return ScanSummary(status, points)


def sign_scan(expr: Callable[..., Ball], lo, hi, step, policy: PrecPolicy = DEFAULT_POLICY, offset=0) -> ScanSummary:
    """Certify the sign of ``expr(x, prec=...) - offset`` at every grid point of [lo, hi].

    Points whose sign stays undecided at the precision cap are reported as
    indeterminate rather than raised.
    """
    grid = grid_points(lo, hi, step)
    points = pmap(partial(_scan_one, expr, policy, Fraction(offset) if offset else 0), grid)
    return summarize(points)
