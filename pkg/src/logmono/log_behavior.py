"""Exact decision procedures for log-concavity, log-convexity, the ratio tower
and the n-th root reductions."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import List, Optional, Tuple

from ._parallel import pmap
from .errors import BadOffset, TooShort
from .exact_core import Literal, SequencePrefix
from .rigor.ball import ball, log

__all__ = [
    "PropertyVerdict",
    "RatioTower",
    "Ordering",
    "apply_R",
    "build_tower",
    "check_pairwise",
    "check_infinitely_log_monotonic",
    "compare_powers",
    "compare_powers_detail",
    "check_root_monotone",
    "check_root_log_behavior",
    "EXACT_BITS",
]

EXACT_BITS = 1 << 20
LOG_PREC_START = 128
LOG_PREC_CAP = 1 << 16

LOG_CONCAVE = "log-concave"
LOG_CONVEX = "log-convex"


class Method(str, enum.Enum):
    EXACT = "exact"
    ESCALATED = "escalated-precision"


@dataclass(frozen=True)
class PropertyVerdict:
    """``holds`` answers the question as asked (strict or not); ``strict`` says
    whether the strict form holds regardless of what was asked."""

    property: str
    index_range: Tuple[int, int]
    holds: bool
    strict: bool
    first_violation: Optional[dict] = None
    equality_indices: Tuple[int, ...] = ()
    method: str = Method.EXACT.value
    requested_strict: bool = False
    # (index, "ok" | "eq" | "bad") for every checked index
    per_index: Tuple[Tuple[int, str], ...] = ()

    def to_dict(self) -> dict:
        fv = None
        if self.first_violation is not None:
            fv = {k: _jsonable(v) for k, v in self.first_violation.items()}
        return {
            "property": self.property,
            "index_range": list(self.index_range),
            "holds": self.holds,
            "strict": self.strict,
            "requested_strict": self.requested_strict,
            "first_violation": fv,
            "equality_indices": list(self.equality_indices),
            "method": self.method,
            "per_index": [[i, c] for i, c in self.per_index],
        }


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(u) for u in v]
    if isinstance(v, enum.Enum):
        return v.value
    return v


def _verdict(name, lo, hi, outcomes, requested_strict, method=Method.EXACT):
    """outcomes: list of (index, cmp, witness) with cmp in {"ok", "eq", "bad"}."""
    eq = tuple(i for i, c, _ in outcomes if c == "eq")
    bad = [(i, w) for i, c, w in outcomes if c == "bad"]
    nonstrict = not bad
    first = None
    if requested_strict:
        viol = [(i, w) for i, c, w in outcomes if c != "ok"]
    else:
        viol = bad
    if viol:
        i, w = viol[0]
        first = {"index": i, **w}
    return PropertyVerdict(
        property=name,
        index_range=(lo, hi),
        holds=not viol,
        strict=nonstrict and not eq,
        first_violation=first,
        equality_indices=eq,
        method=method.value if isinstance(method, Method) else method,
        requested_strict=requested_strict,
        per_index=tuple((i, c) for i, c, _ in outcomes),
    )


# ---------------------------------------------------------------------------
# ratio tower


def _require_positive(prefix: SequencePrefix):
    for n, v in zip(prefix.indices, prefix.values):
        if v <= 0:
            from .errors import NonPositiveValue

            raise NonPositiveValue(n, v)


def apply_R(prefix: SequencePrefix) -> SequencePrefix:
    """x_n = z_{n+1} / z_n; one term shorter, same offset."""
    if len(prefix) < 2:
        raise TooShort(f"apply_R needs at least 2 terms, got {len(prefix)}")
    _require_positive(prefix)
    v = prefix.values
    ratios = tuple(v[i + 1] / v[i] for i in range(len(v) - 1))
    return SequencePrefix(Literal(ratios, prefix.offset), prefix.offset, ratios)


@dataclass(frozen=True)
class RatioTower:
    base: SequencePrefix
    levels: Tuple[SequencePrefix, ...]
    depth: int


def build_tower(prefix: SequencePrefix, depth: int) -> RatioTower:
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if len(prefix) < depth + 3:
        raise TooShort(f"depth {depth} needs at least {depth + 3} terms, got {len(prefix)}")
    levels = [prefix]
    for _ in range(depth):
        levels.append(apply_R(levels[-1]))
    return RatioTower(prefix, tuple(levels), depth)


def check_pairwise(prefix: SequencePrefix, mode: str = LOG_CONCAVE, strict: bool = False) -> PropertyVerdict:
    """Compare z_{n-1} z_{n+1} with z_n^2 at every interior index."""
    if mode not in (LOG_CONCAVE, LOG_CONVEX):
        raise ValueError(f"unknown mode {mode!r}")
    if len(prefix) < 3:
        raise TooShort(f"{mode} check needs at least 3 terms, got {len(prefix)}")
    _require_positive(prefix)
    v = prefix.values
    sign = 1 if mode == LOG_CONCAVE else -1
    outcomes = []
    for i in range(1, len(v) - 1):
        d = (v[i] * v[i] - v[i - 1] * v[i + 1]) * sign
        c = "ok" if d > 0 else "eq" if d == 0 else "bad"
        outcomes.append((prefix.offset + i, c, {"values": [v[i - 1], v[i], v[i + 1]]}))
    return _verdict(mode, prefix.offset + 1, prefix.last_index - 1, outcomes, strict)


def check_infinitely_log_monotonic(prefix: SequencePrefix, depth: int, strict: bool = False) -> List[PropertyVerdict]:
    """Level r of the ratio tower must be log-convex for even r, log-concave for odd r."""
    tower = build_tower(prefix, depth)
    out = []
    for r, level in enumerate(tower.levels):
        v = check_pairwise(level, LOG_CONVEX if r % 2 == 0 else LOG_CONCAVE, strict)
        out.append(PropertyVerdict(**{**v.__dict__, "property": f"level-{r}:{v.property}"}))
    return out


# ---------------------------------------------------------------------------
# x^p versus y^q


class Ordering(str, enum.Enum):
    LT = "lt"
    EQ = "eq"
    GT = "gt"


def _bits(x: Fraction) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


def _exact_order(x: Fraction, p: int, y: Fraction, q: int) -> Ordering:
    # x^p vs y^q  <=>  a^p d^q vs c^q b^p
    lhs = x.numerator**p * y.denominator**q
    rhs = y.numerator**q * x.denominator**p
    return Ordering.LT if lhs < rhs else Ordering.GT if lhs > rhs else Ordering.EQ


def compare_powers_detail(x, p: int, y, q: int, exact_threshold: int = EXACT_BITS) -> Tuple[Ordering, Method]:
    """Order of x^p against y^q, plus how it was decided.

    ``exact_threshold=None`` forces exact powering whatever the size.
    """
    x, y = Fraction(x), Fraction(y)
    if x <= 0 or y <= 0:
        raise ValueError("compare_powers needs x, y > 0")
    if p < 0 or q < 0:
        raise ValueError("compare_powers needs p, q >= 0")
    if exact_threshold is None or p * _bits(x) + q * _bits(y) <= exact_threshold:
        return _exact_order(x, p, y, q), Method.EXACT
    prec = LOG_PREC_START
    while prec <= LOG_PREC_CAP:
        d = p * log(ball(x, prec)) - q * log(ball(y, prec))
        s = d.sign()
        if s:
            return (Ordering.GT if s > 0 else Ordering.LT), Method.ESCALATED
        prec *= 2
    # the balls kept straddling zero: almost certainly equal, settle exactly
    return _exact_order(x, p, y, q), Method.EXACT


def compare_powers(x, p: int, y, q: int, exact_threshold: int = EXACT_BITS) -> Ordering:
    return compare_powers_detail(x, p, y, q, exact_threshold)[0]


def _cmp_task(args, exact_threshold):
    x, p, y, q = args
    return compare_powers_detail(x, p, y, q, exact_threshold)


def _combine_method(methods) -> Method:
    return Method.ESCALATED if Method.ESCALATED in methods else Method.EXACT


def check_root_monotone(
    prefix: SequencePrefix,
    direction: str = "increasing",
    strict: bool = True,
    exact_threshold: int = EXACT_BITS,
) -> PropertyVerdict:
    """Monotonicity of z_n^(1/n) through z_n^(n+1) versus z_{n+1}^n."""
    if direction not in ("increasing", "decreasing"):
        raise ValueError(f"unknown direction {direction!r}")
    if prefix.offset < 1:
        raise BadOffset(f"root sequences are indexed from n >= 1, prefix starts at {prefix.offset}")
    if len(prefix) < 2:
        raise TooShort("root monotonicity needs at least 2 terms")
    _require_positive(prefix)
    v = prefix.values
    tasks = []
    for i in range(len(v) - 1):
        n = prefix.offset + i
        tasks.append((v[i], n + 1, v[i + 1], n))
    results = pmap(partial(_cmp_task, exact_threshold=exact_threshold), tasks)
    good = Ordering.LT if direction == "increasing" else Ordering.GT
    outcomes = []
    for i, (order, _) in enumerate(results):
        c = "ok" if order == good else "eq" if order == Ordering.EQ else "bad"
        outcomes.append((prefix.offset + i, c, {"ordering": order.value}))
    method = _combine_method([m for _, m in results])
    return _verdict(f"root-{direction}", prefix.offset, prefix.last_index - 1, outcomes, strict, method)


def check_root_log_behavior(
    prefix: SequencePrefix,
    mode: str = LOG_CONCAVE,
    strict: bool = True,
    exact_threshold: int = EXACT_BITS,
) -> PropertyVerdict:
    """Log-concavity/convexity of z_n^(1/n).

    At interior n this compares z_{n-1}^(n(n+1)) z_{n+1}^(n(n-1)) with
    z_n^(2(n^2-1)), written as x^n against z_n^(2(n^2-1)) with
    x = z_{n-1}^(n+1) z_{n+1}^(n-1).
    """
    if mode not in (LOG_CONCAVE, LOG_CONVEX):
        raise ValueError(f"unknown mode {mode!r}")
    if prefix.offset < 1:
        raise BadOffset(f"root sequences are indexed from n >= 1, prefix starts at {prefix.offset}")
    if len(prefix) < 3:
        raise TooShort(f"root {mode} check needs at least 3 terms, got {len(prefix)}")
    _require_positive(prefix)
    v = prefix.values
    tasks = []
    for i in range(1, len(v) - 1):
        n = prefix.offset + i
        x = v[i - 1] ** (n + 1) * v[i + 1] ** (n - 1)
        tasks.append((x, n, v[i], 2 * (n * n - 1)))
    results = pmap(partial(_cmp_task, exact_threshold=exact_threshold), tasks)
    good = Ordering.LT if mode == LOG_CONCAVE else Ordering.GT
    outcomes = []
    for i, (order, _) in enumerate(results):
        c = "ok" if order == good else "eq" if order == Ordering.EQ else "bad"
        outcomes.append((prefix.offset + 1 + i, c, {"ordering": order.value}))
    method = _combine_method([m for _, m in results])
    return _verdict(f"root-{mode}", prefix.offset + 1, prefix.last_index - 1, outcomes, strict, method)
