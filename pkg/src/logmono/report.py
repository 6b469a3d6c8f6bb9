"""Machine-readable run reports (JSON and CSV).

JSON layout (``schema_version`` 1)::

    {
      "schema_version": 1,
      "tool": "logmono",
      "version": "0.1.0",
      "command": "check",
      "config": {...},          # parsed arguments, echoed back
      "status": "holds" | "violated" | "indeterminate",
      "results": [...],         # verdicts / scan summaries, JSON-native only
      "rows": [[input, verdict, mid, rad], ...],
      "wall_time": 0.123
    }

Everything except ``wall_time`` depends only on the config, and keys are
written sorted, so two runs with the same arguments give identical files
apart from that one field.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, List

import mpmath

from . import __version__
from .rigor.ball import Ball
from .rigor.scan import SignVerdict

SCHEMA_VERSION = 1
CSV_COLUMNS = ("input", "verdict", "mid", "rad")

HOLDS = "holds"
VIOLATED = "violated"
INDETERMINATE = "indeterminate"

EXIT_CODES = {HOLDS: 0, VIOLATED: 2, INDETERMINATE: 3}


def ball_fields(b: Ball) -> List[str]:
    """[mid, rad] as decimal strings (rad rounded outward to 6 digits)."""
    mid = mpmath.nstr(b.mid, 30, min_fixed=-5, max_fixed=10)
    rad = mpmath.nstr(b.rad * (1 + mpmath.mpf(2) ** -20), 6) if b.rad else "0"
    return [mid, rad]


def sign_verdict_dict(v: SignVerdict) -> dict:
    mid, rad = ball_fields(v.ball)
    return {"sign": v.sign.value, "mid": mid, "rad": rad, "prec": v.prec}


def jsonable(v: Any) -> Any:
    """Convert to JSON-native values (lists, str, int, float, bool, None)."""
    if isinstance(v, enum.Enum):
        return v.value
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, float):
        return v
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, Ball):
        mid, rad = ball_fields(v)
        return {"mid": mid, "rad": rad}
    if isinstance(v, SignVerdict):
        return sign_verdict_dict(v)
    if isinstance(v, dict):
        return {str(k): jsonable(u) for k, u in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(u) for u in v]
    if hasattr(v, "to_dict"):
        return jsonable(v.to_dict())
    if hasattr(v, "__dataclass_fields__"):
        return jsonable(asdict(v))
    return str(v)


@dataclass
class Report:
    command: str
    config: dict
    status: str
    results: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    wall_time: float = 0.0
    schema_version: int = SCHEMA_VERSION
    tool: str = "logmono"
    version: str = __version__

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls(**json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for row in self.rows:
            w.writerow(row)
        return buf.getvalue()


def combine_status(statuses) -> str:
    statuses = list(statuses)
    if VIOLATED in statuses:
        return VIOLATED
    if INDETERMINATE in statuses:
        return INDETERMINATE
    return HOLDS
