"""Exact and certified checks of log-concavity, log-convexity and related
monotonicity properties for combinatorial sequences and zeta/Gamma functions."""

__version__ = "0.1.0"

from .exact_core import generate_prefix  # noqa: E402
from .log_behavior import (  # noqa: E402
    apply_R,
    check_infinitely_log_monotonic,
    check_pairwise,
    check_root_log_behavior,
    check_root_monotone,
    compare_powers,
)

__all__ = [
    "__version__",
    "generate_prefix",
    "apply_R",
    "check_pairwise",
    "check_infinitely_log_monotonic",
    "compare_powers",
    "check_root_monotone",
    "check_root_log_behavior",
]
