"""Order-preserving parallel map, bounded by the LOGMONO_THREADS variable."""

import math
import multiprocessing
import os
from concurrent.futures import ProcessPoolExecutor


def worker_count() -> int:
    raw = os.environ.get("LOGMONO_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def pmap(fn, items):
    """``list(map(fn, items))``, fanned out over processes when LOGMONO_THREADS > 1.

    ``fn`` must be picklable (a module-level function or a partial of one).
    """
    items = list(items)
    workers = min(worker_count(), len(items))
    if workers <= 1 or len(items) < 4:
        return [fn(item) for item in items]
    chunk = max(1, math.ceil(len(items) / (workers * 4)))
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        return list(pool.map(fn, items, chunksize=chunk))
