"""Order-preserving parallel map with a thread cap from the environment."""

import os
from concurrent.futures import ThreadPoolExecutor

ENV_VAR = "INEQFORGE_THREADS"


def thread_count() -> int:
    raw = os.environ.get(ENV_VAR, "1").strip() or "1"
    n = int(raw)
    if n < 0:
        raise ValueError(f"{ENV_VAR} must be >= 0")
    if n == 0:
        n = os.cpu_count() or 1
    return n


def map_ordered(fn, items, threads=None):
    """``list(map(fn, items))``, possibly on a thread pool; result order
    never depends on completion order."""
    items = list(items)
    threads = thread_count() if threads is None else threads
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
