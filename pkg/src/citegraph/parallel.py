"""Deterministic work scheduling.

Jobs are split into fixed chunks whose boundaries never depend on the
worker count, results are merged in chunk order, and accumulators are
exact (integers, or floats reduced in a fixed order), so the same input
produces bit-identical output at any thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

CHUNK = 64  # origins per BFS task; fixed so chunking is schedule-independent


def thread_budget(explicit: int | None = None) -> int:
    """Worker count: explicit argument wins, else CITEGRAPH_THREADS, else 1."""
    if explicit is not None:
        return max(1, int(explicit))
    env = os.environ.get("CITEGRAPH_THREADS", "").strip()
    if env:
        return max(1, int(env))
    return 1


def map_ordered(fn, items, threads: int):
    """Apply fn to items, returning results in input order."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def chunk_ranges(n: int, chunk: int = CHUNK):
    return [(lo, min(lo + chunk, n)) for lo in range(0, n, chunk)]
