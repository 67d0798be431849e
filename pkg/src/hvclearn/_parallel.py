"""Deterministic thread-pool map: results keep input order regardless of
scheduling, so any thread count produces identical output."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def resolve_threads(threads) -> int:
    if threads is None:
        return os.cpu_count() or 1
    return max(1, int(threads))


def parallel_map(fn, items, threads=1) -> list:
    items = list(items)
    workers = resolve_threads(threads)
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
