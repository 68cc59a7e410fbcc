"""Ordered map over independent jobs, serial or in a process pool."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor


def default_jobs() -> int:
    return os.cpu_count() or 1


def imap(fn, items, jobs: int | None = 1):
    """Yield fn(x) for x in items, in order. Serial (and lazy) when jobs <= 1."""
    items = list(items)
    if not jobs or jobs <= 1 or len(items) <= 1:
        for x in items:
            yield fn(x)
        return
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        futures = [pool.submit(fn, x) for x in items]
        try:
            for fut in futures:
                yield fut.result()
        finally:
            for fut in futures:
                fut.cancel()
