"""Replica execution with an environment-controlled worker cap.

HYPERGIANT_THREADS sets the number of worker threads (default 1, i.e. serial).
Results are always collected in submission order, so the outcome is identical
for any worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence

ENV_VAR = "HYPERGIANT_THREADS"


def worker_count() -> int:
    raw = os.environ.get(ENV_VAR, "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def replica_map(fn: Callable, jobs: Sequence) -> list:
    """Apply fn to each job, preserving order; threaded when allowed."""
    workers = worker_count()
    if workers == 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))
