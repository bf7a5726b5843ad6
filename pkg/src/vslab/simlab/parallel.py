"""Chunked execution with an order-independent merge."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

from ..errors import ValidationError


def default_workers():
    return os.cpu_count() or 1


def resolve_workers(workers):
    if workers is None:
        return default_workers()
    if workers < 1:
        raise ValidationError(f"workers={workers} must be at least 1")
    return workers


def chunk_ranges(total, size):
    """Split ``range(total)`` into ``[start, stop)`` pieces of at most ``size``.

    The split depends only on ``total`` and ``size``, never on the worker count.
    """
    size = max(1, int(size))
    return [(a, min(a + size, total)) for a in range(0, total, size)]


def run_tasks(fn, tasks, workers=1):
    """``[fn(*t) for t in tasks]``, spread over processes when ``workers > 1``."""
    workers = resolve_workers(workers)
    if workers == 1 or len(tasks) <= 1:
        return [fn(*t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
        return list(pool.map(fn, *zip(*tasks)))
