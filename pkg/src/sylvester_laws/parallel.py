"""Partitioned evaluation over colex-rank ranges with an ordered merge."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, TypeVar

from .fock import partition_ranges

T = TypeVar("T")

# below this many items a process pool costs more than it saves
MIN_PARALLEL_ITEMS = 2000


def default_threads() -> int:
    return os.cpu_count() or 1


def map_ranges(func: Callable[[int, int], T], total: int, threads: int = 1) -> list[T]:
    """Apply ``func(start, stop)`` to contiguous rank ranges covering ``range(total)``.

    Results come back in rank order regardless of scheduling, so callers that
    concatenate them get the same output for any ``threads``.
    """
    if threads < 1:
        raise ValueError("threads must be at least 1")
    if threads == 1 or total < MIN_PARALLEL_ITEMS:
        return [func(0, total)]
    ranges = partition_ranges(total, threads * 4)
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(func, start, stop) for start, stop in ranges]
        return [f.result() for f in futures]
