"""Order-preserving thread fan-out used by the level-synchronous sweeps."""

import os
from concurrent.futures import ThreadPoolExecutor

THREADS_ENV = "DENSECORES_THREADS"


def resolve_threads(threads=None) -> int:
    if threads is None:
        threads = os.environ.get(THREADS_ENV, 1)
    try:
        threads = int(threads)
    except (TypeError, ValueError):
        raise ValueError(f"thread count must be an integer, got {threads!r}") from None
    if threads < 1:
        raise ValueError("thread count must be at least 1")
    return threads


class Pool:
    """``map`` over work items, serially or on a thread pool.

    Items are split into one contiguous chunk per worker and results come
    back in input order, so the caller's reduction never sees scheduling.
    The compiled kernels release the GIL, which is what makes threads pay.
    """

    def __init__(self, threads=None):
        self.threads = resolve_threads(threads)
        self._ex = ThreadPoolExecutor(self.threads) if self.threads > 1 else None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        if self._ex is not None:
            self._ex.shutdown()

    def map(self, fn, items):
        items = list(items)
        if self._ex is None or len(items) < 2 * self.threads:
            return [fn(x) for x in items]
        step = -(-len(items) // self.threads)
        chunks = [items[i:i + step] for i in range(0, len(items), step)]
        out = []
        for part in self._ex.map(lambda chunk: [fn(x) for x in chunk], chunks):
            out.extend(part)
        return out
