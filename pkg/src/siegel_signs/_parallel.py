import os
from concurrent.futures import ThreadPoolExecutor


def resolve_threads(threads: int) -> int:
    if threads is None or threads <= 0:
        return os.cpu_count() or 1
    return threads


def chunked_ranges(lo: int, hi: int, parts: int):
    """Split ``[lo, hi)`` into at most ``parts`` contiguous ranges, in order."""
    parts = max(1, min(parts, hi - lo))
    step, extra = divmod(hi - lo, parts)
    out = []
    start = lo
    for i in range(parts):
        stop = start + step + (1 if i < extra else 0)
        out.append((start, stop))
        start = stop
    return out


def ordered_map(fn, items, threads: int):
    """``list(map(fn, items))`` on a thread pool; output order is input order."""
    items = list(items)
    threads = resolve_threads(threads)
    if threads == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
