"""
Ordered worker pool for the embarrassingly parallel scans.

Results come back in input order whatever the worker count, so corpora and
tables do not depend on scheduling.
"""

import multiprocessing
from typing import Callable, Iterable, Iterator, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(func: Callable[[T], R], items: Iterable[T], workers: int = 1, chunksize: int = 1) -> Iterator[R]:
    """
    Yield func(item) for every item, in order.

    func must be a module-level function when workers > 1.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        yield from map(func, items)
        return
    with multiprocessing.Pool(processes=min(workers, len(items))) as pool:
        yield from pool.imap(func, items, chunksize)
