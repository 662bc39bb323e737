"""
Order-preserving worker pool for independent work items
"""

import logging
from typing import Callable, Iterable, List, Optional, TypeVar

from joblib import Parallel, delayed

from albscreen.core.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

T = TypeVar("T")


def resolve_threads(threads: Optional[int]) -> int:
    """Worker count from an explicit value or ALBSCREEN_THREADS"""
    if threads is None:
        from albscreen.core.settings import get_settings
        threads = get_settings().threads
    if threads < 1:
        raise InvalidArgumentError(f"threads must be >= 1, got {threads}")
    return int(threads)


def run_parallel(func: Callable[..., T], items: Iterable, threads: Optional[int] = None) -> List[T]:
    """
    Apply func to every item, returning results in item order.

    Args:
        func: called as func(item)
        items: independent work items
        threads: worker count (1 runs inline)

    Returns:
        list of results, same order as items regardless of worker count
    """
    items = list(items)
    n_jobs = resolve_threads(threads)
    if n_jobs == 1 or len(items) <= 1:
        return [func(item) for item in items]
    # func must be thread-safe
    return Parallel(n_jobs=min(n_jobs, len(items)), prefer="threads")(
        delayed(func)(item) for item in items
    )
