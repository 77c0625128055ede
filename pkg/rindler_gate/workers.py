"""Thread pool for independent grid cells"""

import concurrent.futures
import logging
import os
from typing import Callable, Iterable, List, Optional, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV = "RINDLER_GATE_THREADS"


def worker_count(requested: Optional[int] = None) -> int:
    """Threads to use: explicit request, else RINDLER_GATE_THREADS, 0 meaning all cores"""
    if requested is None:
        raw = os.getenv(THREADS_ENV, "0").strip() or "0"
        try:
            requested = int(raw)
        except ValueError:
            logger.warning("ignoring %s=%r (not an integer)", THREADS_ENV, raw)
            requested = 0
    if requested <= 0:
        return os.cpu_count() or 1
    return requested


def parallel_map(func: Callable[[T], R], items: Iterable[T],
                 max_workers: Optional[int] = None) -> List[R]:
    """Apply func to every item; results keep the input order"""
    items = list(items)
    workers = min(worker_count(max_workers), max(1, len(items)))
    if workers == 1:
        return [func(item) for item in items]
    logger.debug("mapping %d items over %d threads", len(items), workers)
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))
