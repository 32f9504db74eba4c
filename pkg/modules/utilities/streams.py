"""Reproducible random streams and ordered batch execution."""
import concurrent.futures
import logging
from typing import Callable, TypeVar

import numpy as np

from . import config, custom_error

log = logging.getLogger(name="log." + __name__)

T = TypeVar("T")

MAX_SEED = 2**64 - 1


def validate_seed(seed: int) -> int:
    """Confirms the seed is a non-negative 64-bit integer. Raises ToolkitError otherwise."""
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or not 0 <= int(seed) <= MAX_SEED:
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message=f"Seed must be an integer in [0, 2**64 - 1], got {seed!r}.",
        )
    return int(seed)


def generator(seed: int, stream: int) -> np.random.Generator:
    """Returns the generator of stream number `stream` derived from `seed`.
    Streams are Philox counters jumped by (stream + 1) * 2**128 steps, so they never overlap."""
    seed = validate_seed(seed=seed)
    return np.random.Generator(np.random.Philox(seed).jumped(jumps=stream + 1))


def split_batches(total: int, batch_size: int) -> list[int]:
    """Splits `total` work items into consecutive batch sizes, the last one possibly shorter."""
    if total < 1 or batch_size < 1:
        raise custom_error.ToolkitError(
            summary="ParameterError",
            message=f"Cannot split {total} items into batches of {batch_size}.",
        )
    full, rest = divmod(total, batch_size)
    return [batch_size] * full + ([rest] if rest else [])


def map_batches(
    worker: Callable[[int, int], T],
    total: int,
    batch_size: int = config.SWEEP_BATCH_SIZE,
    threads: int = config.THREADS,
) -> list[T]:
    """
    Runs worker(batch_index, batch_size) for every batch and returns results in batch order.

    Parameters:
        worker (Callable[[int, int], T]): pure function of the batch index and size
        total (int): number of work items
        batch_size (int, optional): items per batch. Defaults to config.SWEEP_BATCH_SIZE.
        threads (int, optional): worker threads. Defaults to config.THREADS.

    Returns:
        list[T]: one result per batch, ordered by batch index
    """
    sizes = split_batches(total=total, batch_size=batch_size)
    log.debug(msg=f"Running {len(sizes)} batches on {threads} thread(s).")

    if threads <= 1 or len(sizes) == 1:
        return [worker(index, size) for index, size in enumerate(sizes)]

    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, range(len(sizes)), sizes))
