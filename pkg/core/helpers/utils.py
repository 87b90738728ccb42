import math
import time
from collections.abc import Callable
from collections.abc import Sequence
from contextlib import contextmanager
from typing import TypeVar

T = TypeVar("T")


def round_half_up(value: float) -> int:
    """Round to the nearest integer, ties away from zero for positive values.

    Powers such as ``1000 ** (1 / 3)`` land a few ulps below the integer they
    represent, so the value is first snapped to 12 significant digits.
    """
    snapped = float(f"{value:.12g}")
    return int(math.floor(snapped + 0.5))


def pairwise_reduce(items: Sequence[T], combine: Callable[[T, T], T]) -> T:
    """Reduce ``items`` with a fixed-shape binary tree.

    The shape depends only on ``len(items)``, never on how the items were
    produced, so floating-point results do not change with the worker count.

    Args:
        items (Sequence[T]): Non-empty sequence of partial results, in order.
        combine (Callable[[T, T], T]): Associative merge of two neighbours.

    Returns:
        T: The reduced value.
    """
    if not items:
        msg = "cannot reduce an empty sequence"
        raise ValueError(msg)
    level = list(items)
    while len(level) > 1:
        merged = [combine(level[i], level[i + 1]) for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            merged.append(level[-1])
        level = merged
    return level[0]


@contextmanager
def stopwatch():
    """Yield a dict whose ``seconds`` key holds the elapsed wall time on exit."""
    elapsed = {"seconds": 0.0}
    start = time.perf_counter()
    try:
        yield elapsed
    finally:
        elapsed["seconds"] = time.perf_counter() - start
