"""Chunked, worker-count invariant sample evaluation.

Samples of one estimator term are cut into fixed-size chunks. Chunk ``c`` of
term ``t`` draws only from ``root.descend(t, c)``, and chunk moments are merged
with a fixed pairwise tree, so the result depends on ``(seed, params)`` and the
chunk size, never on scheduling.

Every term may evaluate several parameter sets at once ("panels"): sample
``s`` belongs to set ``s // samples_per_set`` and starts from that set's
initial state.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import TypeVar

import numpy as np
from django.conf import settings

from core.applications.sampling.streams import RngStream
from core.helpers.enums import StreamTerm
from core.helpers.utils import pairwise_reduce

logger = logging.getLogger(__name__)

T = TypeVar("T")
ChunkKernel = Callable[[RngStream, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Moments:
    """Per-set count, mean and sum of squared deviations."""

    count: np.ndarray
    mean: np.ndarray
    m2: np.ndarray

    @classmethod
    def from_values(cls, values: np.ndarray, set_ids: np.ndarray, sets: int) -> Moments:
        count = np.bincount(set_ids, minlength=sets).astype(float)
        totals = np.bincount(set_ids, weights=values, minlength=sets)
        mean = np.divide(totals, count, out=np.zeros(sets), where=count > 0)
        deviations = values - mean[set_ids]
        m2 = np.bincount(set_ids, weights=deviations * deviations, minlength=sets)
        return cls(count=count, mean=mean, m2=m2)

    def merge(self, other: Moments) -> Moments:
        count = self.count + other.count
        delta = other.mean - self.mean
        share = np.divide(other.count, count, out=np.zeros_like(count), where=count > 0)
        mean = self.mean + delta * share
        m2 = self.m2 + other.m2 + delta * delta * self.count * share
        return Moments(count=count, mean=mean, m2=m2)

    @property
    def variance(self) -> np.ndarray:
        """Unbiased sample variance; zero where fewer than two samples exist."""
        return np.divide(self.m2, self.count - 1, out=np.zeros_like(self.m2), where=self.count > 1)

    @property
    def std_err(self) -> np.ndarray:
        return np.sqrt(
            np.divide(self.variance, self.count, out=np.zeros_like(self.m2), where=self.count > 0),
        )


def resolve_chunk_size(chunk_size: int | None, steps: int | None = None) -> int:
    """Samples per chunk.

    An explicit ``chunk_size`` wins. The ``ROMBERG_CHUNK_SIZE`` default shrinks
    so one chunk holds at most ``ROMBERG_CHUNK_VALUES`` increments of a
    ``steps``-step path.
    """
    if chunk_size:
        return int(chunk_size)
    size = int(settings.ROMBERG_CHUNK_SIZE)
    if steps:
        size = min(size, max(1, int(settings.ROMBERG_CHUNK_VALUES) // steps))
    return size


def resolve_workers(workers: int | None) -> int:
    return max(1, int(workers or settings.ROMBERG_WORKERS))


def map_chunks(
    evaluate: Callable[[int], T],
    chunks: int,
    workers: int | None = None,
) -> list[T]:
    """Evaluate chunk indices ``0 .. chunks - 1`` in order on up to ``workers`` threads."""
    pool_size = min(resolve_workers(workers), chunks)
    if pool_size > 1:
        with ThreadPoolExecutor(max_workers=pool_size) as executor:
            return list(executor.map(evaluate, range(chunks)))
    return [evaluate(chunk) for chunk in range(chunks)]


def run_term(
    kernel: ChunkKernel,
    *,
    stream: RngStream,
    term: StreamTerm,
    initial_states: np.ndarray,
    samples_per_set: int,
    chunk_size: int | None = None,
    workers: int | None = None,
    steps: int | None = None,
) -> Moments:
    """Evaluate ``kernel`` on ``samples_per_set`` samples of every parameter set.

    Args:
        kernel (ChunkKernel): Maps a chunk stream and per-sample initial states
            ``(S, d)`` to one value per sample.
        stream (RngStream): Root stream of the estimator call.
        term (StreamTerm): Branch of ``stream`` this term draws from.
        initial_states (np.ndarray): One starting state per set, ``(P, d)``.
        samples_per_set (int): Samples drawn for each set.
        chunk_size (int, optional): Samples per chunk; ``ROMBERG_CHUNK_SIZE``.
        workers (int, optional): Threads evaluating chunks; ``ROMBERG_WORKERS``.
        steps (int, optional): Path length per sample, caps the default chunk size.

    Returns:
        Moments: Per-set moments of the kernel values.
    """
    initial_states = np.atleast_2d(np.asarray(initial_states, dtype=float))
    sets = initial_states.shape[0]
    total = sets * samples_per_set
    size = resolve_chunk_size(chunk_size, steps)
    chunks = -(-total // size)
    branch = stream.split(term.index)

    def evaluate(chunk: int) -> Moments:
        start = chunk * size
        stop = min(start + size, total)
        set_ids = np.arange(start, stop) // samples_per_set
        values = np.asarray(kernel(branch.split(chunk), initial_states[set_ids]), dtype=float)
        return Moments.from_values(values, set_ids, sets)

    partials = map_chunks(evaluate, chunks, workers)
    logger.debug(
        "term %s: %d sets x %d samples in %d chunks",
        term.value,
        sets,
        samples_per_set,
        chunks,
    )
    return pairwise_reduce(partials, Moments.merge)
