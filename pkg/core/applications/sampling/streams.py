"""Reproducible, splittable random streams.

A stream is a pure function of ``(master_seed, path)``: the path is fed to
``numpy.random.SeedSequence`` as its spawn key and the resulting entropy keys
a counter-based Philox generator. Nothing is stateful until ``generator()``
is called, so streams can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from core.helpers.custom_exceptions import InvalidParameterError

SEED_LIMIT = 2**64
INDEX_LIMIT = 2**32


@dataclass(frozen=True, slots=True)
class RngStream:
    master_seed: int
    path: tuple[int, ...] = ()

    def __post_init__(self):
        if not 0 <= self.master_seed < SEED_LIMIT:
            msg = "master seed must be a 64-bit unsigned integer"
            raise InvalidParameterError(msg, {"master_seed": self.master_seed})
        for index in self.path:
            if not 0 <= index < INDEX_LIMIT:
                msg = "stream indices must be 32-bit unsigned integers"
                raise InvalidParameterError(msg, {"index": index})

    def split(self, index: int) -> RngStream:
        return split_stream(self, index)

    def descend(self, *indices: int) -> RngStream:
        """Split repeatedly, one level per index."""
        stream = self
        for index in indices:
            stream = stream.split(index)
        return stream

    def seed_sequence(self) -> np.random.SeedSequence:
        return np.random.SeedSequence(self.master_seed, spawn_key=self.path)

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream."""
        return np.random.Generator(np.random.Philox(self.seed_sequence()))

    def normals(self, shape: int | tuple[int, ...]) -> np.ndarray:
        """Standard normal draws from the start of the stream."""
        return self.generator().standard_normal(shape)


def split_stream(parent: RngStream, index: int) -> RngStream:
    """Child stream whose path is ``parent.path`` extended by ``index``.

    Siblings differ in the last spawn-key entry, which SeedSequence hashes into
    unrelated Philox keys; ``split(split(s, 1), 2)`` and ``split(split(s, 2), 1)``
    are therefore distinct streams.
    """
    return RngStream(parent.master_seed, (*parent.path, int(index)))
