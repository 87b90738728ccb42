"""Time grids, Brownian increments and exact coarsening between nested grids.

Grid nodes are stored as integer ticks on a lattice of ``resolution`` cells
over ``[0, horizon]``. Union grids of two uniform partitions live on the
lattice of the least common multiple, so embedding tests are exact integer
comparisons and never depend on floating-point node values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from core.applications.sampling.streams import RngStream
from core.helpers.custom_exceptions import GridMismatchError
from core.helpers.custom_exceptions import InvalidParameterError


@dataclass(frozen=True, eq=False)
class TimeGrid:
    horizon: float
    ticks: np.ndarray
    resolution: int

    def __post_init__(self):
        if not (math.isfinite(self.horizon) and self.horizon > 0):
            msg = "grid horizon must be a positive finite time"
            raise InvalidParameterError(msg, {"horizon": self.horizon})
        ticks = np.asarray(self.ticks, dtype=np.int64)
        if ticks.ndim != 1 or ticks.size < 2:  # noqa: PLR2004
            msg = "a grid needs at least two nodes"
            raise InvalidParameterError(msg)
        if ticks[0] != 0 or ticks[-1] != self.resolution or np.any(np.diff(ticks) <= 0):
            msg = "grid ticks must increase strictly from 0 to the resolution"
            raise InvalidParameterError(msg, {"resolution": self.resolution})
        ticks.setflags(write=False)
        object.__setattr__(self, "ticks", ticks)

    @classmethod
    def uniform(cls, horizon: float, step_count: int) -> TimeGrid:
        """Uniform partition ``t_k = k T / n``."""
        if step_count < 1:
            msg = "step count must be a positive integer"
            raise InvalidParameterError(msg, {"step_count": step_count})
        return cls(horizon=float(horizon), ticks=np.arange(step_count + 1), resolution=step_count)

    @classmethod
    def union(cls, *grids: TimeGrid) -> TimeGrid:
        """Merged partition containing every node of every grid."""
        horizon = grids[0].horizon
        if any(grid.horizon != horizon for grid in grids):
            msg = "only grids with the same horizon can be merged"
            raise GridMismatchError(msg, {"horizons": [grid.horizon for grid in grids]})
        resolution = math.lcm(*(grid.resolution for grid in grids))
        ticks = np.unique(
            np.concatenate([grid.ticks * (resolution // grid.resolution) for grid in grids]),
        )
        return cls(horizon=horizon, ticks=ticks, resolution=resolution)

    @property
    def step_count(self) -> int:
        return self.ticks.size - 1

    @cached_property
    def nodes(self) -> np.ndarray:
        nodes = self.ticks * (self.horizon / self.resolution)
        nodes[-1] = self.horizon
        return nodes

    @cached_property
    def durations(self) -> np.ndarray:
        return np.diff(self.ticks) * (self.horizon / self.resolution)

    @property
    def is_uniform(self) -> bool:
        gaps = np.diff(self.ticks)
        return bool(np.all(gaps == gaps[0]))

    @property
    def step(self) -> float:
        """Step ``δ = T/n`` of a uniform grid."""
        if not self.is_uniform:
            msg = "step is only defined on uniform grids"
            raise InvalidParameterError(msg)
        return self.horizon / self.step_count

    def node_positions(self, coarse: TimeGrid) -> np.ndarray:
        """Indices in this grid of every node of ``coarse``.

        Raises:
            GridMismatchError: when ``coarse`` has a node this grid lacks.
        """
        if coarse.horizon != self.horizon:
            msg = "coarse grid horizon differs from the fine grid"
            raise GridMismatchError(msg, {"fine": self.horizon, "coarse": coarse.horizon})
        lattice = math.lcm(self.resolution, coarse.resolution)
        fine_ticks = self.ticks * (lattice // self.resolution)
        coarse_ticks = coarse.ticks * (lattice // coarse.resolution)
        positions = np.searchsorted(fine_ticks, coarse_ticks)
        inside = positions < fine_ticks.size
        if not inside.all() or np.any(fine_ticks[positions] != coarse_ticks):
            msg = "coarse grid is not embedded in the fine grid"
            raise GridMismatchError(
                msg,
                {"fine_steps": self.step_count, "coarse_steps": coarse.step_count},
            )
        return positions

    def embeds(self, coarse: TimeGrid) -> bool:
        try:
            self.node_positions(coarse)
        except GridMismatchError:
            return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TimeGrid):
            return NotImplemented
        return (
            self.horizon == other.horizon
            and self.resolution == other.resolution
            and np.array_equal(self.ticks, other.ticks)
        )

    def __hash__(self) -> int:
        return hash((self.horizon, self.resolution, self.ticks.tobytes()))

    def __repr__(self) -> str:
        return f"TimeGrid(horizon={self.horizon}, steps={self.step_count}, resolution={self.resolution})"


@dataclass(frozen=True, eq=False)
class PathIncrements:
    """Brownian increments on ``grid``, shaped ``(samples, steps, q)``."""

    grid: TimeGrid
    increments: np.ndarray

    def __post_init__(self):
        if self.increments.ndim != 3 or self.increments.shape[1] != self.grid.step_count:  # noqa: PLR2004
            msg = "increments must be shaped (samples, steps, q) with one step per grid interval"
            raise InvalidParameterError(
                msg,
                {"shape": self.increments.shape, "steps": self.grid.step_count},
            )

    @property
    def samples(self) -> int:
        return self.increments.shape[0]

    @property
    def dimension(self) -> int:
        return self.increments.shape[2]

    def positions(self) -> np.ndarray:
        """Brownian values at every node, ``W_0 = 0`` included."""
        zero = np.zeros((self.samples, 1, self.dimension))
        return np.concatenate([zero, np.cumsum(self.increments, axis=1)], axis=1)

    def terminal(self) -> np.ndarray:
        """``W_T`` per sample, shaped ``(samples, q)``."""
        return self.increments.sum(axis=1)


def brownian_increments(
    stream: RngStream,
    grid: TimeGrid,
    q: int = 1,
    samples: int = 1,
) -> PathIncrements:
    """Independent ``N(0, Δt I_q)`` increments over each interval of ``grid``."""
    if q < 1 or samples < 1:
        msg = "driving dimension and sample count must be positive"
        raise InvalidParameterError(msg, {"q": q, "samples": samples})
    normals = stream.normals((samples, grid.step_count, q))
    return PathIncrements(grid=grid, increments=normals * np.sqrt(grid.durations)[None, :, None])


def coarsen_increments(fine: PathIncrements, coarse_grid: TimeGrid) -> PathIncrements:
    """Sum fine increments over each coarse interval.

    The coarse path is the fine path observed at fewer nodes, so the joint law
    of the two is exact.

    Raises:
        GridMismatchError: when ``coarse_grid`` is not embedded in ``fine.grid``.
    """
    if coarse_grid == fine.grid:
        return fine
    positions = fine.grid.node_positions(coarse_grid)
    merged = np.add.reduceat(fine.increments, positions[:-1], axis=1)
    return PathIncrements(grid=coarse_grid, increments=merged)
