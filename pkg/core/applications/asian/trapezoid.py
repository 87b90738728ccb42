"""Trapezoidal discretisation of the time-averaged price ``I_T = (1/T) ∫ S_u du``."""

import math

import numpy as np
from django.conf import settings

from core.applications.diffusions.schemas import GbmParams
from core.applications.diffusions.sde import gbm_exact_nodes
from core.applications.estimators.engine import map_chunks
from core.applications.estimators.engine import resolve_chunk_size
from core.applications.sampling.grids import PathIncrements
from core.applications.sampling.grids import TimeGrid
from core.applications.sampling.grids import brownian_increments
from core.applications.sampling.grids import coarsen_increments
from core.applications.sampling.streams import RngStream
from core.helpers.enums import StreamTerm


def trapezoidal_integral(
    p: GbmParams,
    w: PathIncrements,
    spots: np.ndarray | None = None,
) -> np.ndarray:
    """``I^n_T = (1/T) Σ δ S_{t_{k−1}} (1 + rδ/2 + σ ΔW_k / 2)`` per sample.

    Prices at the nodes are exact, never Euler approximations.
    """
    return terminal_and_average(p, w, spots)[1]


def terminal_and_average(
    p: GbmParams,
    w: PathIncrements,
    spots: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """``(S_T, I^n_T)`` for every sample of ``w``."""
    prices = gbm_exact_nodes(p, w, spots)
    return prices[:, -1], average_from_prices(p, w, prices)


def average_from_prices(p: GbmParams, w: PathIncrements, prices: np.ndarray) -> np.ndarray:
    """Trapezoid sum given the exact prices ``(S, steps + 1)`` at the nodes of ``w.grid``."""
    deltas = w.grid.durations[None, :]
    weights = 1.0 + 0.5 * p.r * deltas + 0.5 * p.sigma * w.increments[:, :, 0]
    return (deltas * prices[:, :-1] * weights).sum(axis=1) / p.horizon


def expected_average(p: GbmParams) -> float:
    """``E I_T = s0 (e^{rT} − 1) / (rT)``, or ``s0`` when ``r = 0``."""
    growth = p.r * p.horizon
    if growth == 0:
        return p.s0
    return p.s0 * math.expm1(growth) / growth


def trapezoid_strong_error(
    p: GbmParams,
    n_list: list[int],
    samples: int,
    stream: RngStream,
    refinement: int | None = None,
    chunk_size: int | None = None,
) -> list[tuple[int, float]]:
    """RMS of ``I^n_T − I^ref_T`` with the reference on the path refined ``refinement`` times.

    The reference uses the same trapezoid formula on ``refinement · n`` steps
    of the coupled path; its own error is ``refinement`` times smaller.
    """
    factor = refinement or settings.ROMBERG_REFINEMENT_FACTOR
    points = []
    for index, n in enumerate(n_list):
        coarse = TimeGrid.uniform(p.horizon, n)
        fine = TimeGrid.uniform(p.horizon, n * factor)
        branch = stream.descend(StreamTerm.COUPLED.index, index)
        size = resolve_chunk_size(chunk_size, fine.step_count)

        def squared_errors(chunk, coarse=coarse, fine=fine, branch=branch, size=size):
            count = min(size, samples - chunk * size)
            w = brownian_increments(branch.split(chunk), fine, samples=count)
            reference = trapezoidal_integral(p, w)
            approximation = trapezoidal_integral(p, coarsen_increments(w, coarse))
            return float(np.sum((approximation - reference) ** 2))

        chunks = -(-samples // size)
        total = sum(map_chunks(squared_errors, chunks))
        points.append((n, math.sqrt(total / samples)))
    return points
