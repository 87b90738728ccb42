"""Limit process of the trapezoid error and the first-order weak-error expansion.

``n (J − J^n)`` converges stably to ``χ_t = σ/(2√3) ∫ S dB′`` with ``B′`` a
Brownian motion independent of ``W``; consequently
``n E(f(S_T, I^n_T) − f(S_T, I_T)) → E(∂₂f(S_T, I_T) χ_T)``.
"""

import math

import numpy as np
from django.conf import settings

from core.applications.asian.schemas import AsianPayoff
from core.applications.asian.schemas import ChiSample
from core.applications.asian.trapezoid import average_from_prices
from core.applications.asian.trapezoid import terminal_and_average
from core.applications.diffusions.schemas import GbmParams
from core.applications.diffusions.sde import gbm_exact_nodes
from core.applications.estimators.engine import map_chunks
from core.applications.estimators.engine import resolve_chunk_size
from core.applications.estimators.engine import run_term
from core.applications.estimators.schemas import EstimateResult
from core.applications.sampling.grids import TimeGrid
from core.applications.sampling.grids import brownian_increments
from core.applications.sampling.grids import coarsen_increments
from core.applications.sampling.streams import RngStream
from core.helpers.custom_exceptions import InvalidParameterError
from core.helpers.enums import StreamTerm
from core.helpers.utils import stopwatch

MIN_CHI_STEPS = 64
CHI_SCALE = 1 / (2 * math.sqrt(3))


def chi_variance(p: GbmParams) -> float:
    """``Var χ_T = (σ²/12) s0² (e^{(2r+σ²)T} − 1) / (2r + σ²)``."""
    rate = 2 * p.r + p.sigma**2
    integral = p.horizon if rate == 0 else math.expm1(rate * p.horizon) / rate
    return p.sigma**2 / 12 * p.s0**2 * integral


def chi_path(p: GbmParams, grid: TimeGrid, stream: RngStream, samples: int):
    """Price path on ``grid`` from ``stream.split(0)`` and ``χ_T`` from ``stream.split(1)``.

    ``χ_T`` is the left-point Itô sum of ``S`` against the independent ``B′``.
    """
    w = brownian_increments(stream.split(0), grid, samples=samples)
    b_prime = stream.split(1).normals((samples, grid.step_count)) * np.sqrt(grid.durations)[None, :]
    prices = gbm_exact_nodes(p, w)
    chi = p.sigma * CHI_SCALE * np.sum(prices[:, :-1] * b_prime, axis=1)
    return w, prices, chi


def check_chi_grid(grid: TimeGrid) -> None:
    if grid.step_count < MIN_CHI_STEPS:
        msg = "the stochastic integral needs a grid with at least 64 steps"
        raise InvalidParameterError(msg, {"steps": grid.step_count})


def simulate_chi(
    p: GbmParams,
    fine_grid: TimeGrid,
    stream: RngStream,
    samples: int = 10_000,
    chunk_size: int | None = None,
    workers: int | None = None,
) -> ChiSample:
    """``χ_T`` co-simulated with ``W_T``, ``S_T`` and the trapezoid ``I_T`` on ``fine_grid``."""
    check_chi_grid(fine_grid)
    size = resolve_chunk_size(chunk_size)
    branch = stream.split(StreamTerm.EXTRA.index)

    def evaluate(chunk: int):
        count = min(size, samples - chunk * size)
        w, prices, chi = chi_path(p, fine_grid, branch.split(chunk), count)
        return chi, w.terminal()[:, 0], prices[:, -1], average_from_prices(p, w, prices)

    parts = map_chunks(evaluate, -(-samples // size), workers)
    chi_t, w_t, s_t, i_t = (np.concatenate(column) for column in zip(*parts, strict=True))
    return ChiSample(chi_T=chi_t, w_T=w_t, s_T=s_t, i_T=i_t)


def weak_error_limit(
    p: GbmParams,
    payoff: AsianPayoff,
    stream: RngStream,
    n: int | None = None,
    samples: int = 100_000,
    **engine_options,
) -> EstimateResult:
    """Monte Carlo estimate of ``E(∂₂f(S_T, I_T) χ_T)``.

    ``I_T`` is the trapezoid on an ``n``-step reference grid (default
    ``ROMBERG_ASIAN_ORACLE_STEPS``) and ``χ`` is co-simulated on that grid.
    The result is undiscounted, like the expansion it estimates.
    """
    grid = TimeGrid.uniform(p.horizon, n or settings.ROMBERG_ASIAN_ORACLE_STEPS)
    check_chi_grid(grid)

    def kernel(chunk_stream: RngStream, initial: np.ndarray) -> np.ndarray:
        w, prices, chi = chi_path(p, grid, chunk_stream, initial.shape[0])
        average = average_from_prices(p, w, prices)
        return payoff.average_slope(prices[:, -1], average) * chi

    with stopwatch() as elapsed:
        moments = run_term(
            kernel,
            stream=stream,
            term=StreamTerm.EXTRA,
            initial_states=np.array([[p.s0]]),
            samples_per_set=samples,
            **engine_options,
        )
    return EstimateResult(
        value=float(moments.mean[0]),
        std_err=float(moments.std_err[0]),
        coarse_samples=samples,
        correction_samples=0,
        wall_seconds=elapsed["seconds"],
        seed=stream.master_seed,
    )


def trapezoid_bias(
    p: GbmParams,
    payoff: AsianPayoff,
    n: int,
    samples: int,
    stream: RngStream,
    refinement: int | None = None,
    **engine_options,
) -> EstimateResult:
    """Directly measured ``n E(f(S_T, I^n_T) − f(S_T, I^ref_T))``, undiscounted.

    The reference trapezoid runs on the same path refined ``refinement`` times
    (default ``ROMBERG_REFINEMENT_FACTOR``); default chunks shrink with the
    reference grid.
    """
    coarse = TimeGrid.uniform(p.horizon, n)
    fine = TimeGrid.uniform(p.horizon, n * (refinement or settings.ROMBERG_REFINEMENT_FACTOR))

    def kernel(chunk_stream: RngStream, initial: np.ndarray) -> np.ndarray:
        w = brownian_increments(chunk_stream, fine, samples=initial.shape[0])
        reference = payoff.value(*terminal_and_average(p, w))
        approximation = payoff.value(*terminal_and_average(p, coarsen_increments(w, coarse)))
        return n * (approximation - reference)

    with stopwatch() as elapsed:
        moments = run_term(
            kernel,
            stream=stream,
            term=StreamTerm.COUPLED,
            initial_states=np.array([[p.s0]]),
            samples_per_set=samples,
            steps=fine.step_count,
            **engine_options,
        )
    return EstimateResult(
        value=float(moments.mean[0]),
        std_err=float(moments.std_err[0]),
        coarse_samples=0,
        correction_samples=samples,
        wall_seconds=elapsed["seconds"],
        seed=stream.master_seed,
    )
