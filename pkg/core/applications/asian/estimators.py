"""Crude and statistical Romberg estimators of ``e^{−rT} E f(S_T, I_T)`` on the trapezoid."""

import logging

import numpy as np

from core.applications.asian.schemas import AsianPayoff
from core.applications.asian.trapezoid import terminal_and_average
from core.applications.diffusions.schemas import GbmParams
from core.applications.estimators.engine import run_term
from core.applications.estimators.monte_carlo import MIN_MC_SAMPLES
from core.applications.estimators.monte_carlo import combine_terms
from core.applications.estimators.schemas import EstimateResult
from core.applications.estimators.schemas import SrParams
from core.applications.sampling.grids import TimeGrid
from core.applications.sampling.grids import brownian_increments
from core.applications.sampling.grids import coarsen_increments
from core.applications.sampling.streams import RngStream
from core.helpers.custom_exceptions import InvalidParameterError
from core.helpers.enums import SchemeKind
from core.helpers.enums import StreamTerm
from core.helpers.utils import stopwatch

logger = logging.getLogger(__name__)


def trapezoid_kernel(p: GbmParams, payoff: AsianPayoff, n: int):
    grid = TimeGrid.uniform(p.horizon, n)

    def kernel(stream: RngStream, initial: np.ndarray) -> np.ndarray:
        w = brownian_increments(stream, grid, samples=initial.shape[0])
        return payoff.value(*terminal_and_average(p, w, initial[:, 0]))

    return kernel


def coupled_trapezoid_kernel(p: GbmParams, payoff: AsianPayoff, n: int, m: int):
    """``f(S_T, I^n_T) − f(S_T, I^m_T)`` on one union-grid path."""
    fine = TimeGrid.uniform(p.horizon, n)
    coarse = TimeGrid.uniform(p.horizon, m)
    union = TimeGrid.union(fine, coarse)

    def kernel(stream: RngStream, initial: np.ndarray) -> np.ndarray:
        w = brownian_increments(stream, union, samples=initial.shape[0])
        spots = initial[:, 0]
        fine_value = payoff.value(*terminal_and_average(p, coarsen_increments(w, fine), spots))
        coarse_value = payoff.value(*terminal_and_average(p, coarsen_increments(w, coarse), spots))
        return fine_value - coarse_value

    return kernel


def mc_asian_estimate(
    p: GbmParams,
    payoff: AsianPayoff,
    n: int,
    samples: int,
    stream: RngStream,
    **engine_options,
) -> EstimateResult:
    """Crude Monte Carlo on the trapezoid with ``n`` steps."""
    if samples < MIN_MC_SAMPLES:
        msg = "crude Monte Carlo needs at least two samples"
        raise InvalidParameterError(msg, {"samples": samples})
    with stopwatch() as elapsed:
        moments = run_term(
            trapezoid_kernel(p, payoff, n),
            stream=stream,
            term=StreamTerm.CRUDE,
            initial_states=np.array([[p.s0]]),
            samples_per_set=samples,
            **engine_options,
        )
    return EstimateResult(
        value=p.discount * float(moments.mean[0]),
        std_err=p.discount * float(moments.std_err[0]),
        coarse_samples=samples,
        correction_samples=0,
        wall_seconds=elapsed["seconds"],
        seed=stream.master_seed,
    )


def sr_asian_estimate(
    p: GbmParams,
    payoff: AsianPayoff,
    params: SrParams,
    stream: RngStream,
    **engine_options,
) -> EstimateResult:
    """``E^1_n + E^2_n``: independent coarse trapezoids plus coupled fine/coarse corrections."""
    if params.scheme != SchemeKind.TRAPEZOIDAL:
        msg = "the Asian estimator needs scheme=trapezoidal"
        raise InvalidParameterError(msg, {"scheme": str(params.scheme)})
    initial = np.array([[p.s0]])
    with stopwatch() as elapsed:
        coarse = run_term(
            trapezoid_kernel(p, payoff, params.m),
            stream=stream,
            term=StreamTerm.COARSE,
            initial_states=initial,
            samples_per_set=params.coarse_samples,
            **engine_options,
        )
        correction = run_term(
            coupled_trapezoid_kernel(p, payoff, params.n, params.m),
            stream=stream,
            term=StreamTerm.COUPLED,
            initial_states=initial,
            samples_per_set=params.correction_samples,
            **engine_options,
        )
    values, std_errs = combine_terms(coarse, correction)
    logger.debug(
        "asian sr n=%d m=%d N_m=%d N_n=%d in %.3fs",
        params.n,
        params.m,
        params.coarse_samples,
        params.correction_samples,
        elapsed["seconds"],
    )
    return EstimateResult(
        value=p.discount * float(values[0]),
        std_err=p.discount * float(std_errs[0]),
        coarse_samples=params.coarse_samples,
        correction_samples=params.correction_samples,
        wall_seconds=elapsed["seconds"],
        seed=stream.master_seed,
    )
