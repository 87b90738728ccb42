"""Crude Monte Carlo and two-level statistical Romberg estimators on the Euler scheme."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from core.applications.diffusions.functions import TestFunction
from core.applications.diffusions.functions import eval_test_function
from core.applications.diffusions.sde import DiffusionModel
from core.applications.diffusions.sde import euler_terminal
from core.applications.estimators.engine import Moments
from core.applications.estimators.engine import run_term
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

MIN_MC_SAMPLES = 2
MIN_VARIANCE_SAMPLES = 100


@dataclass(frozen=True)
class PanelResult:
    """Estimates for several parameter sets computed in one call."""

    values: np.ndarray
    std_errs: np.ndarray
    wall_seconds: float


def crude_kernel(model: DiffusionModel, f: TestFunction, n: int):
    grid = TimeGrid.uniform(model.horizon, n)

    def kernel(stream: RngStream, initial: np.ndarray) -> np.ndarray:
        w = brownian_increments(stream, grid, model.driving_dimension, samples=initial.shape[0])
        return eval_test_function(f, euler_terminal(model, grid, w, initial))

    return kernel


def coupled_kernel(model: DiffusionModel, f: TestFunction, n: int, m: int):
    """``f(X^n_T) − f(X^m_T)`` with both schemes driven by one union-grid path."""
    fine = TimeGrid.uniform(model.horizon, n)
    coarse = TimeGrid.uniform(model.horizon, m)
    union = TimeGrid.union(fine, coarse)

    def kernel(stream: RngStream, initial: np.ndarray) -> np.ndarray:
        w = brownian_increments(stream, union, model.driving_dimension, samples=initial.shape[0])
        fine_terminal = euler_terminal(model, fine, coarsen_increments(w, fine), initial)
        coarse_terminal = euler_terminal(model, coarse, coarsen_increments(w, coarse), initial)
        return eval_test_function(f, fine_terminal) - eval_test_function(f, coarse_terminal)

    return kernel


def mc_panel(
    model: DiffusionModel,
    initial_states: np.ndarray,
    f: TestFunction,
    n: int,
    samples: int,
    stream: RngStream,
    **engine_options,
) -> PanelResult:
    """``(1/N) Σ f(X^n_{T,i})`` for every row of ``initial_states``."""
    if samples < MIN_MC_SAMPLES:
        msg = "crude Monte Carlo needs at least two samples"
        raise InvalidParameterError(msg, {"samples": samples})
    with stopwatch() as elapsed:
        moments = run_term(
            crude_kernel(model, f, n),
            stream=stream,
            term=StreamTerm.CRUDE,
            initial_states=initial_states,
            samples_per_set=samples,
            **engine_options,
        )
    return PanelResult(values=moments.mean, std_errs=moments.std_err, wall_seconds=elapsed["seconds"])


def sr_terms(
    model: DiffusionModel,
    initial_states: np.ndarray,
    f: TestFunction,
    p: SrParams,
    stream: RngStream,
    **engine_options,
) -> tuple[Moments, Moments]:
    """Moments of the independent coarse term and of the coupled correction term."""
    if p.scheme != SchemeKind.EULER:
        msg = "the Euler estimator needs scheme=euler; use the Asian estimator for the trapezoid"
        raise InvalidParameterError(msg, {"scheme": str(p.scheme)})
    coarse = run_term(
        crude_kernel(model, f, p.m),
        stream=stream,
        term=StreamTerm.COARSE,
        initial_states=initial_states,
        samples_per_set=p.coarse_samples,
        **engine_options,
    )
    correction = run_term(
        coupled_kernel(model, f, p.n, p.m),
        stream=stream,
        term=StreamTerm.COUPLED,
        initial_states=initial_states,
        samples_per_set=p.correction_samples,
        **engine_options,
    )
    return coarse, correction


def combine_terms(coarse: Moments, correction: Moments) -> tuple[np.ndarray, np.ndarray]:
    """Sum of the term means and the quadrature sum of their standard errors."""
    values = coarse.mean + correction.mean
    std_errs = np.sqrt(coarse.std_err**2 + correction.std_err**2)
    return values, std_errs


def sr_panel(
    model: DiffusionModel,
    initial_states: np.ndarray,
    f: TestFunction,
    p: SrParams,
    stream: RngStream,
    **engine_options,
) -> PanelResult:
    with stopwatch() as elapsed:
        coarse, correction = sr_terms(model, initial_states, f, p, stream, **engine_options)
    values, std_errs = combine_terms(coarse, correction)
    return PanelResult(values=values, std_errs=std_errs, wall_seconds=elapsed["seconds"])


def mc_estimate(
    model: DiffusionModel,
    f: TestFunction,
    n: int,
    samples: int,
    stream: RngStream,
    **engine_options,
) -> EstimateResult:
    """Crude Monte Carlo mean of ``samples`` independent Euler terminals through ``f``."""
    panel = mc_panel(model, model.x0[None, :], f, n, samples, stream, **engine_options)
    logger.debug("mc n=%d N=%d: %.6g in %.3fs", n, samples, panel.values[0], panel.wall_seconds)
    return EstimateResult(
        value=float(panel.values[0]),
        std_err=float(panel.std_errs[0]),
        coarse_samples=samples,
        correction_samples=0,
        wall_seconds=panel.wall_seconds,
        seed=stream.master_seed,
    )


def sr_estimate(
    model: DiffusionModel,
    f: TestFunction,
    p: SrParams,
    stream: RngStream,
    **engine_options,
) -> EstimateResult:
    """Statistical Romberg estimate.

    ``V_n = (1/N_m) Σ f(X̂^m_T) + (1/N_n) Σ [f(X^n_T) − f(X^m_T)]``, where the
    first sum uses paths independent of the second and each correction pair
    shares one Brownian path.
    """
    panel = sr_panel(model, model.x0[None, :], f, p, stream, **engine_options)
    logger.debug(
        "sr n=%d m=%d N_m=%d N_n=%d: %.6g in %.3fs",
        p.n,
        p.m,
        p.coarse_samples,
        p.correction_samples,
        panel.values[0],
        panel.wall_seconds,
    )
    return EstimateResult(
        value=float(panel.values[0]),
        std_err=float(panel.std_errs[0]),
        coarse_samples=p.coarse_samples,
        correction_samples=p.correction_samples,
        wall_seconds=panel.wall_seconds,
        seed=stream.master_seed,
    )


def control_variate_variance(
    model: DiffusionModel,
    f: TestFunction,
    n: int,
    m: int,
    samples: int,
    stream: RngStream,
    **engine_options,
) -> float:
    """Sample variance of ``Q = f(X^n_T) − f(X^m_T)`` over coupled pairs."""
    if m > n:
        msg = "coarse level must not exceed the fine level"
        raise InvalidParameterError(msg, {"n": n, "m": m})
    if samples < MIN_VARIANCE_SAMPLES:
        msg = "variance estimate needs at least 100 pairs"
        raise InvalidParameterError(msg, {"samples": samples})
    moments = run_term(
        coupled_kernel(model, f, n, m),
        stream=stream,
        term=StreamTerm.COUPLED,
        initial_states=model.x0[None, :],
        samples_per_set=samples,
        **engine_options,
    )
    return float(moments.variance[0])
