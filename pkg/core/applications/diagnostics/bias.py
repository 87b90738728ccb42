"""Bias and strong-error measurements with the scheme and the exact solution on one path."""

import logging
import math
from collections.abc import Callable
from collections.abc import Sequence

import numpy as np

from core.applications.diagnostics.schemas import BiasPoint
from core.applications.diagnostics.schemas import NormalizedErrorReport
from core.applications.diffusions.functions import TestFunction
from core.applications.diffusions.functions import eval_test_function
from core.applications.diffusions.schemas import CircleParams
from core.applications.diffusions.sde import DiffusionModel
from core.applications.diffusions.sde import circle_model
from core.applications.diffusions.sde import euler_terminal
from core.applications.estimators.engine import Moments
from core.applications.estimators.engine import map_chunks
from core.applications.estimators.engine import resolve_chunk_size
from core.applications.estimators.engine import run_term
from core.applications.estimators.monte_carlo import crude_kernel
from core.applications.estimators.oracles import gaussian_expectation
from core.applications.sampling.grids import TimeGrid
from core.applications.sampling.grids import brownian_increments
from core.applications.sampling.streams import RngStream
from core.helpers.custom_exceptions import InvalidParameterError
from core.helpers.custom_exceptions import OracleUnavailableError
from core.helpers.enums import StreamTerm
from core.helpers.enums import TestFunctionKind
from core.helpers.utils import pairwise_reduce
from core.helpers.utils import round_half_up

logger = logging.getLogger(__name__)

PairEvaluator = Callable[[np.ndarray, np.ndarray], np.ndarray]


def exact_coupled_kernel(model: DiffusionModel, grid: TimeGrid, evaluate: PairEvaluator):
    """Kernel applying ``evaluate(X^n_T, X_T)`` with both driven by the same increments."""

    def kernel(stream: RngStream, initial: np.ndarray) -> np.ndarray:
        w = brownian_increments(stream, grid, model.driving_dimension, samples=initial.shape[0])
        approximation = euler_terminal(model, grid, w, initial)
        return evaluate(approximation, model.exact_terminal(initial, w.terminal()))

    return kernel


def coupled_moments(
    model: DiffusionModel,
    grid: TimeGrid,
    evaluate: PairEvaluator,
    samples: int,
    stream: RngStream,
    **engine_options,
) -> Moments:
    return run_term(
        exact_coupled_kernel(model, grid, evaluate),
        stream=stream,
        term=StreamTerm.COUPLED,
        initial_states=model.x0[None, :],
        samples_per_set=samples,
        **engine_options,
    )


def bias_rate_limit(
    alpha: float,
    t: float,
    n_list: Sequence[int],
    samples: int,
    stream: RngStream,
    **engine_options,
) -> list[BiasPoint]:
    """``n^α E(f_α(Z^n_t) − f_α(Z_t))`` for the circle diffusion, one point per ``n``.

    The scheme steps ``1/n`` per unit time, so ``[0, t]`` holds ``round(n t)``
    steps; the limit is ``(2t)^α E|G|^{2α}``.
    """
    if t < 0:
        msg = "time must be nonnegative"
        raise InvalidParameterError(msg, {"t": t})
    if t == 0:
        return [BiasPoint(n=n, value=0.0, std_err=0.0) for n in n_list]

    model = circle_model(CircleParams(horizon=t))
    f = TestFunction(kind=TestFunctionKind.F_ALPHA, alpha=alpha)

    def evaluate(approximation, exact):
        return eval_test_function(f, approximation) - eval_test_function(f, exact)

    points = []
    for index, n in enumerate(n_list):
        grid = TimeGrid.uniform(t, max(1, round_half_up(n * t)))
        moments = coupled_moments(model, grid, evaluate, samples, stream.split(index), **engine_options)
        scale = n**alpha
        points.append(
            BiasPoint(n=n, value=scale * float(moments.mean[0]), std_err=scale * float(moments.std_err[0])),
        )
        logger.debug("circle bias alpha=%s n=%d: %.6g", alpha, n, points[-1].value)
    return points


def sqrt_n_bias_check(
    model: DiffusionModel,
    f: TestFunction,
    n_list: Sequence[int],
    samples: int,
    stream: RngStream,
    oracle: float | None = None,
    **engine_options,
) -> list[BiasPoint]:
    """``√n (E f(X^n_T) − E f(X_T))`` for each ``n``; tends to zero.

    Models with an exact solution are measured on coupled paths; otherwise
    the crude Euler mean is compared with ``oracle``.
    """
    if model.exact is None and oracle is None:
        msg = f"model {model.name} has no exact solution and no oracle was given"
        raise OracleUnavailableError(msg)

    def evaluate(approximation, exact):
        return eval_test_function(f, approximation) - eval_test_function(f, exact)

    points = []
    for index, n in enumerate(n_list):
        branch = stream.split(index)
        grid = TimeGrid.uniform(model.horizon, n)
        if model.exact is not None:
            moments = coupled_moments(model, grid, evaluate, samples, branch, **engine_options)
            bias = float(moments.mean[0])
        else:
            moments = run_term(
                crude_kernel(model, f, n),
                stream=branch,
                term=StreamTerm.CRUDE,
                initial_states=model.x0[None, :],
                samples_per_set=samples,
                **engine_options,
            )
            bias = float(moments.mean[0]) - oracle
        scale = math.sqrt(n)
        points.append(BiasPoint(n=n, value=scale * bias, std_err=scale * float(moments.std_err[0])))
    return points


def euler_strong_error(
    model: DiffusionModel,
    n_list: Sequence[int],
    samples: int,
    stream: RngStream,
    **engine_options,
) -> list[tuple[int, float]]:
    """``(n, √E|X^n_T − X_T|²)`` pairs, ready for ``rate_fit``."""
    if model.exact is None:
        msg = f"model {model.name} has no exact solution"
        raise OracleUnavailableError(msg)

    def squared_distance(approximation, exact):
        return np.sum((approximation - exact) ** 2, axis=1)

    points = []
    for index, n in enumerate(n_list):
        grid = TimeGrid.uniform(model.horizon, n)
        moments = coupled_moments(model, grid, squared_distance, samples, stream.split(index), **engine_options)
        points.append((n, math.sqrt(float(moments.mean[0]))))
    return points


def circle_normalized_error(
    p: CircleParams,
    n: int,
    samples: int,
    stream: RngStream,
    chunk_size: int | None = None,
    workers: int | None = None,
) -> NormalizedErrorReport:
    """Moments of ``√n (Z^n_T − Z_T)`` per component, both from one pass over the paths.

    The limit is ``Z_T B̃_T / √2`` with ``B̃`` independent of ``W``, so the
    component variances tend to ``T/2 · E cos²(θ + W_T)`` and
    ``T/2 · E sin²(θ + W_T)``, and the means to zero.
    """
    model = circle_model(p)
    grid = TimeGrid.uniform(p.horizon, n)
    scale = math.sqrt(n)
    kernel = exact_coupled_kernel(model, grid, lambda approximation, exact: scale * (approximation - exact))
    size = resolve_chunk_size(chunk_size)
    branch = stream.split(StreamTerm.COUPLED.index)

    def evaluate(chunk: int) -> tuple[Moments, ...]:
        count = min(size, samples - chunk * size)
        errors = kernel(branch.split(chunk), model.initial_states(count))
        set_ids = np.zeros(count, dtype=int)
        return tuple(Moments.from_values(errors[:, component], set_ids, 1) for component in range(2))

    partials = map_chunks(evaluate, -(-samples // size), workers)
    components = [pairwise_reduce([part[component] for part in partials], Moments.merge) for component in range(2)]

    root = math.sqrt(p.horizon)
    cos_squared = gaussian_expectation(lambda g: np.cos(p.theta0 + root * g) ** 2)
    reference = (0.5 * p.horizon * cos_squared, 0.5 * p.horizon * (1.0 - cos_squared))
    return NormalizedErrorReport(
        n=n,
        samples=samples,
        mean=tuple(float(m.mean[0]) for m in components),
        std_err=tuple(float(m.std_err[0]) for m in components),
        variance=tuple(float(m.variance[0]) for m in components),
        reference_variance=reference,
    )
