"""Optimal level/sample rules and abstract cost of the two estimators."""

import numpy as np

from core.applications.estimators.schemas import MIN_COARSE_STEPS
from core.applications.estimators.schemas import SrParams
from core.helpers.custom_exceptions import InvalidParameterError
from core.helpers.enums import SchemeKind
from core.helpers.utils import round_half_up

MIN_FINE_STEPS = 4
OPTIMAL_BETA = {SchemeKind.EULER: 1 / 2, SchemeKind.TRAPEZOIDAL: 1 / 3}
BETA_GRID = np.round(np.arange(0.05, 0.951, 0.05), 2)


def sample_exponents(alpha: float, beta: float, scheme: SchemeKind) -> tuple[float, float]:
    """``(γ1, γ2)`` with ``N_m = n^γ1`` and ``N_n = n^γ2`` for a total error of ``n^-α``.

    The trapezoidal scheme has weak order one, so ``alpha`` is ignored there.
    """
    if scheme == SchemeKind.TRAPEZOIDAL:
        return 2.0, 2.0 - 2.0 * beta
    return 2.0 * alpha, 2.0 * alpha - beta


def sr_params(
    alpha: float,
    n: int,
    beta: float,
    scheme: SchemeKind = SchemeKind.EULER,
) -> SrParams:
    """Parameters for an arbitrary ``β`` with the sample-size rules of the scheme."""
    if n < MIN_FINE_STEPS:
        msg = "fine step count too small for two distinct levels"
        raise InvalidParameterError(msg, {"n": n, "minimum": MIN_FINE_STEPS})
    if not 0 < beta < 1:
        msg = "beta must lie in (0, 1)"
        raise InvalidParameterError(msg, {"beta": beta})
    gamma1, gamma2 = sample_exponents(alpha, beta, scheme)
    m = max(MIN_COARSE_STEPS, round_half_up(n**beta))
    return SrParams(
        alpha=1.0 if scheme == SchemeKind.TRAPEZOIDAL else alpha,
        beta=beta,
        n=n,
        m=min(m, n - 1),
        coarse_samples=max(1, round_half_up(n**gamma1)),
        correction_samples=max(1, round_half_up(n**gamma2)),
        scheme=scheme,
    )


def optimal_params(alpha: float, n: int, scheme: SchemeKind = SchemeKind.EULER) -> SrParams:
    """Cost-minimising parameters: ``β = 1/2`` for Euler, ``β = 1/3`` for the trapezoid.

    Euler gives ``m = n^{1/2}``, ``N_m = n^{2α}``, ``N_n = n^{2α−1/2}``; the
    trapezoid gives ``m = n^{1/3}``, ``N_m = n²``, ``N_n = n^{4/3}``.
    """
    return sr_params(alpha, n, OPTIMAL_BETA[SchemeKind(scheme)], scheme)


def complexity(params: SrParams | tuple[float, int]) -> float:
    """Abstract cost with unit cost per simulated step.

    ``SrParams`` give ``m N_m + (n + m) N_n``; an ``(alpha, n)`` pair gives the
    crude Monte Carlo cost ``n N = n^{2α+1}``.
    """
    if isinstance(params, SrParams):
        return float(
            params.m * params.coarse_samples + (params.n + params.m) * params.correction_samples,
        )
    alpha, n = params
    return float(n) ** (2 * alpha + 1)


def sr_complexity(alpha: float, n: float, beta: float, scheme: SchemeKind = SchemeKind.EULER) -> float:
    """Unrounded cost ``n^{β+γ1} + (n + n^β) n^{γ2}``."""
    gamma1, gamma2 = sample_exponents(alpha, beta, scheme)
    return n ** (beta + gamma1) + (n + n**beta) * n**gamma2


def optimal_beta(
    alpha: float,
    n: float,
    scheme: SchemeKind = SchemeKind.EULER,
    betas: np.ndarray = BETA_GRID,
) -> float:
    costs = [sr_complexity(alpha, n, beta, scheme) for beta in betas]
    return float(betas[int(np.argmin(costs))])
