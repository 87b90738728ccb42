"""Reference values: closed forms and Gauss–Hermite quadrature."""

import math
from collections.abc import Callable

import numpy as np
from django.conf import settings
from numpy.polynomial.hermite_e import hermegauss
from scipy.special import gamma
from scipy.stats import norm

from core.applications.diffusions.functions import TestFunction
from core.applications.diffusions.functions import eval_test_function
from core.applications.diffusions.schemas import CircleParams
from core.applications.diffusions.schemas import GbmParams
from core.helpers.custom_exceptions import OracleUnavailableError


def checked(value: float, label: str) -> float:
    if not math.isfinite(value):
        msg = f"{label} oracle is not finite"
        raise OracleUnavailableError(msg, {"value": value})
    return float(value)


def gaussian_expectation(func: Callable[[np.ndarray], np.ndarray], nodes: int | None = None) -> float:
    """``E func(G)`` for a standard normal ``G`` by probabilists' Gauss–Hermite quadrature."""
    points, weights = hermegauss(nodes or settings.ROMBERG_QUADRATURE_NODES)
    return float(np.dot(weights, func(points)) / math.sqrt(2 * math.pi))


def gaussian_abs_moment(power: float) -> float:
    """``E|G|^p = 2^{p/2} Γ((p+1)/2) / √π``."""
    return 2 ** (power / 2) * gamma((power + 1) / 2) / math.sqrt(math.pi)


def black_scholes_price(p: GbmParams, strike: float, *, call: bool = True) -> float:
    """Discounted European call or put price."""
    forward = p.s0 * math.exp(p.r * p.horizon)
    if p.sigma == 0 or strike == 0:
        intrinsic = forward - strike if call else strike - forward
        return p.discount * max(intrinsic, 0.0)
    spread = p.sigma * math.sqrt(p.horizon)
    d1 = (math.log(forward / strike) + 0.5 * spread**2) / spread
    d2 = d1 - spread
    if call:
        undiscounted = forward * norm.cdf(d1) - strike * norm.cdf(d2)
    else:
        undiscounted = strike * norm.cdf(-d2) - forward * norm.cdf(-d1)
    return checked(p.discount * undiscounted, "Black-Scholes")


def lognormal_expectation(p: GbmParams, f: TestFunction, nodes: int | None = None) -> float:
    """``E f(S_T)`` under the exact lognormal law of ``S_T``."""

    def integrand(points):
        prices = p.s0 * np.exp((p.r - 0.5 * p.sigma**2) * p.horizon + p.sigma * math.sqrt(p.horizon) * points)
        return eval_test_function(f, prices[:, None])

    return checked(gaussian_expectation(integrand, nodes), "lognormal")


def circle_expectation(p: CircleParams, f: TestFunction, nodes: int | None = None) -> float:
    """``E f(Z_T)`` with ``Z_T = (cos(θ + √T G), sin(θ + √T G))``.

    For ``g_alpha`` this is ``E cos(θ + W_T) = e^{−T/2} cos θ``, the ``f_alpha``
    part being zero on the circle.
    """

    def integrand(points):
        angle = p.theta0 + math.sqrt(p.horizon) * points
        return eval_test_function(f, np.stack([np.cos(angle), np.sin(angle)], axis=1))

    return checked(gaussian_expectation(integrand, nodes), "circle")


def euler_gbm_mean(p: GbmParams, n: int) -> float:
    """``E S^n_T = s0 (1 + rT/n)^n`` for the Euler scheme on GBM."""
    return p.s0 * (1 + p.r * p.horizon / n) ** n


def circle_bias_limit(alpha: float, t: float) -> float:
    """``lim n^α E(f_α(Z^n_t) − f_α(Z_t)) = (2t)^α E|G|^{2α}`` with step ``1/n``."""
    return (2 * t) ** alpha * gaussian_abs_moment(2 * alpha)
