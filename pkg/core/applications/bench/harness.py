"""Benchmark harness: random parameter sets, RMS error and speed per method and ``n``.

Parameter sets come from ``root.split(0)`` so every method sees the same sets
for a given seed. Estimator cell ``i`` draws from ``root.descend(1, i)`` and
oracle values from ``root.split(2)``. Wall time covers path generation and
reduction only; oracles and CSV output are outside the clock.
"""

import logging
import math
from collections.abc import Sequence

import numpy as np
from django.conf import settings

from core.applications.asian.estimators import mc_asian_estimate
from core.applications.asian.estimators import sr_asian_estimate
from core.applications.asian.schemas import AsianPayoff
from core.applications.bench.schemas import BenchConfig
from core.applications.bench.schemas import BenchRecord
from core.applications.diffusions.functions import TestFunction
from core.applications.diffusions.schemas import CircleParams
from core.applications.diffusions.schemas import GbmParams
from core.applications.diffusions.sde import circle_model
from core.applications.diffusions.sde import gbm_model
from core.applications.estimators.monte_carlo import MIN_MC_SAMPLES
from core.applications.estimators.monte_carlo import mc_estimate
from core.applications.estimators.monte_carlo import mc_panel
from core.applications.estimators.monte_carlo import sr_estimate
from core.applications.estimators.monte_carlo import sr_panel
from core.applications.estimators.oracles import black_scholes_price
from core.applications.estimators.oracles import circle_expectation
from core.applications.estimators.parameters import optimal_params
from core.applications.sampling.streams import RngStream
from core.helpers.custom_exceptions import InvalidParameterError
from core.helpers.enums import AsianPayoffKind
from core.helpers.enums import MethodKind
from core.helpers.enums import ModelKind
from core.helpers.enums import SchemeKind
from core.helpers.enums import TestFunctionKind
from core.helpers.utils import round_half_up

logger = logging.getLogger(__name__)

PARAMETER_BRANCH = 0
ESTIMATOR_BRANCH = 1
ORACLE_BRANCH = 2


def rms_error(true_values: Sequence[float], estimates: Sequence[float]) -> float:
    """``√((1/M) Σ (true − estimate)²)``."""
    truth = np.asarray(true_values, dtype=float)
    values = np.asarray(estimates, dtype=float)
    if truth.shape != values.shape:
        msg = "true values and estimates differ in length"
        raise InvalidParameterError(msg, {"true": truth.size, "estimates": values.size})
    if truth.size == 0:
        msg = "RMS error needs at least one value"
        raise InvalidParameterError(msg)
    return float(np.sqrt(np.mean((truth - values) ** 2)))


def crude_samples(alpha: float, n: int) -> int:
    """``N = n^{2α}`` so the statistical error matches the ``n^{−α}`` bias."""
    return max(MIN_MC_SAMPLES, round_half_up(n ** (2 * alpha)))


def draw_gbm_sets(cfg: BenchConfig, root: RngStream) -> list[GbmParams]:
    generator = root.split(PARAMETER_BRANCH).generator()
    ranges = cfg.ranges
    columns = [generator.uniform(*bounds, cfg.sets) for bounds in (ranges.s0, ranges.sigma, ranges.r, ranges.horizon)]
    return [
        GbmParams(s0=s0, sigma=sigma, r=r, horizon=horizon)
        for s0, sigma, r, horizon in zip(*columns, strict=True)
    ]


def circle_cells(cfg: BenchConfig, root: RngStream, **engine_options) -> list[BenchRecord]:
    """All ``M`` starting angles run as one panel; only ``Z_0`` differs between sets."""
    thetas = root.split(PARAMETER_BRANCH).generator().uniform(0.0, 2 * math.pi, cfg.sets)
    f = TestFunction(kind=TestFunctionKind.G_ALPHA, alpha=cfg.alpha)
    truth = [circle_expectation(CircleParams(theta0=theta), f) for theta in thetas]
    states = np.column_stack([np.cos(thetas), np.sin(thetas)])
    model = circle_model(CircleParams())

    records = []
    for index, n in enumerate(cfg.n_list):
        stream = root.descend(ESTIMATOR_BRANCH, index)
        if cfg.method == MethodKind.SR:
            params = optimal_params(cfg.alpha, n)
            panel = sr_panel(model, states, f, params, stream, **engine_options)
            levels = {"m": params.m, "N_m": params.coarse_samples, "N_n": params.correction_samples}
        else:
            samples = crude_samples(cfg.alpha, n)
            panel = mc_panel(model, states, f, n, samples, stream, **engine_options)
            levels = {"m": n, "N_m": samples, "N_n": 0}
        records.append(
            BenchRecord.timed(
                method=cfg.method,
                n=n,
                rms=rms_error(truth, panel.values),
                sets=cfg.sets,
                wall_seconds=panel.wall_seconds,
                **levels,
            ),
        )
    return records


def gbm_cells(cfg: BenchConfig, root: RngStream, **engine_options) -> list[BenchRecord]:
    """European calls on randomised Black–Scholes sets, one estimator call per set."""
    sets = draw_gbm_sets(cfg, root)
    strike = cfg.ranges.strike
    truth = [black_scholes_price(p, strike) for p in sets]

    records = []
    for index, n in enumerate(cfg.n_list):
        estimates = []
        for position, p in enumerate(sets):
            stream = root.descend(ESTIMATOR_BRANCH, index, position)
            model = gbm_model(p)
            f = TestFunction(kind=TestFunctionKind.EURO_CALL, strike=strike, discount=p.discount)
            if cfg.method == MethodKind.SR:
                params = optimal_params(cfg.alpha, n)
                estimates.append(sr_estimate(model, f, params, stream, **engine_options))
                levels = {"m": params.m, "N_m": params.coarse_samples, "N_n": params.correction_samples}
            else:
                samples = crude_samples(cfg.alpha, n)
                estimates.append(mc_estimate(model, f, n, samples, stream, **engine_options))
                levels = {"m": n, "N_m": samples, "N_n": 0}
        records.append(
            BenchRecord.timed(
                method=cfg.method,
                n=n,
                rms=rms_error(truth, [estimate.value for estimate in estimates]),
                sets=cfg.sets,
                wall_seconds=sum(estimate.wall_seconds for estimate in estimates),
                **levels,
            ),
        )
    return records


def asian_cells(cfg: BenchConfig, root: RngStream, **engine_options) -> list[BenchRecord]:
    """Fixed-strike Asian calls; the oracle is crude Monte Carlo on a fine trapezoid."""
    sets = draw_gbm_sets(cfg, root)
    payoff = AsianPayoff(kind=AsianPayoffKind.FIXED_CALL, strike=cfg.ranges.strike)
    oracle_root = root.split(ORACLE_BRANCH)
    truth = [
        mc_asian_estimate(
            p,
            payoff,
            settings.ROMBERG_ASIAN_ORACLE_STEPS,
            settings.ROMBERG_ASIAN_ORACLE_SAMPLES,
            oracle_root.split(position),
            **engine_options,
        ).value
        for position, p in enumerate(sets)
    ]

    records = []
    for index, n in enumerate(cfg.n_list):
        estimates = []
        for position, p in enumerate(sets):
            stream = root.descend(ESTIMATOR_BRANCH, index, position)
            if cfg.method == MethodKind.SR:
                params = optimal_params(1.0, n, SchemeKind.TRAPEZOIDAL)
                estimates.append(sr_asian_estimate(p, payoff, params, stream, **engine_options))
                levels = {"m": params.m, "N_m": params.coarse_samples, "N_n": params.correction_samples}
            else:
                samples = crude_samples(1.0, n)
                estimates.append(mc_asian_estimate(p, payoff, n, samples, stream, **engine_options))
                levels = {"m": n, "N_m": samples, "N_n": 0}
        records.append(
            BenchRecord.timed(
                method=cfg.method,
                n=n,
                rms=rms_error(truth, [estimate.value for estimate in estimates]),
                sets=cfg.sets,
                wall_seconds=sum(estimate.wall_seconds for estimate in estimates),
                **levels,
            ),
        )
    return records


CELLS = {
    ModelKind.CIRCLE: circle_cells,
    ModelKind.GBM: gbm_cells,
    ModelKind.ASIAN: asian_cells,
}


def run_benchmark(cfg: BenchConfig, **engine_options) -> list[BenchRecord]:
    """One record per ``n`` in ``cfg.n_list``, cells run one after another.

    Args:
        cfg (BenchConfig): Method, model, levels and parameter-set count.
        **engine_options: ``chunk_size`` / ``workers`` forwarded to the estimators.

    Returns:
        list[BenchRecord]: Records in ``n_list`` order.

    Raises:
        OracleUnavailableError: A reference value could not be computed.
    """
    root = RngStream(cfg.master_seed)
    records = CELLS[ModelKind(cfg.model)](cfg, root, **engine_options)
    for record in records:
        logger.info(
            "%s %s n=%d m=%d N_m=%d N_n=%d rms=%.4g speed=%.4g/s",
            cfg.model,
            record.method,
            record.n,
            record.m,
            record.N_m,
            record.N_n,
            record.rms,
            record.values_per_second,
        )
    return records


def speed_at_rms(records: Sequence[BenchRecord], target: float) -> float:
    """Speed at ``target`` RMS, interpolated linearly in log-log coordinates."""
    if target <= 0:
        msg = "target RMS must be positive"
        raise InvalidParameterError(msg, {"target": target})
    usable = sorted((r for r in records if r.rms > 0), key=lambda r: r.rms)
    if not usable or not usable[0].rms <= target <= usable[-1].rms:
        msg = "target RMS lies outside the measured range"
        raise InvalidParameterError(msg, {"target": target, "rms": [r.rms for r in usable]})
    log_rms = np.log([r.rms for r in usable])
    log_speed = np.log([r.values_per_second for r in usable])
    return float(np.exp(np.interp(math.log(target), log_rms, log_speed)))


def speedup_at_rms(
    mc_records: Sequence[BenchRecord],
    sr_records: Sequence[BenchRecord],
    target: float,
) -> float:
    """Ratio of statistical Romberg speed to crude Monte Carlo speed at equal RMS."""
    return speed_at_rms(sr_records, target) / speed_at_rms(mc_records, target)
