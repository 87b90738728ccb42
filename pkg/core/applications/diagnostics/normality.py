import logging
from collections.abc import Callable

import numpy as np
from django.conf import settings
from scipy.stats import kurtosis
from scipy.stats import skew

from core.applications.diagnostics.schemas import MomentReport
from core.applications.estimators.engine import map_chunks
from core.applications.estimators.schemas import EstimateResult
from core.applications.sampling.streams import RngStream
from core.helpers.custom_exceptions import InvalidParameterError

logger = logging.getLogger(__name__)

MIN_REPEATS = 200

EstimatorClosure = Callable[[RngStream], EstimateResult | float]


def clt_normality_check(
    estimator: EstimatorClosure,
    repeats: int,
    stream: RngStream,
    workers: int | None = None,
) -> MomentReport:
    """Skewness and excess kurtosis of ``repeats`` independent estimator runs.

    Replication ``r`` calls ``estimator(stream.split(r))``. The check passes
    when both shape statistics are inside ``ROMBERG_NORMALITY_SKEW`` and
    ``ROMBERG_NORMALITY_KURTOSIS``; with zero spread it abstains.
    """
    if repeats < MIN_REPEATS:
        msg = "normality check needs at least 200 replications"
        raise InvalidParameterError(msg, {"repeats": repeats})

    def replicate(index: int) -> float:
        result = estimator(stream.split(index))
        return result.value if isinstance(result, EstimateResult) else float(result)

    values = np.asarray(map_chunks(replicate, repeats, workers), dtype=float)
    skew_threshold = float(settings.ROMBERG_NORMALITY_SKEW)
    kurtosis_threshold = float(settings.ROMBERG_NORMALITY_KURTOSIS)
    spread = float(values.std(ddof=1))
    if spread == 0:
        logger.info("normality check abstains: %d replications are identical", repeats)
        return MomentReport(
            repeats=repeats,
            mean=float(values.mean()),
            std=0.0,
            skewness=None,
            excess_kurtosis=None,
            skew_threshold=skew_threshold,
            kurtosis_threshold=kurtosis_threshold,
            passed=None,
        )

    standardised = (values - values.mean()) / spread
    skewness = float(skew(standardised))
    excess = float(kurtosis(standardised, fisher=True))
    return MomentReport(
        repeats=repeats,
        mean=float(values.mean()),
        std=spread,
        skewness=skewness,
        excess_kurtosis=excess,
        skew_threshold=skew_threshold,
        kurtosis_threshold=kurtosis_threshold,
        passed=abs(skewness) < skew_threshold and abs(excess) < kurtosis_threshold,
    )
