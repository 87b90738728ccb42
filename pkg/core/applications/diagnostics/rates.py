"""Empirical convergence rates from log-log least squares."""

from collections.abc import Sequence

import numpy as np
from scipy.stats import linregress

from core.applications.diagnostics.schemas import FitResult
from core.helpers.custom_exceptions import InvalidParameterError

MIN_FIT_POINTS = 3


def rate_fit(
    points: Sequence[tuple[float, float]],
    expected_slope: float | None = None,
) -> FitResult:
    """Fit ``log y = slope · log x + intercept``.

    Args:
        points (Sequence[tuple[float, float]]): ``(x, y)`` pairs with ``x, y > 0``.
        expected_slope (float, optional): Recorded on the result for ``within``.

    Returns:
        FitResult: Slope, intercept, ``r²`` and the log-log points.

    Raises:
        InvalidParameterError: Fewer than three points, nonpositive values or
            identical abscissae.
    """
    if len(points) < MIN_FIT_POINTS:
        msg = "a rate fit needs at least three points"
        raise InvalidParameterError(msg, {"points": len(points)})
    values = np.asarray(points, dtype=float)
    if values.ndim != 2 or values.shape[1] != 2:  # noqa: PLR2004
        msg = "points must be (x, y) pairs"
        raise InvalidParameterError(msg, {"shape": values.shape})
    if np.any(values <= 0) or not np.all(np.isfinite(values)):
        msg = "log-log fit needs finite positive x and y"
        raise InvalidParameterError(msg, {"points": [tuple(point) for point in points]})
    logs = np.log(values)
    try:
        fit = linregress(logs[:, 0], logs[:, 1])
    except ValueError as exc:
        raise InvalidParameterError(str(exc), {"x": values[:, 0].tolist()}) from exc
    r_squared = float(np.clip(fit.rvalue**2, 0.0, 1.0))
    return FitResult(
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        r_squared=r_squared,
        points=[(float(x), float(y)) for x, y in logs],
        expected_slope=expected_slope,
    )
