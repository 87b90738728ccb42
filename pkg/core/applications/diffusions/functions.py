import numpy as np
from pydantic import Field

from core.helpers.custom_exceptions import DimensionMismatchError
from core.helpers.enums import TestFunctionKind
from core.helpers.interface import BaseModel

PLANAR_KINDS = {TestFunctionKind.F_ALPHA, TestFunctionKind.G_ALPHA}
PRICE_KINDS = {TestFunctionKind.EURO_CALL, TestFunctionKind.EURO_PUT, TestFunctionKind.SIGMOID}


class TestFunction(BaseModel):
    """Function of the terminal state whose expectation is estimated.

    ``f_alpha(z) = ||z|² − 1|^{2α}`` vanishes on the unit circle;
    ``g_alpha = f_alpha + x``. Price payoffs read the first coordinate and are
    multiplied by the constant ``discount``.
    """

    __test__ = False

    kind: TestFunctionKind
    alpha: float = Field(default=1.0, ge=0.5, le=1.0)
    strike: float = Field(default=0.0, ge=0)
    width: float = Field(default=1.0, gt=0)
    discount: float = Field(default=1.0, gt=0)


def eval_test_function(f: TestFunction, state: np.ndarray) -> np.ndarray:
    """Evaluate ``f`` on states shaped ``(S, d)`` (or a single ``(d,)`` state)."""
    values = np.asarray(state, dtype=float)
    single = values.ndim == 1
    values = np.atleast_2d(values)
    dimension = values.shape[1]

    if f.kind in PLANAR_KINDS and dimension != 2:  # noqa: PLR2004
        msg = f"{f.kind} needs planar states"
        raise DimensionMismatchError(msg, {"dimension": dimension})
    if f.kind in PRICE_KINDS and dimension != 1:
        msg = f"{f.kind} needs a scalar price"
        raise DimensionMismatchError(msg, {"dimension": dimension})

    first = values[:, 0]
    match f.kind:
        case TestFunctionKind.F_ALPHA | TestFunctionKind.G_ALPHA:
            radius = np.abs(np.einsum("sd,sd->s", values, values) - 1.0) ** (2 * f.alpha)
            result = radius + first if f.kind == TestFunctionKind.G_ALPHA else radius
        case TestFunctionKind.EURO_CALL:
            result = np.maximum(first - f.strike, 0.0)
        case TestFunctionKind.EURO_PUT:
            result = np.maximum(f.strike - first, 0.0)
        case TestFunctionKind.SIGMOID:
            result = 0.5 * (1.0 + np.tanh(0.5 * (first - f.strike) / f.width))
        case _:
            result = first.copy()
    result = f.discount * result
    return result[0] if single else result
