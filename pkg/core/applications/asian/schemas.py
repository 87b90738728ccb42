import numpy as np
from pydantic import Field

from core.helpers.enums import AsianPayoffKind
from core.helpers.interface import BaseModel
from core.helpers.interface import BaseSchema


class AsianPayoff(BaseModel):
    """Payoff ``f(S_T, I_T)`` of the terminal price and the time-averaged price.

    fixed_call is ``(I − K)+``, fixed_put is ``(K − I)+`` and floating_call is
    ``(I − S_T)+``. Discounting by ``e^{−rT}`` is applied by the estimators.
    """

    kind: AsianPayoffKind = AsianPayoffKind.FIXED_CALL
    strike: float = Field(default=100.0, ge=0)

    def value(self, terminal: np.ndarray, average: np.ndarray) -> np.ndarray:
        match self.kind:
            case AsianPayoffKind.FIXED_PUT:
                return np.maximum(self.strike - average, 0.0)
            case AsianPayoffKind.FLOATING_CALL:
                return np.maximum(average - terminal, 0.0)
            case _:
                return np.maximum(average - self.strike, 0.0)

    def average_slope(self, terminal: np.ndarray, average: np.ndarray) -> np.ndarray:
        """Almost-everywhere derivative ``∂₂f`` in the average argument."""
        match self.kind:
            case AsianPayoffKind.FIXED_PUT:
                return -(average < self.strike).astype(float)
            case AsianPayoffKind.FLOATING_CALL:
                return (average > terminal).astype(float)
            case _:
                return (average > self.strike).astype(float)


class ChiSample(BaseSchema):
    """Terminal values of the averaging-error limit process and its price path.

    ``chi_T`` is driven by a Brownian motion independent of the one behind
    ``w_T``, ``s_T`` and ``i_T``.
    """

    chi_T: np.ndarray  # noqa: N815
    w_T: np.ndarray  # noqa: N815
    s_T: np.ndarray  # noqa: N815
    i_T: np.ndarray  # noqa: N815
