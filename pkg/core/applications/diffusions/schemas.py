import math

from pydantic import Field

from core.helpers.interface import BaseModel


class GbmParams(BaseModel):
    """Black–Scholes dynamics ``dS/S = r dt + σ dW`` on ``[0, horizon]``."""

    s0: float = Field(gt=0)
    r: float = 0.0
    sigma: float = Field(default=0.2, ge=0)
    horizon: float = Field(default=1.0, gt=0)

    @property
    def discount(self) -> float:
        return math.exp(-self.r * self.horizon)


class CircleParams(BaseModel):
    """Diffusion on the unit circle started at angle ``theta0``."""

    theta0: float = Field(default=0.0, ge=0, le=2 * math.pi)
    horizon: float = Field(default=1.0, gt=0)

    @property
    def initial_state(self) -> tuple[float, float]:
        return math.cos(self.theta0), math.sin(self.theta0)
