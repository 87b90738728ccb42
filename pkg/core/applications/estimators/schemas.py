import math

from pydantic import Field
from pydantic import model_validator

from core.helpers.enums import SchemeKind
from core.helpers.interface import BaseModel

MIN_COARSE_STEPS = 2


class SrParams(BaseModel):
    """Two-level parameterisation: ``m`` coarse steps, ``n`` fine steps.

    ``coarse_samples`` is ``N_m`` (independent coarse paths) and
    ``correction_samples`` is ``N_n`` (coupled fine/coarse pairs).
    """

    alpha: float = Field(default=1.0, ge=0.5, le=1.0)
    beta: float = Field(gt=0, lt=1)
    n: int
    m: int
    coarse_samples: int = Field(ge=1)
    correction_samples: int = Field(ge=1)
    scheme: SchemeKind = SchemeKind.EULER

    @model_validator(mode="after")
    def check_levels(self):
        if not MIN_COARSE_STEPS <= self.m < self.n:
            msg = f"levels must satisfy 2 <= m < n, got m={self.m}, n={self.n}"
            raise ValueError(msg)
        return self

    @property
    def gamma1(self) -> float:
        return math.log(self.coarse_samples) / math.log(self.n)

    @property
    def gamma2(self) -> float:
        return math.log(self.correction_samples) / math.log(self.n)


class EstimateResult(BaseModel):
    value: float
    std_err: float = Field(ge=0)
    coarse_samples: int = Field(ge=0)
    correction_samples: int = Field(ge=0)
    wall_seconds: float = Field(ge=0)
    seed: int

    def agrees_with(self, other: "EstimateResult | float", sigmas: float = 3.0) -> bool:
        """Whether two estimates (or an estimate and a constant) overlap within ``sigmas`` SE."""
        if isinstance(other, EstimateResult):
            spread = math.hypot(self.std_err, other.std_err)
            return abs(self.value - other.value) <= sigmas * spread
        return abs(self.value - other) <= sigmas * self.std_err
