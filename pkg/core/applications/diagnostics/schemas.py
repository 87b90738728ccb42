from pydantic import Field

from core.helpers.interface import BaseModel


class FitResult(BaseModel):
    """Least-squares line through ``points`` given in log-log coordinates."""

    slope: float
    intercept: float
    r_squared: float = Field(ge=0, le=1)
    points: list[tuple[float, float]]
    expected_slope: float | None = None

    def within(self, tolerance: float) -> bool:
        if self.expected_slope is None:
            return True
        return abs(self.slope - self.expected_slope) <= tolerance


class BiasPoint(BaseModel):
    """Scaled bias ``value`` at ``n`` steps with its standard error, scaled alike."""

    n: int
    value: float
    std_err: float = Field(ge=0)


class MomentReport(BaseModel):
    """Shape of standardised replication errors.

    ``passed`` is ``None`` when the replications have zero variance and the
    check abstains.
    """

    repeats: int
    mean: float
    std: float = Field(ge=0)
    skewness: float | None
    excess_kurtosis: float | None
    skew_threshold: float
    kurtosis_threshold: float
    passed: bool | None


class NormalizedErrorReport(BaseModel):
    n: int
    samples: int
    mean: tuple[float, float]
    std_err: tuple[float, float]
    variance: tuple[float, float]
    reference_variance: tuple[float, float]
