import math
from pathlib import Path

from pydantic import Field
from pydantic import field_validator
from pydantic import model_validator

from core.applications.estimators.parameters import MIN_FINE_STEPS
from core.helpers.enums import MethodKind
from core.helpers.enums import ModelKind
from core.helpers.interface import BaseModel


class GbmRanges(BaseModel):
    """Uniform ranges the GBM and Asian benchmarks draw their parameter sets from."""

    s0: tuple[float, float] = (80.0, 120.0)
    sigma: tuple[float, float] = (0.1, 0.4)
    r: tuple[float, float] = (0.0, 0.1)
    horizon: tuple[float, float] = (0.5, 2.0)
    strike: float = Field(default=100.0, ge=0)

    @model_validator(mode="after")
    def check_bounds(self):
        for name in ("s0", "sigma", "r", "horizon"):
            low, high = getattr(self, name)
            if low > high:
                msg = f"{name} range is empty: {low} > {high}"
                raise ValueError(msg)
        return self


class BenchConfig(BaseModel):
    method: MethodKind
    model: ModelKind
    alpha: float = Field(default=0.5, ge=0.5, le=1.0)
    n_list: list[int]
    sets: int = Field(default=200, ge=1)
    master_seed: int = Field(ge=0, lt=2**64)
    output: Path | None = None
    ranges: GbmRanges = GbmRanges()

    @field_validator("n_list")
    @classmethod
    def check_n_list(cls, value: list[int]) -> list[int]:
        if not value:
            msg = "n_list must not be empty"
            raise ValueError(msg)
        if any(later <= earlier for earlier, later in zip(value, value[1:], strict=False)):
            msg = "n_list must be strictly ascending"
            raise ValueError(msg)
        if value[0] < MIN_FINE_STEPS:
            msg = f"every n must be at least {MIN_FINE_STEPS}"
            raise ValueError(msg)
        return value


class BenchRecord(BaseModel):
    """One benchmark cell: a method at one ``n`` over all parameter sets.

    Crude Monte Carlo records ``m = n``, ``N_m = N`` and ``N_n = 0``.
    """

    method: MethodKind
    n: int
    m: int
    N_m: int  # noqa: N815
    N_n: int  # noqa: N815
    rms: float = Field(ge=0)
    wall_seconds: float = Field(ge=0)
    values_per_second: float = Field(ge=0)

    @classmethod
    def timed(cls, *, sets: int, wall_seconds: float, **fields) -> "BenchRecord":
        speed = sets / wall_seconds if wall_seconds > 0 else math.inf
        return cls(wall_seconds=wall_seconds, values_per_second=speed, **fields)
