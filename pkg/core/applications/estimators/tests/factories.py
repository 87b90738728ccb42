from factory import Factory
from factory import LazyAttribute

from core.applications.estimators.schemas import EstimateResult
from core.applications.estimators.schemas import SrParams
from core.helpers.enums import SchemeKind


class SrParamsFactory(Factory[SrParams]):
    alpha = 1.0
    beta = 0.5
    n = 64
    m = 8
    coarse_samples = LazyAttribute(lambda o: o.n**2)
    correction_samples = LazyAttribute(lambda o: o.n * o.m)
    scheme = SchemeKind.EULER

    class Meta:
        model = SrParams


class EstimateResultFactory(Factory[EstimateResult]):
    value = 10.0
    std_err = 0.1
    coarse_samples = 1000
    correction_samples = 100
    wall_seconds = 0.5
    seed = 1

    class Meta:
        model = EstimateResult
