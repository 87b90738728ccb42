from factory import Factory

from core.applications.diffusions.functions import TestFunction
from core.applications.diffusions.schemas import CircleParams
from core.applications.diffusions.schemas import GbmParams
from core.helpers.enums import TestFunctionKind


class GbmParamsFactory(Factory[GbmParams]):
    s0 = 100.0
    r = 0.05
    sigma = 0.2
    horizon = 1.0

    class Meta:
        model = GbmParams


class CircleParamsFactory(Factory[CircleParams]):
    theta0 = 0.7
    horizon = 1.0

    class Meta:
        model = CircleParams


class CallFunctionFactory(Factory[TestFunction]):
    kind = TestFunctionKind.EURO_CALL
    strike = 100.0
    discount = 1.0

    class Meta:
        model = TestFunction
