import pytest

from core.applications.diffusions.functions import TestFunction
from core.applications.diffusions.schemas import CircleParams
from core.applications.diffusions.schemas import GbmParams
from core.applications.diffusions.tests.factories import CallFunctionFactory
from core.applications.diffusions.tests.factories import CircleParamsFactory
from core.applications.diffusions.tests.factories import GbmParamsFactory
from core.applications.sampling.streams import RngStream


@pytest.fixture(autouse=True)
def _engine_settings(settings) -> None:
    settings.ROMBERG_CHUNK_SIZE = 4096
    settings.ROMBERG_WORKERS = 1


@pytest.fixture
def stream(settings) -> RngStream:
    return RngStream(settings.ROMBERG_DEFAULT_SEED)


@pytest.fixture
def gbm() -> GbmParams:
    return GbmParamsFactory()


@pytest.fixture
def circle() -> CircleParams:
    return CircleParamsFactory()


@pytest.fixture
def call(gbm: GbmParams) -> TestFunction:
    return CallFunctionFactory(discount=gbm.discount)
