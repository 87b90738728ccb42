import dataclasses
import math

import numpy as np
import pytest

from core.applications.diffusions.schemas import CircleParams
from core.applications.diffusions.schemas import GbmParams
from core.applications.diffusions.sde import circle_exact
from core.applications.diffusions.sde import circle_model
from core.applications.diffusions.sde import euler_terminal
from core.applications.diffusions.sde import gbm_exact_nodes
from core.applications.diffusions.sde import gbm_exact_terminal
from core.applications.diffusions.sde import gbm_model
from core.applications.diffusions.tests.factories import GbmParamsFactory
from core.applications.sampling.grids import TimeGrid
from core.applications.sampling.grids import brownian_increments
from core.applications.sampling.streams import RngStream
from core.helpers.custom_exceptions import DimensionMismatchError
from core.helpers.custom_exceptions import GridMismatchError
from core.helpers.custom_exceptions import OracleUnavailableError


class TestEulerScheme:
    def test_zero_volatility_gbm_is_compound_growth(self):
        p = GbmParamsFactory(sigma=0.0, r=0.05)
        grid = TimeGrid.uniform(p.horizon, 10)
        w = brownian_increments(RngStream(1), grid, samples=3)
        terminal = euler_terminal(gbm_model(p), grid, w)
        np.testing.assert_allclose(terminal[:, 0], 100 * (1 + 0.05 / 10) ** 10)

    def test_single_step(self):
        p = GbmParamsFactory()
        grid = TimeGrid.uniform(p.horizon, 1)
        w = brownian_increments(RngStream(2), grid, samples=5)
        terminal = euler_terminal(gbm_model(p), grid, w)
        expected = p.s0 * (1 + p.r * p.horizon + p.sigma * w.terminal()[:, 0])
        np.testing.assert_allclose(terminal[:, 0], expected)

    def test_record_path_ends_at_terminal(self, gbm: GbmParams):
        grid = TimeGrid.uniform(gbm.horizon, 8)
        w = brownian_increments(RngStream(3), grid, samples=4)
        path = euler_terminal(gbm_model(gbm), grid, w, record_path=True)
        assert path.shape == (4, 9, 1)
        np.testing.assert_allclose(path[:, -1], euler_terminal(gbm_model(gbm), grid, w))

    def test_per_sample_initial_states(self, circle: CircleParams):
        grid = TimeGrid.uniform(circle.horizon, 16)
        w = brownian_increments(RngStream(4), grid, samples=2)
        initial = np.array([[1.0, 0.0], [0.0, 1.0]])
        terminal = euler_terminal(circle_model(circle), grid, w, initial)
        assert terminal.shape == (2, 2)

    def test_grid_mismatch(self, gbm: GbmParams):
        w = brownian_increments(RngStream(5), TimeGrid.uniform(1.0, 8), samples=2)
        with pytest.raises(GridMismatchError):
            euler_terminal(gbm_model(gbm), TimeGrid.uniform(1.0, 4), w)

    def test_driving_dimension_mismatch(self, gbm: GbmParams):
        grid = TimeGrid.uniform(1.0, 4)
        w = brownian_increments(RngStream(5), grid, q=2, samples=2)
        with pytest.raises(DimensionMismatchError):
            euler_terminal(gbm_model(gbm), grid, w)

    def test_euler_converges_strongly_to_the_exact_gbm(self, gbm: GbmParams):
        errors = []
        for n in (16, 256):
            grid = TimeGrid.uniform(gbm.horizon, n)
            w = brownian_increments(RngStream(6), grid, samples=2000)
            terminal = euler_terminal(gbm_model(gbm), grid, w)[:, 0]
            errors.append(np.sqrt(np.mean((terminal - gbm_exact_terminal(gbm, w.terminal()[:, 0])) ** 2)))
        assert errors[1] < errors[0] / 2


class TestExactSolutions:
    def test_gbm_terminal_at_zero_noise(self):
        p = GbmParamsFactory(sigma=0.0)
        assert gbm_exact_terminal(p, 0.0) == pytest.approx(100 * math.exp(0.05))

    def test_gbm_nodes_start_at_s0(self, gbm: GbmParams):
        w = brownian_increments(RngStream(7), TimeGrid.uniform(gbm.horizon, 4), samples=3)
        nodes = gbm_exact_nodes(gbm, w)
        assert nodes.shape == (3, 5)
        np.testing.assert_allclose(nodes[:, 0], gbm.s0)
        np.testing.assert_allclose(nodes[:, -1], gbm_exact_terminal(gbm, w.terminal()[:, 0]))

    def test_circle_exact_stays_on_the_circle(self):
        z = circle_exact(CircleParams(theta0=1.0), np.linspace(-3, 3, 11))
        np.testing.assert_allclose(np.sum(z**2, axis=-1), 1.0)

    def test_circle_model_hook_matches_circle_exact(self, circle: CircleParams):
        model = circle_model(circle)
        w_t = np.array([[0.3], [-1.2]])
        np.testing.assert_allclose(
            model.exact_terminal(model.initial_states(2), w_t),
            circle_exact(circle, w_t[:, 0]),
        )

    def test_model_rejects_wrong_initial_dimension(self, gbm: GbmParams):
        model = gbm_model(gbm)
        with pytest.raises(DimensionMismatchError):
            type(model)(
                name="bad",
                dimension=2,
                driving_dimension=1,
                drift=model.drift,
                diffusion=model.diffusion,
                x0=np.array([1.0]),
                horizon=1.0,
            )

    def test_missing_solution_is_an_unavailable_oracle(self, gbm: GbmParams):
        model = dataclasses.replace(gbm_model(gbm), exact=None)
        with pytest.raises(OracleUnavailableError) as error:
            model.exact_terminal(model.initial_states(2), np.zeros((2, 1)))
        assert error.value.details == {"model": model.name}
