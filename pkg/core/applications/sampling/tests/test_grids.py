import numpy as np
import pytest

from core.applications.sampling.grids import TimeGrid
from core.applications.sampling.grids import brownian_increments
from core.applications.sampling.grids import coarsen_increments
from core.applications.sampling.streams import RngStream
from core.helpers.custom_exceptions import GridMismatchError
from core.helpers.custom_exceptions import InvalidParameterError


class TestTimeGrid:
    def test_uniform_nodes(self):
        grid = TimeGrid.uniform(2.0, 4)
        np.testing.assert_allclose(grid.nodes, [0.0, 0.5, 1.0, 1.5, 2.0])
        assert grid.step == 0.5
        assert grid.is_uniform

    def test_last_node_is_exactly_the_horizon(self):
        grid = TimeGrid.uniform(0.1, 3)
        assert grid.nodes[-1] == 0.1

    @pytest.mark.parametrize("horizon", [0.0, -1.0, float("inf")])
    def test_invalid_horizon(self, horizon):
        with pytest.raises(InvalidParameterError):
            TimeGrid.uniform(horizon, 4)

    def test_union_of_non_nested_grids(self):
        union = TimeGrid.union(TimeGrid.uniform(1.0, 4), TimeGrid.uniform(1.0, 6))
        assert union.resolution == 12
        np.testing.assert_array_equal(union.ticks, [0, 2, 3, 4, 6, 8, 9, 10, 12])
        assert not union.is_uniform

    def test_union_needs_equal_horizons(self):
        with pytest.raises(GridMismatchError):
            TimeGrid.union(TimeGrid.uniform(1.0, 4), TimeGrid.uniform(2.0, 4))

    def test_embedding(self):
        fine = TimeGrid.uniform(1.0, 12)
        assert fine.embeds(TimeGrid.uniform(1.0, 4))
        assert not fine.embeds(TimeGrid.uniform(1.0, 5))

    def test_equality_and_hash(self):
        assert TimeGrid.uniform(1.0, 8) == TimeGrid.uniform(1.0, 8)
        assert len({TimeGrid.uniform(1.0, 8), TimeGrid.uniform(1.0, 8)}) == 1
        assert TimeGrid.uniform(1.0, 8) != TimeGrid.uniform(1.0, 4)


class TestIncrements:
    def test_shape_and_variance(self):
        grid = TimeGrid.uniform(1.0, 4)
        w = brownian_increments(RngStream(5), grid, q=2, samples=100_000)
        assert w.increments.shape == (100_000, 4, 2)
        assert w.increments.var() == pytest.approx(0.25, rel=0.02)
        assert w.positions().shape == (100_000, 5, 2)
        np.testing.assert_array_equal(w.positions()[:, 0], 0.0)

    def test_coarsening_preserves_the_path(self):
        fine = TimeGrid.union(TimeGrid.uniform(1.0, 6), TimeGrid.uniform(1.0, 4))
        w = brownian_increments(RngStream(9), fine, samples=50)
        for steps in (4, 6):
            coarse = coarsen_increments(w, TimeGrid.uniform(1.0, steps))
            np.testing.assert_allclose(coarse.terminal(), w.terminal())
            np.testing.assert_allclose(
                coarse.positions()[:, :, 0],
                w.positions()[:, fine.node_positions(coarse.grid), 0],
            )

    def test_coarsening_onto_the_same_grid_is_identity(self):
        grid = TimeGrid.uniform(1.0, 8)
        w = brownian_increments(RngStream(9), grid, samples=3)
        assert coarsen_increments(w, grid) is w

    def test_coarsening_needs_embedded_grid(self):
        w = brownian_increments(RngStream(9), TimeGrid.uniform(1.0, 8), samples=3)
        with pytest.raises(GridMismatchError):
            coarsen_increments(w, TimeGrid.uniform(1.0, 3))

    def test_increments_are_deterministic(self):
        grid = TimeGrid.uniform(1.0, 8)
        a = brownian_increments(RngStream(1, (4,)), grid, samples=10)
        b = brownian_increments(RngStream(1, (4,)), grid, samples=10)
        np.testing.assert_array_equal(a.increments, b.increments)
