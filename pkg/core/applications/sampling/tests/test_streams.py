import numpy as np
import pytest

from core.applications.sampling.streams import RngStream
from core.applications.sampling.streams import split_stream
from core.helpers.custom_exceptions import InvalidParameterError


class TestRngStream:
    def test_same_path_same_draws(self):
        first = RngStream(42, (1, 2)).normals(1000)
        second = RngStream(42, (1, 2)).normals(1000)
        np.testing.assert_array_equal(first, second)

    def test_split_is_a_pure_function(self):
        parent = RngStream(7)
        assert parent.split(3) == split_stream(parent, 3)
        assert parent.split(3).path == (3,)

    def test_split_order_matters(self):
        root = RngStream(7)
        a = root.split(1).split(2).normals(16)
        b = root.split(2).split(1).normals(16)
        assert not np.array_equal(a, b)

    def test_descend_matches_repeated_split(self):
        root = RngStream(11)
        assert root.descend(1, 2, 3) == root.split(1).split(2).split(3)

    def test_siblings_are_uncorrelated(self):
        root = RngStream(2005)
        a = root.split(0).normals(200_000)
        b = root.split(1).normals(200_000)
        assert abs(np.corrcoef(a, b)[0, 1]) < 0.01

    def test_draws_are_standard_normal(self):
        draws = RngStream(3).normals(400_000)
        assert abs(draws.mean()) < 0.01
        assert draws.var() == pytest.approx(1.0, abs=0.01)

    @pytest.mark.parametrize("seed", [-1, 2**64])
    def test_seed_out_of_range(self, seed):
        with pytest.raises(InvalidParameterError):
            RngStream(seed)

    def test_index_out_of_range(self):
        with pytest.raises(InvalidParameterError):
            RngStream(1).split(2**32)
