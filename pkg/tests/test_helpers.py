import pytest

from core.helpers.custom_exceptions import InvalidParameterError
from core.helpers.custom_exceptions import OracleUnavailableError
from core.helpers.custom_exceptions import RombergError
from core.helpers.utils import pairwise_reduce
from core.helpers.utils import round_half_up
from core.helpers.utils import stopwatch


@pytest.mark.parametrize(
    ("value", "expected"),
    [
        (2.5, 3),
        (2.4999, 2),
        (0.0, 0),
        (1000 ** (1 / 3), 10),
        (64 ** (4 / 3), 256),
        (1000**0.5, 32),
    ],
)
def test_round_half_up(value, expected):
    assert round_half_up(value) == expected


class TestPairwiseReduce:
    def test_tree_shape_depends_only_on_length(self):
        assert pairwise_reduce([1, 2, 3, 4, 5], lambda a, b: (a, b)) == (((1, 2), (3, 4)), 5)

    def test_single_item(self):
        assert pairwise_reduce(["only"], lambda a, b: a + b) == "only"

    def test_empty(self):
        with pytest.raises(ValueError, match="empty"):
            pairwise_reduce([], lambda a, b: a + b)


def test_stopwatch():
    with stopwatch() as elapsed:
        sum(range(1000))
    assert elapsed["seconds"] >= 0


class TestExceptions:
    def test_details_in_message(self):
        error = InvalidParameterError("n must be at least 4", {"n": 2})
        assert str(error) == "n must be at least 4 (n=2)"
        assert error.details == {"n": 2}

    def test_plain_message(self):
        assert str(OracleUnavailableError("quadrature returned nan")) == "quadrature returned nan"

    def test_common_base(self):
        assert issubclass(InvalidParameterError, RombergError)
