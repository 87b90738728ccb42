import math

import numpy as np
import pytest

from core.applications.diffusions.functions import TestFunction
from core.applications.diffusions.functions import eval_test_function
from core.helpers.custom_exceptions import DimensionMismatchError
from core.helpers.enums import TestFunctionKind


class TestEvalTestFunction:
    def test_f_alpha_vanishes_on_the_circle(self):
        f = TestFunction(kind=TestFunctionKind.F_ALPHA, alpha=0.5)
        assert eval_test_function(f, np.array([math.cos(1.0), math.sin(1.0)])) == pytest.approx(0.0, abs=1e-15)

    def test_f_alpha_off_the_circle(self):
        f = TestFunction(kind=TestFunctionKind.F_ALPHA, alpha=1.0)
        assert eval_test_function(f, np.array([2.0, 0.0])) == pytest.approx(9.0)

    def test_g_alpha_adds_the_abscissa(self):
        f = TestFunction(kind=TestFunctionKind.G_ALPHA, alpha=0.75)
        assert eval_test_function(f, np.array([0.6, 0.8])) == pytest.approx(0.6)

    def test_call_and_put(self):
        states = np.array([[90.0], [110.0]])
        call = TestFunction(kind=TestFunctionKind.EURO_CALL, strike=100.0)
        put = TestFunction(kind=TestFunctionKind.EURO_PUT, strike=100.0)
        np.testing.assert_allclose(eval_test_function(call, states), [0.0, 10.0])
        np.testing.assert_allclose(eval_test_function(put, states), [10.0, 0.0])

    def test_sigmoid_is_one_half_at_the_strike(self):
        f = TestFunction(kind=TestFunctionKind.SIGMOID, strike=100.0, width=5.0)
        assert eval_test_function(f, np.array([100.0])) == pytest.approx(0.5)
        assert eval_test_function(f, np.array([105.0])) == pytest.approx(1 / (1 + math.exp(-1)))

    def test_discount_scales_every_kind(self):
        f = TestFunction(kind=TestFunctionKind.IDENTITY, discount=0.5)
        assert eval_test_function(f, np.array([3.0, 4.0])) == pytest.approx(1.5)

    def test_planar_kinds_need_two_coordinates(self):
        with pytest.raises(DimensionMismatchError):
            eval_test_function(TestFunction(kind=TestFunctionKind.F_ALPHA), np.array([[1.0]]))

    def test_price_kinds_need_one_coordinate(self):
        with pytest.raises(DimensionMismatchError):
            eval_test_function(TestFunction(kind=TestFunctionKind.EURO_CALL), np.array([[1.0, 2.0]]))

    def test_alpha_range_is_validated(self):
        with pytest.raises(ValueError, match="alpha"):
            TestFunction(kind=TestFunctionKind.F_ALPHA, alpha=0.2)
