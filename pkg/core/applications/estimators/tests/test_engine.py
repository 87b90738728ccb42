import numpy as np
import pytest

from core.applications.estimators.engine import Moments
from core.applications.estimators.engine import map_chunks
from core.applications.estimators.engine import resolve_chunk_size
from core.applications.estimators.engine import run_term
from core.applications.sampling.streams import RngStream
from core.helpers.enums import StreamTerm


def normal_kernel(stream: RngStream, initial: np.ndarray) -> np.ndarray:
    return initial[:, 0] + stream.normals(initial.shape[0])


class TestMoments:
    def test_merge_matches_one_pass(self):
        values = np.random.default_rng(0).normal(size=1000)
        set_ids = np.zeros(1000, dtype=int)
        whole = Moments.from_values(values, set_ids, 1)
        left = Moments.from_values(values[:300], set_ids[:300], 1)
        right = Moments.from_values(values[300:], set_ids[300:], 1)
        merged = left.merge(right)
        np.testing.assert_allclose(merged.mean, whole.mean)
        np.testing.assert_allclose(merged.m2, whole.m2)
        assert merged.variance[0] == pytest.approx(values.var(ddof=1))

    def test_empty_sets_stay_zero(self):
        moments = Moments.from_values(np.array([1.0, 3.0]), np.array([0, 0]), 2)
        assert moments.count.tolist() == [2.0, 0.0]
        assert moments.mean.tolist() == [2.0, 0.0]
        assert moments.std_err[1] == 0.0

    def test_single_sample_has_no_variance(self):
        moments = Moments.from_values(np.array([5.0]), np.array([0]), 1)
        assert moments.variance[0] == 0.0


class TestRunTerm:
    @pytest.mark.parametrize("workers", [4, 16])
    def test_worker_count_does_not_change_results(self, workers):
        options = {
            "stream": RngStream(99),
            "term": StreamTerm.CRUDE,
            "initial_states": np.array([[0.0], [10.0]]),
            "samples_per_set": 5000,
            "chunk_size": 256,
        }
        serial = run_term(normal_kernel, workers=1, **options)
        parallel = run_term(normal_kernel, workers=workers, **options)
        np.testing.assert_array_equal(serial.mean, parallel.mean)
        np.testing.assert_array_equal(serial.m2, parallel.m2)

    def test_panel_sets_start_from_their_own_state(self):
        moments = run_term(
            normal_kernel,
            stream=RngStream(1),
            term=StreamTerm.CRUDE,
            initial_states=np.array([[0.0], [10.0], [-5.0]]),
            samples_per_set=3000,
            chunk_size=1000,
        )
        np.testing.assert_array_equal(moments.count, [3000, 3000, 3000])
        np.testing.assert_allclose(moments.mean, [0.0, 10.0, -5.0], atol=0.1)

    def test_terms_draw_from_different_branches(self):
        options = {
            "stream": RngStream(1),
            "initial_states": np.array([[0.0]]),
            "samples_per_set": 100,
        }
        coarse = run_term(normal_kernel, term=StreamTerm.COARSE, **options)
        coupled = run_term(normal_kernel, term=StreamTerm.COUPLED, **options)
        assert coarse.mean[0] != coupled.mean[0]

    def test_chunk_size_defaults_to_settings(self, settings):
        settings.ROMBERG_CHUNK_SIZE = 10
        seen = []

        def kernel(stream, initial):
            seen.append(initial.shape[0])
            return np.zeros(initial.shape[0])

        run_term(kernel, stream=RngStream(1), term=StreamTerm.CRUDE, initial_states=[[0.0]], samples_per_set=25)
        assert seen == [10, 10, 5]

    def test_long_paths_shrink_the_default_chunk(self, settings):
        settings.ROMBERG_CHUNK_VALUES = 1000
        seen = []

        def kernel(stream, initial):
            seen.append(initial.shape[0])
            return np.zeros(initial.shape[0])

        options = {"stream": RngStream(1), "term": StreamTerm.CRUDE, "initial_states": [[0.0]], "samples_per_set": 900}
        run_term(kernel, steps=250, **options)
        assert seen == [4] * 225
        seen.clear()
        run_term(kernel, steps=250, chunk_size=300, **options)
        assert seen == [300, 300, 300]


def test_map_chunks_keeps_order():
    assert map_chunks(lambda chunk: chunk * chunk, 6, workers=3) == [0, 1, 4, 9, 16, 25]


@pytest.mark.parametrize(
    ("chunk_size", "steps", "expected"),
    [(None, None, 4096), (None, 512, 4096), (None, 16384, 256), (None, 2**23, 1), (100, 16384, 100)],
)
def test_resolve_chunk_size(chunk_size, steps, expected):
    assert resolve_chunk_size(chunk_size, steps) == expected
