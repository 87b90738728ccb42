import math

import pytest
from pydantic import ValidationError

from core.applications.bench.harness import crude_samples
from core.applications.bench.harness import draw_gbm_sets
from core.applications.bench.harness import rms_error
from core.applications.bench.harness import run_benchmark
from core.applications.bench.harness import speed_at_rms
from core.applications.bench.harness import speedup_at_rms
from core.applications.bench.reports import TIMING_FIELDS
from core.applications.bench.schemas import BenchRecord
from core.applications.bench.tests.factories import BenchConfigFactory
from core.applications.bench.tests.factories import BenchRecordFactory
from core.applications.bench.tests.factories import FlatGbmRangesFactory
from core.applications.sampling.streams import RngStream
from core.helpers.custom_exceptions import InvalidParameterError
from core.helpers.enums import MethodKind
from core.helpers.enums import ModelKind


class TestRmsError:
    def test_examples(self):
        assert rms_error([0.0, 0.0], [3.0, 4.0]) == pytest.approx(math.sqrt(12.5))
        assert rms_error([1.0, 2.0, 3.0], [1.0, 2.0, 3.0]) == 0.0
        assert rms_error([1.5], [1.0]) == 0.5

    def test_length_mismatch(self):
        with pytest.raises(InvalidParameterError):
            rms_error([1.0, 2.0], [1.0])

    def test_empty(self):
        with pytest.raises(InvalidParameterError):
            rms_error([], [])


def test_crude_samples():
    assert crude_samples(0.5, 64) == 64
    assert crude_samples(1.0, 64) == 4096
    assert crude_samples(0.5, 1) == 2


class TestBenchConfig:
    @pytest.mark.parametrize("n_list", [[], [16, 8], [8, 8], [2, 8]])
    def test_rejects_bad_level_lists(self, n_list):
        with pytest.raises(ValidationError):
            BenchConfigFactory(n_list=n_list)

    def test_rejects_alpha_outside_range(self):
        with pytest.raises(ValidationError):
            BenchConfigFactory(alpha=0.25)

    def test_rejects_empty_ranges(self):
        with pytest.raises(ValidationError):
            FlatGbmRangesFactory(sigma=(0.3, 0.1))


def test_zero_speed_guard():
    record = BenchRecord.timed(method=MethodKind.MC, n=4, m=4, N_m=2, N_n=0, rms=0.0, sets=3, wall_seconds=0.0)
    assert record.values_per_second == math.inf


class TestRunBenchmark:
    @pytest.mark.parametrize("method", [MethodKind.MC, MethodKind.SR])
    def test_deterministic_gbm_sets(self, method):
        cfg = BenchConfigFactory(method=method, model=ModelKind.GBM, n_list=[4, 16], sets=3, ranges=FlatGbmRangesFactory())
        records = run_benchmark(cfg)
        for record in records:
            euler = (1 + 0.05 / record.n) ** record.n
            expected = math.exp(-0.05) * 100 * abs(euler - math.exp(0.05))
            assert record.rms == pytest.approx(expected, rel=1e-6)

    def test_crude_records_carry_their_sample_counts(self):
        records = run_benchmark(BenchConfigFactory(n_list=[4, 16]))
        assert [(r.method, r.n, r.m, r.N_m, r.N_n) for r in records] == [
            (MethodKind.MC, 4, 4, 4, 0),
            (MethodKind.MC, 16, 16, 16, 0),
        ]

    def test_romberg_records_carry_their_levels(self):
        records = run_benchmark(BenchConfigFactory(method=MethodKind.SR, n_list=[16, 64]))
        assert [(r.m, r.N_m, r.N_n) for r in records] == [(4, 16, 4), (8, 64, 8)]

    def test_reproducible_apart_from_timing(self):
        cfg = BenchConfigFactory(method=MethodKind.SR, model=ModelKind.GBM, n_list=[4, 8], sets=4)
        first = [record.model_dump(exclude=TIMING_FIELDS) for record in run_benchmark(cfg)]
        again = [record.model_dump(exclude=TIMING_FIELDS) for record in run_benchmark(cfg)]
        assert first == again

    def test_worker_count_does_not_change_errors(self):
        cfg = BenchConfigFactory(n_list=[8, 16], sets=20)
        serial = [record.rms for record in run_benchmark(cfg, workers=1, chunk_size=16)]
        parallel = [record.rms for record in run_benchmark(cfg, workers=4, chunk_size=16)]
        assert serial == parallel

    def test_methods_share_parameter_sets(self):
        mc = BenchConfigFactory(model=ModelKind.GBM)
        sr = BenchConfigFactory(model=ModelKind.GBM, method=MethodKind.SR)
        root = RngStream(mc.master_seed)
        assert draw_gbm_sets(mc, root) == draw_gbm_sets(sr, root)
        other = draw_gbm_sets(BenchConfigFactory(model=ModelKind.GBM, master_seed=1), RngStream(1))
        assert other != draw_gbm_sets(mc, root)

    def test_gbm_sets_stay_in_range(self):
        cfg = BenchConfigFactory(model=ModelKind.GBM, sets=50)
        for p in draw_gbm_sets(cfg, RngStream(cfg.master_seed)):
            assert 80 <= p.s0 <= 120
            assert 0.1 <= p.sigma <= 0.4
            assert 0.5 <= p.horizon <= 2

    def test_asian_cells(self, settings):
        settings.ROMBERG_ASIAN_ORACLE_STEPS = 16
        settings.ROMBERG_ASIAN_ORACLE_SAMPLES = 2000
        cfg = BenchConfigFactory(method=MethodKind.SR, model=ModelKind.ASIAN, n_list=[8], sets=2)
        (record,) = run_benchmark(cfg)
        assert (record.m, record.N_m, record.N_n) == (2, 64, 16)
        assert record.rms > 0


class TestSpeedAtRms:
    def test_log_log_interpolation(self):
        records = [
            BenchRecordFactory(rms=0.1, values_per_second=10.0),
            BenchRecordFactory(rms=0.001, values_per_second=1000.0),
        ]
        assert speed_at_rms(records, 0.01) == pytest.approx(100.0)

    @pytest.mark.parametrize("target", [0.5, 1e-4, 0.0])
    def test_target_outside_measured_range(self, target):
        records = [BenchRecordFactory(rms=0.1), BenchRecordFactory(rms=0.01)]
        with pytest.raises(InvalidParameterError):
            speed_at_rms(records, target)


def test_romberg_is_faster_at_equal_error():
    common = {"model": ModelKind.CIRCLE, "alpha": 0.5, "n_list": [64, 128, 256], "sets": 200}
    mc = run_benchmark(BenchConfigFactory(method=MethodKind.MC, **common))
    sr = run_benchmark(BenchConfigFactory(method=MethodKind.SR, **common))
    low = max(min(r.rms for r in mc), min(r.rms for r in sr))
    high = min(max(r.rms for r in mc), max(r.rms for r in sr))
    assert low < high
    assert speedup_at_rms(mc, sr, math.sqrt(low * high)) > 1.5


@pytest.mark.slow
def test_romberg_is_faster_at_one_percent_error():
    common = {"model": ModelKind.CIRCLE, "alpha": 0.5, "sets": 2}
    mc = run_benchmark(BenchConfigFactory(method=MethodKind.MC, n_list=[2048, 8192, 32768], **common), chunk_size=512)
    sr = run_benchmark(
        BenchConfigFactory(method=MethodKind.SR, n_list=[2048, 8192, 32768, 131072], **common),
        chunk_size=128,
    )
    target = 1e-2
    assert speed_at_rms(sr, target) > speed_at_rms(mc, target)
    assert speedup_at_rms(mc, sr, target) > 1.5
    mc_cell = next(record for record in mc if record.n == 32768)
    sr_cell = next(record for record in sr if record.n == 32768)
    assert sr_cell.wall_seconds < mc_cell.wall_seconds
