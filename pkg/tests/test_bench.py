"""Tests for the instrumented benchmark and its CSV output."""

import io

import pytest

from lazy_sssp.bench import CSV_COLUMNS, BenchRecord, Generator, loglog_slope, run_bench, write_csv
from lazy_sssp.config import EngineConfig
from lazy_sssp.replay import run_script


def record(n, work, **kwargs):
    values = dict(
        n=n,
        m_final=n,
        eps=0.1,
        algo="lazy",
        wall_ns=1000 * n,
        decrements=work,
        workset_inserts=0,
        iscan_total=0,
    )
    values.update(kwargs)
    return BenchRecord(**values)


class TestGenerators:
    def test_dense(self):
        script = Generator.DENSE.script(6, seed=0)
        assert script.n == 6
        assert script.insert_count == 30

    def test_gadgets_carry_answers(self):
        for family in (Generator.KCYCLE, Generator.OMV3):
            script = family.script(4, seed=1)
            assert script.expected is not None
            assert len(script.expected) == script.query_count


class TestRunBench:
    def test_rows_and_order(self):
        config = EngineConfig(eps=0.5, seed=3)
        records = list(run_bench("dense", [4, 6], config, reps=2))
        assert [r.n for r in records] == [4, 4, 6, 6]
        assert [r.m_final for r in records] == [12, 12, 30, 30]
        assert all(r.algo == "lazy" and r.eps == 0.5 for r in records)
        assert all(r.decrements > 0 for r in records)

    def test_counters_are_reproducible(self):
        config = EngineConfig(algo="es", seed=7)
        first = [r.work for r in run_bench("kcycle", [6, 9], config)]
        second = [r.work for r in run_bench("kcycle", [6, 9], config)]
        assert first == second

    def test_label_marks_test_constants(self):
        config = EngineConfig(test_constants=2)
        (rec,) = run_bench("dense", [5], config)
        assert rec.algo == "lazy[test-constants=2]"
        assert len(rec.per_i_scans) >= 1

    def test_unknown_generator(self):
        with pytest.raises(ValueError):
            list(run_bench("grid", [4], EngineConfig()))

    @pytest.mark.slow
    def test_worker_processes_match_in_process(self):
        config = EngineConfig(algo="es", seed=2)
        serial = [r.work for r in run_bench("omv3", [2, 3], config, reps=2)]
        pooled = [r.work for r in run_bench("omv3", [2, 3], config, reps=2, workers=2)]
        assert serial == pooled


class TestCsv:
    def test_header_and_rows(self):
        out = io.StringIO()
        count = write_csv([record(4, 10), record(8, 40, eps=0.25)], out)
        lines = out.getvalue().splitlines()
        assert count == 2
        assert lines[0] == "n,m_final,eps,algo,wall_ns,decrements,workset_inserts,iscan_total"
        assert lines[1] == "4,4,0.1,lazy,4000,10,0,0"
        assert lines[2] == "8,8,0.25,lazy,8000,40,0,0"
        assert tuple(lines[0].split(",")) == CSV_COLUMNS

    def test_empty(self):
        out = io.StringIO()
        assert write_csv([], out) == 0
        assert out.getvalue().count("\n") == 1

    def test_negative_counter(self):
        with pytest.raises(ValueError):
            record(4, -1)


class TestSlope:
    def test_quadratic(self):
        pytest.importorskip("numpy")
        records = [record(n, n * n) for n in (8, 16, 32, 64)]
        assert loglog_slope(records) == pytest.approx(2.0)
        assert loglog_slope(records, "wall_ns") == pytest.approx(1.0)

    def test_needs_two_sizes(self):
        pytest.importorskip("numpy")
        with pytest.raises(ValueError):
            loglog_slope([record(8, 1), record(8, 2)])
        with pytest.raises(ValueError):
            loglog_slope([record(8, 0), record(16, 2)])


class TestScaling:
    def test_dense_lazy_work_stays_below_cubic(self):
        pytest.importorskip("numpy")
        config = EngineConfig(algo="lazy", eps=0.25)
        records = list(run_bench("dense", [8, 16, 32], config))
        assert all(r.relaxations == 0 for r in records)
        assert loglog_slope(records) <= 2.75

    @pytest.mark.slow
    def test_dense_lazy_work_is_near_quadratic(self):
        pytest.importorskip("numpy")
        config = EngineConfig(algo="lazy", eps=0.25)
        records = list(run_bench("dense", [64, 128, 256, 512], config))
        assert loglog_slope(records) <= 2.4


@pytest.mark.slow
@pytest.mark.parametrize("algo", ["lazy", "es", "warmup", "oracle"])
def test_replay_speed(benchmark, algo):
    script = Generator.DENSE.script(32, seed=0)
    result = benchmark(run_script, script, EngineConfig(algo=algo, eps=0.5))
    assert result.m_final == 32 * 31
