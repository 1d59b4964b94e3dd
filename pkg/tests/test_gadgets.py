"""Tests for the reduction gadgets, checked end to end with the exact baseline."""

import math

import pytest
from conftest import build_graph
from hypothesis import given
from hypothesis import strategies as st

from lazy_sssp.es_tree import ExactEngine
from lazy_sssp.exceptions import GadgetError
from lazy_sssp.gadgets import (
    KCycleInstance,
    Omv3Instance,
    gen_kcycle,
    gen_omv3,
    random_omv3,
    random_partitioned_graph,
)
from lazy_sssp.graph import DistQuery, Insert, ThresholdAnswer
from lazy_sssp.oracle import brute_k_cycle, brute_omv3


def exact_answers(script):
    engine = ExactEngine(script.n, script.source)
    out = []
    for event in script.events:
        if isinstance(event, Insert):
            engine.insert(event.u, event.v, event.w)
        elif isinstance(event, DistQuery):
            out.append(engine.dist(event.t))
    return out


def assert_thresholds_hold(script):
    answers = exact_answers(script)
    assert len(answers) == len(script.expected)
    for d, expected in zip(answers, script.expected):
        assert isinstance(expected, ThresholdAnswer)
        assert expected.accepts_exact(d), f"{expected} rejects {d}"


class TestKCycle:
    def test_triangle(self):
        g = build_graph(3, [(0, 1), (1, 2), (2, 0)])
        inst = KCycleInstance(g, 3, [1, 2, 3])
        assert inst.vertex_count == 6
        assert inst.threshold(1) == 5
        script = inst.to_script()
        assert script.source == inst.s_path[0]
        assert script.expected == [ThresholdAnswer(inst.target, 5, True)]
        assert exact_answers(script) == [5]

    def test_thresholds_shrink_by_two_per_stage(self):
        g, partition = random_partitioned_graph(12, 4, 0.4, seed=1)
        inst = KCycleInstance(g, 4, partition)
        assert inst.stages == 3
        assert [inst.threshold(i) for i in (1, 2, 3)] == [10, 8, 6]

    def test_broken_cycle_misses(self):
        g = build_graph(3, [(0, 1), (1, 2)])
        script = gen_kcycle(g, 3, [1, 2, 3])
        assert script.expected == [ThresholdAnswer(script.expected[0].t, 5, False)]
        assert exact_answers(script)[0] > 5

    def test_rejects_bad_input(self):
        g = build_graph(3, [(0, 1)])
        with pytest.raises(GadgetError):
            gen_kcycle(g, 2, [1, 2, 1])
        with pytest.raises(GadgetError):
            gen_kcycle(g, 3, [1, 2])
        with pytest.raises(GadgetError):
            random_partitioned_graph(6, 2, 0.5, seed=0)

    @given(
        seed=st.integers(0, 10_000),
        n=st.integers(3, 15),
        k=st.integers(3, 5),
        density=st.sampled_from([0.2, 0.5, 0.9]),
    )
    def test_random_instances(self, seed, n, k, density):
        g, partition = random_partitioned_graph(n, k, density, seed)
        script = gen_kcycle(g, k, partition)
        assert_thresholds_hold(script)
        hits = [a.hit for a in script.expected]
        assert any(hits) == brute_k_cycle(g, k, partition)


class TestOmv3:
    def test_single_entry(self):
        script = gen_omv3([[1]], [([1], [1], [1])])
        inst = Omv3Instance([[True]], [([True], [True], [True])])
        assert inst.threshold(1, 1) == 9
        assert script.expected == [ThresholdAnswer(inst.target, 9, True)]
        assert exact_answers(script) == [9]

    def test_single_entry_without_triangle(self):
        script = gen_omv3([[0]], [([1], [1], [1])])
        assert script.expected[0].hit is False
        assert exact_answers(script)[0] > 9

    def test_layout(self):
        inst = Omv3Instance([[False] * 3 for _ in range(3)], [])
        assert inst.vertex_count == 4 * 3 * 4 + 2 * 9
        ids = {
            inst.node(g, i, j) for g in inst.GADGETS for i in range(1, 4) for j in range(4)
        }
        ids |= {f(q, i) for f in (inst.s, inst.t) for q in range(1, 4) for i in range(1, 4)}
        assert ids == set(range(inst.vertex_count))
        assert inst.local_threshold(1) == 3 + 4 * 3
        assert inst.threshold(3, 3) == inst.local_threshold(3) + 2

    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_row_term_matches_walk_length(self, n):
        inst = Omv3Instance([[False] * n for _ in range(n)], [])
        for q in range(1, n + 1):
            for a in range(1, n + 1):
                walk = 2 * (n - q) * n + 2 * (n - a) + 2
                assert inst.threshold(q, a) == walk + inst.local_threshold(q)

    def test_rejects_bad_input(self):
        with pytest.raises(GadgetError):
            gen_omv3([[1, 0]], [])
        with pytest.raises(GadgetError):
            gen_omv3([[1]], [([1], [1], [1])] * 2)
        with pytest.raises(GadgetError):
            gen_omv3([[1, 0], [0, 1]], [([1, 0], [1], [1, 0])])

    @given(
        seed=st.integers(0, 10_000),
        n=st.integers(1, 4),
        density=st.sampled_from([0.3, 0.6]),
    )
    def test_random_instances(self, seed, n, density):
        A, queries = random_omv3(n, density, seed)
        assert len(queries) == n
        script = gen_omv3(A, queries)
        assert script.query_count == n * n
        assert_thresholds_hold(script)
        for q, (u, v, w) in enumerate(queries):
            rows = script.expected[q * n : (q + 1) * n]
            assert any(a.hit for a in rows) == brute_omv3(A, u, v, w)

    def test_fewer_queries_than_rows(self):
        A, queries = random_omv3(3, 0.5, seed=4, queries=1)
        script = gen_omv3(A, queries)
        assert len(script.expected) == 3
        assert_thresholds_hold(script)


def test_unreachable_target_reads_as_miss():
    assert ThresholdAnswer(0, 5, False).accepts_exact(math.inf)
