"""Tests for the lazy band tree and its full-state invariants."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lazy_sssp.exceptions import UnreachableError
from lazy_sssp.graph import Insert
from lazy_sssp.invariants import LazyTreeChecker
from lazy_sssp.lazy_tree import LazyTree, LazyTreeParams, WorkSet, weight_class
from lazy_sssp.oracle import dijkstra
from lazy_sssp.script import random_script
from lazy_sssp.stats import ScanStats


class TestParams:
    def test_production_units(self):
        p = LazyTreeParams.for_band(16, tau=4, eps=1.0)
        assert p.n_pad == 16 and p.logn == 4
        assert p.hi_unit == pytest.approx(192.0)
        assert p.lo_unit == pytest.approx(96.0)
        assert p.depth_limit == p.tau_max == 16
        assert p.max_level == 0

    def test_test_constant_override(self):
        p = LazyTreeParams.for_band(16, tau=4, eps=1.0, test_constant=2)
        assert [p.threshold_hi(i) for i in range(5)] == [0, 2, 6, 14, 30]
        assert [p.threshold_lo(i) for i in range(5)] == [0, 1, 3, 7, 15]
        assert p.max_level == 3

    @pytest.mark.parametrize("tau, eps", [(3, 0.5), (0, 0.5), (4, 0.0), (4, 1.5)])
    def test_rejects_bad_values(self, tau, eps):
        with pytest.raises(ValueError):
            LazyTreeParams.for_band(8, tau=tau, eps=eps)

    @pytest.mark.parametrize(
        "w, cls", [(1, -1), (2, 0), (3, 1), (4, 1), (5, 2), (8, 2), (9, 3), (16, 3), (17, 4)]
    )
    def test_weight_class(self, w, cls):
        assert weight_class(w) == cls
        if cls >= 0:
            assert 2**cls < w <= 2 ** (cls + 1)

    def test_scan_period(self):
        p = LazyTreeParams(n=8, tau=2, eps=0.25, depth_limit=40, weighted=True)
        assert [p.scan_period(j) for j in (-1, 0, 1, 2, 3, 4)] == [1, 1, 1, 1, 2, 4]


class TestWorkSet:
    def test_lifo_without_duplicates(self):
        stats = ScanStats()
        ws = WorkSet(stats)
        ws.push(0, 1)
        ws.push(1, 2)
        ws.push(0, 1)
        assert len(ws) == 2
        assert stats.workset_inserts == 2
        assert ws.top() == (1, 2)
        ws.discard_top()
        ws.push(1, 2)
        assert ws.top() == (1, 2)
        assert stats.workset_inserts == 3


def unweighted_tree(n, tau=1, eps=0.5, c=None):
    return LazyTree(n, 0, LazyTreeParams.for_band(n, tau=tau, eps=eps, test_constant=c))


class TestMicroInstances:
    def test_path(self):
        t = unweighted_tree(4, tau=1, eps=0.5)
        assert t.sentinel == 4
        for u, v in [(0, 1), (1, 2)]:
            t.insert_edge(u, v)
        assert [t.dist(v) for v in range(4)] == [0, 1, 2, math.inf]
        assert t.path(2) == [0, 1, 2]
        with pytest.raises(UnreachableError):
            t.path(3)

    def test_beyond_depth_is_infinite(self):
        t = unweighted_tree(6, tau=1, eps=0.5)
        for u in range(5):
            t.insert_edge(u, u + 1)
        assert t.dist(3) == 3
        assert t.dist(4) == math.inf

    def test_shortcut_lowers_estimates(self):
        t = unweighted_tree(5, tau=2, eps=0.5)
        for u in range(4):
            t.insert_edge(u, u + 1)
        assert t.dist(4) == 4
        t.insert_edge(0, 3)
        assert t.dist(3) == 1
        assert t.dist(4) == 2
        assert t.path(4) == [0, 3, 4]

    def test_repeat_insert_is_ignored(self):
        t = unweighted_tree(3)
        t.insert_edge(0, 1)
        before = t.stats.to_dict()
        t.insert_edge(0, 1)
        assert t.stats.to_dict() == before

    def test_star_turns_heavy(self):
        t = unweighted_tree(8, tau=4, eps=1.0, c=1)
        assert t.params.max_level == 3
        for v in range(2, 8):
            t.insert_edge(1, v)
        assert t.h[1] >= 1
        t.insert_edge(0, 1)
        assert t.dist(1) == 1
        assert t.h[1] >= 1
        assert len(t.stats.per_i_scans()) >= 2
        exact = dijkstra(t.snapshot_graph()).dist
        assert all(t.dist(v) >= exact[v] for v in range(8))
        assert LazyTreeChecker(t).check() == []

    def test_weighted_edges(self):
        p = LazyTreeParams(n=4, tau=1, eps=0.5, depth_limit=20, weighted=True)
        t = LazyTree(4, 0, p)
        t.insert_edge(0, 1, 5)
        t.insert_edge(1, 2, 3)
        assert t.dist(1) == 5
        assert t.dist(2) == 8
        t.insert_edge(0, 1, 2)
        assert 5 <= t.dist(2) <= 8
        assert LazyTreeChecker(t).check() == []

    def test_cache_index(self):
        t = unweighted_tree(4, tau=2, eps=0.5, c=1)
        t.insert_edge(0, 1)
        t.insert_edge(1, 2)
        assert t.cache_index(2, 0) == 1
        assert t.cache_index(2, 1) == 0
        assert t.cache_index(3, 2) == (t.sentinel - 1) // 4 * 4

    def test_level_drops_when_its_own_suffix_runs_dry(self):
        script = random_script(4, 20, 0, query_rate=0.0)
        replay_checked(unweighted_tree(4, tau=1, eps=0.25, c=1), script)

    def test_lower_threshold_holds_at_the_current_level(self):
        t = unweighted_tree(7, tau=1, eps=0.5, c=1)
        replay_checked(t, random_script(7, 28, 0, query_rate=0.0))
        for u in range(7):
            level = t.h[u]
            assert len(t.fn_members(u)) >= t.params.threshold_lo(level)


def replay_checked(tree, script, every=1):
    checker = LazyTreeChecker(tree)
    for index, event in enumerate(script.events):
        assert isinstance(event, Insert)
        tree.insert_edge(event.u, event.v, event.w)
        if index % every == 0 or index == len(script.events) - 1:
            violations = checker.check()
            assert violations == [], "\n".join(map(str, violations))


class TestInvariantFuzz:
    @given(
        seed=st.integers(0, 100_000),
        n=st.integers(2, 14),
        tau=st.sampled_from([1, 2, 4]),
        eps=st.sampled_from([0.25, 0.5, 1.0]),
        c=st.sampled_from([None, 1, 2, 3]),
    )
    def test_unweighted(self, seed, n, tau, eps, c):
        tree = unweighted_tree(n, tau=tau, eps=eps, c=c)
        script = random_script(n, 5 * n, seed, query_rate=0.0)
        replay_checked(tree, script)

    @given(
        seed=st.integers(0, 100_000),
        n=st.integers(2, 12),
        eps=st.sampled_from([0.25, 0.5, 1.0]),
        w=st.sampled_from([2, 8, 16]),
        c=st.sampled_from([None, 1, 2]),
    )
    def test_weighted(self, seed, n, eps, w, c):
        params = LazyTreeParams(
            n=n, tau=2, eps=eps, depth_limit=3 * n * w, weighted=True, test_constant=c
        )
        tree = LazyTree(n, 0, params)
        script = random_script(n, 5 * n, seed, max_weight=w, query_rate=0.0)
        replay_checked(tree, script)

    @pytest.mark.slow
    @pytest.mark.parametrize("c", [1, 2, 3])
    def test_dense_runs_with_small_constants(self, c):
        for seed in range(20):
            n = 16 + seed % 3 * 16
            tree = unweighted_tree(n, tau=4, eps=0.5, c=c)
            script = random_script(n, 6 * n, seed, query_rate=0.0)
            replay_checked(tree, script, every=4)
