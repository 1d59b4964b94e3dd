"""
Full-state consistency checks for the lazy trees.

These walk every vertex and every cached edge, so they are meant for small
instances in tests and in ``verify``. A checker returns the list of violations
it found; an empty list means the state is consistent.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from lazy_sssp.graph import Distance
from lazy_sssp.lazy_tree import LazyTree, weight_class
from lazy_sssp.oracle import dijkstra
from lazy_sssp.warmup import WarmupTree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Violation:
    """
    One failed check.

    Attributes:
        check: Short name of the property
        vertex: Vertex where it failed
        detail: Human-readable values
    """

    check: str
    vertex: int
    detail: str

    def __str__(self) -> str:
        return f"[{self.check}] vertex {self.vertex}: {self.detail}"


class LazyTreeChecker:
    """
    Checks a :class:`LazyTree` at quiescence.

    The checker remembers cache slots between calls so it can also verify
    that they never move up.

    Args:
        tree: Tree under inspection
        check_stretch: Verify the ``(1 + eps)`` bound for in-band vertices;
            only meaningful with production thresholds on unweighted trees
    """

    def __init__(self, tree: LazyTree, check_stretch: Optional[bool] = None):
        self.tree = tree
        if check_stretch is None:
            check_stretch = tree.params.test_constant is None and not tree.params.weighted
        self.check_stretch = check_stretch
        self._slots: Dict[Tuple[int, int], int] = {}

    def check(self, true_dist: Optional[Sequence[Distance]] = None) -> List[Violation]:
        """
        Run every check.

        Args:
            true_dist: Exact distances in the tree's own graph; computed when omitted
        """
        tree = self.tree
        if true_dist is None:
            true_dist = dijkstra(tree.snapshot_graph()).dist
        out: List[Violation] = []
        for check in (
            self._lower_bound,
            self._placement,
            self._fn_gap,
            self._upper_counts,
            self._fn_size,
            self._tightness,
            self._expire,
            self._parents,
        ):
            out.extend(check(true_dist))
        if self.check_stretch:
            out.extend(self._stretch(true_dist))
        for violation in out:
            logger.warning(f"tau={tree.params.tau}: {violation}")
        return out

    def _lower_bound(self, true_dist: Sequence[Distance]) -> List[Violation]:
        t = self.tree
        return [
            Violation("lower-bound", v, f"estimate {t.dist(v)} < distance {true_dist[v]}")
            for v in range(t.n)
            if t.dist(v) < true_dist[v]
        ]

    def _placement(self, _: Sequence[Distance]) -> List[Violation]:
        t = self.tree
        out = []
        for u in range(t.n):
            seen = {v: s for s, bucket in t.cache[u].items() for v in bucket}
            if seen != t.cache_pos[u] or set(seen) != set(t.weights[u]):
                out.append(Violation("placement", u, "cache slots disagree with cache_pos"))
                continue
            for v, slot in seen.items():
                if slot < min(t.est[v], t.params.depth_limit):
                    out.append(
                        Violation("placement", u, f"slot {slot} of {v} below estimate {t.est[v]}")
                    )
                previous = self._slots.get((u, v))
                if previous is not None and slot > previous:
                    out.append(
                        Violation("cache-monotone", u, f"slot of {v} rose {previous} -> {slot}")
                    )
                self._slots[(u, v)] = slot
        return out

    def _fn_gap(self, _: Sequence[Distance]) -> List[Violation]:
        t = self.tree
        out = []
        for u in range(t.n):
            bound = (2 if t.params.weighted else 1) << t.h[u]
            for v, _w in t.fn_members(u):
                gap = abs(t.est[v] - t.est[u])
                if gap > bound:
                    out.append(
                        Violation("fn-gap", u, f"member {v} differs by {gap} > {bound}")
                    )
        return out

    def _upper_counts(self, _: Sequence[Distance]) -> List[Violation]:
        t = self.tree
        p = t.params
        out = []
        for u in range(t.n):
            for level in range(1, p.logn + 1):
                start = t.cache_index(u, level)
                direct = sum(
                    1
                    for s, bucket in t.cache[u].items()
                    if s >= start
                    for w in bucket.values()
                    if t.eligible(w, level)
                )
                if level <= p.max_level and t.cache[u]:
                    indexed = t.suffix_count(u, level, start, record=False)
                    if indexed != direct:
                        out.append(
                            Violation("suffix-index", u, f"level {level}: {indexed} != {direct}")
                        )
                if level > t.h[u] and direct > p.threshold_hi(level):
                    out.append(
                        Violation(
                            "upper-count",
                            u,
                            f"level {level}: {direct} > {p.threshold_hi(level)} with h={t.h[u]}",
                        )
                    )
        return out

    def _fn_size(self, _: Sequence[Distance]) -> List[Violation]:
        t = self.tree
        out = []
        for u in range(t.n):
            need = t.params.threshold_lo(t.h[u])
            have = len(t.fn_members(u))
            if have < need:
                out.append(Violation("fn-size", u, f"|FN|={have} < {need} at h={t.h[u]}"))
        return out

    def _tightness(self, _: Sequence[Distance]) -> List[Violation]:
        t = self.tree
        p = t.params
        out = []
        for u in range(t.n):
            if t.est[u] > p.depth_limit:
                continue
            for v, w in t.weights[u].items():
                if p.weighted:
                    if w < (1 << t.h[u]):
                        continue
                    slack = p.scan_period(weight_class(w)) - 1
                elif t.h[u] == 0:
                    slack = 0
                else:
                    continue
                bound = min(t.sentinel, t.est[u] + w + slack)
                if t.est[v] > bound:
                    out.append(
                        Violation("tightness", u, f"edge to {v}: {t.est[v]} > {bound}")
                    )
        return out

    def _expire(self, _: Sequence[Distance]) -> List[Violation]:
        t = self.tree
        out = []
        for v in range(t.n):
            listed = {u: i for i, bucket in t.expire[v].items() for u in bucket}
            if listed != t.expire_pos[v]:
                out.append(Violation("expire", v, "expire lists disagree with expire_pos"))
        for u in range(t.n):
            index = t.cache_index(u)
            for v in t.weights[u]:
                registered = t.expire_pos[v].get(u)
                member = t.in_fn(u, v)
                if member and registered != index:
                    out.append(
                        Violation("expire", u, f"member {v} registered at {registered} not {index}")
                    )
                if not member and registered is not None:
                    out.append(
                        Violation("expire", u, f"non-member {v} still registered at {registered}")
                    )
        return out

    def _parents(self, _: Sequence[Distance]) -> List[Violation]:
        t = self.tree
        out = []
        for v in range(t.n):
            if v == t.source or t.est[v] > t.params.depth_limit:
                continue
            total, x, steps = 0, v, 0
            while x != t.source and steps <= t.n:
                link = t.parent[x]
                current = None if link is None else t.weights[link[0]].get(x)
                if link is None or current is None or current > link[1]:
                    out.append(Violation("parent", v, f"broken link at {x}"))
                    break
                total += current
                x = link[0]
                steps += 1
            else:
                if x != t.source:
                    out.append(Violation("parent", v, "parent chain does not reach the source"))
                elif total > t.est[v]:
                    out.append(
                        Violation("parent", v, f"chain weight {total} > estimate {t.est[v]}")
                    )
        return out

    def _stretch(self, true_dist: Sequence[Distance]) -> List[Violation]:
        t = self.tree
        tau, eps = t.params.tau, t.params.eps
        out = []
        for v in range(t.n):
            d = true_dist[v]
            if d == math.inf or not tau <= d < 2 * tau:
                continue
            if t.dist(v) > (1 + eps) * d:
                out.append(Violation("stretch", v, f"estimate {t.dist(v)} > (1+{eps})*{d}"))
        return out


class WarmupChecker:
    """Checks a :class:`~lazy_sssp.warmup.WarmupTree` at quiescence."""

    def __init__(self, tree: WarmupTree):
        self.tree = tree

    def check(self, true_dist: Optional[Sequence[Distance]] = None) -> List[Violation]:
        t = self.tree
        if true_dist is None:
            true_dist = dijkstra(t.graph).dist
        out: List[Violation] = []
        for v in range(t.n):
            if t.lazy_dist(v) < true_dist[v]:
                out.append(
                    Violation("lower-bound", v, f"estimate {t.lazy_dist(v)} < {true_dist[v]}")
                )
        for u in range(t.n):
            if t.est[u] >= t.depth_limit:
                continue
            for v in t.fn_members(u):
                gap = abs(t.est[v] - t.est[u])
                if gap > t.step:
                    out.append(Violation("fn-gap", u, f"member {v} differs by {gap} > {t.step}"))
            if not t.heavy[u]:
                for v in t.graph.out_adj[u]:
                    if t.est[v] > t.est[u] + 1:
                        detail = f"edge to {v}: {t.est[v]} > {t.est[u] + 1}"
                        out.append(Violation("light-tightness", u, detail))
            elif t.fn_size(u) * 2 <= t.gamma:
                out.append(Violation("heavy-flag", u, f"heavy with |FN|={t.fn_size(u)}"))
        for violation in out:
            logger.warning(f"warm-up: {violation}")
        return out
