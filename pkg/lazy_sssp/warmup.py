"""
Two-level approximate tree with a single light/heavy threshold.

Short distances, up to ``ceil(n ** (2/3))``, come from an exact bounded ES
tree. Longer ones come from one lazy tree in which a vertex turns heavy once
its forward neighbourhood holds ``gamma`` vertices and light again when it
falls to ``gamma / 2``. Light vertices rescan their forward neighbourhood on
every decrement; heavy ones only after their estimate has fallen by
``ceil(n ** (1/3))``. Cached positions of a vertex are refreshed in all of
its in-neighbours' caches after the same amount of decrease.
"""

import logging
import math
from typing import Dict, List, Optional, Set

from lazy_sssp.es_tree import EsTree
from lazy_sssp.exceptions import UnreachableError
from lazy_sssp.graph import Distance, DynGraph, InsertKind
from lazy_sssp.lazy_tree import WorkSet
from lazy_sssp.slot_tree import SlotTree
from lazy_sssp.stats import ScanStats

logger = logging.getLogger(__name__)


def ceil_root(x: int, k: int) -> int:
    """Smallest integer ``r`` with ``r ** k >= x``."""
    if x <= 0:
        return 0
    r = max(1, round(x ** (1.0 / k)))
    while r**k < x:
        r += 1
    while r > 1 and (r - 1) ** k >= x:
        r -= 1
    return r


class WarmupTree:
    """
    Approximate unweighted distances combining an exact short-range tree with
    one lazy tree.

    Attributes:
        gamma: Forward-neighbourhood size that turns a vertex heavy
        step: ``ceil(n ** (1/3))``, the lazy rescan distance
        short_depth: ``ceil(n ** (2/3))``, depth of the exact tree
        est: Lazy estimates; ``sentinel`` marks unreached vertices
        heavy: Per-vertex heaviness flag

    Examples:
        >>> t = WarmupTree(4, 0, eps=0.5)
        >>> t.insert(0, 1)
        >>> t.dist(1)
        1
    """

    def __init__(
        self,
        n: int,
        source: int = 0,
        eps: float = 0.1,
        gamma: Optional[int] = None,
        stats: Optional[ScanStats] = None,
    ):
        if not 0 < eps <= 1:
            raise ValueError(f"eps must lie in (0, 1], got {eps}")
        self.n = n
        self.source = source
        self.eps = eps
        self.stats = stats if stats is not None else ScanStats()
        self.step = ceil_root(n, 3)
        self.short_depth = ceil_root(n * n, 3)
        self.gamma = gamma if gamma is not None else math.ceil(6 * n ** (2 / 3) / eps)
        self.depth_limit = math.ceil((1 + eps) * n) + 1
        self.sentinel = self.depth_limit + 1

        self.graph = DynGraph(n, source)
        self.exact = EsTree(n, source, depth_bound=self.short_depth, stats=self.stats)

        self.est: List[int] = [self.sentinel] * n
        self.est[source] = 0
        self.parent: List[Optional[int]] = [None] * n
        self.cache: List[Dict[int, Set[int]]] = [{} for _ in range(n)]
        self.cache_pos: List[Dict[int, int]] = [{} for _ in range(n)]
        self.heavy: List[bool] = [False] * n
        self.scan_drop: List[int] = [0] * n
        self.pending_drop: List[int] = [0] * n
        self._counting = self.gamma <= n - 1
        self._trees: List[Optional[SlotTree]] = [None] * n
        logger.debug(
            f"warm-up tree n={n}: gamma={self.gamma}, step={self.step}, "
            f"short_depth={self.short_depth}, heavy reachable={self._counting}"
        )

    def fn_start(self, u: int) -> int:
        return self.est[u] + 2

    def fn_members(self, u: int) -> List[int]:
        start = self.fn_start(u)
        cache = self.cache[u]
        return [v for s in sorted(s for s in cache if s >= start) for v in sorted(cache[s])]

    def fn_size(self, u: int) -> int:
        tree = self._trees[u]
        if tree is not None:
            return tree.suffix(self.fn_start(u))
        return len(self.fn_members(u))

    def _slot_of(self, v: int) -> int:
        # unreached heads sit at the sentinel slot so FN(u) still sees them at est[u] = D - 1
        return self.est[v]

    def _move(self, u: int, v: int, slot: int) -> None:
        old = self.cache_pos[u][v]
        if slot >= old:
            return
        bucket = self.cache[u][old]
        bucket.discard(v)
        if not bucket:
            del self.cache[u][old]
        self.cache[u].setdefault(slot, set()).add(v)
        self.cache_pos[u][v] = slot
        tree = self._trees[u]
        if tree is not None:
            tree.add(old, -1)
            tree.add(slot, 1)

    def insert(self, u: int, v: int) -> None:
        """Insert unweighted edge ``(u, v)``; repeats are ignored."""
        if self.graph.insert_or_relax(u, v, 1).kind is not InsertKind.NEW:
            return
        self.exact.insert(self.graph, u, v, 1)

        slot = self._slot_of(v)
        if self._counting and self._trees[u] is None:
            self._trees[u] = SlotTree(self.sentinel + 1)
        self.cache[u].setdefault(slot, set()).add(v)
        self.cache_pos[u][v] = slot
        tree = self._trees[u]
        if tree is not None:
            tree.add(slot, 1)
        self._check_heavy(u)

        ws = WorkSet(self.stats)
        if self.est[v] > self.est[u] + 1:
            ws.push(u, v)
        while ws:
            x, y = ws.top()
            if self.est[y] > self.est[x] + 1:
                self._decrement(x, y, ws)
            else:
                ws.discard_top()

    def _decrement(self, x: int, v: int, ws: WorkSet) -> None:
        self.est[v] -= 1
        self.parent[v] = x
        self.stats.decrements += 1

        was_light = not self.heavy[v]
        self._check_heavy(v)
        if was_light:
            self._scan(v, ws)
        else:
            self.scan_drop[v] += 1
            if self.scan_drop[v] >= self.step:
                self._scan(v, ws)

        self.pending_drop[v] += 1
        if self.pending_drop[v] >= self.step:
            self.pending_drop[v] = 0
            slot = self._slot_of(v)
            for y in self.graph.in_adj[v]:
                self._move(y, v, slot)
                self._check_light(y, ws)

    def _scan(self, u: int, ws: WorkSet) -> None:
        self.scan_drop[u] = 0
        self.stats.record_iscan(u, 0)
        for y in self.fn_members(u):
            self._move(u, y, self._slot_of(y))
            ws.push(u, y)
        self._check_light(u, ws)

    def _check_heavy(self, u: int) -> None:
        if self._counting and not self.heavy[u] and self.fn_size(u) >= self.gamma:
            self.heavy[u] = True
            self.scan_drop[u] = 0
            logger.debug(f"vertex {u} turned heavy at estimate {self.est[u]}")

    def _check_light(self, u: int, ws: WorkSet) -> None:
        if self.heavy[u] and 2 * self.fn_size(u) <= self.gamma:
            self.heavy[u] = False
            logger.debug(f"vertex {u} turned light at estimate {self.est[u]}")
            self._scan(u, ws)

    def lazy_dist(self, v: int) -> Distance:
        e = self.est[v]
        return math.inf if e > self.depth_limit else e

    def dist(self, v: int) -> Distance:
        """Exact distance when it is short, the lazy estimate otherwise."""
        return min(self.exact.dist(v), self.lazy_dist(v))

    def path(self, t: int) -> List[int]:
        """
        A source-to-``t`` path whose length is at most :meth:`dist`.

        Raises:
            UnreachableError: If ``t`` is unreachable
        """
        if self.exact.dist(t) != math.inf:
            return self.exact.path(t)
        if self.lazy_dist(t) == math.inf:
            raise UnreachableError(f"Vertex {t} is not reachable")
        path = [t]
        while path[-1] != self.source:
            p = self.parent[path[-1]]
            assert p is not None
            path.append(p)
        path.reverse()
        return path

    def __repr__(self) -> str:
        return f"WarmupTree(n={self.n}, eps={self.eps}, gamma={self.gamma}, m={self.graph.m})"
