"""
Incremental Even-Shiloach tree with a depth bound.

Distances only decrease under insertions, so an insertion that improves the
head's distance starts a wavefront from that head and relaxes outward. The
wavefront is ordered by a bucket queue keyed on tentative distance, and any
tentative distance above the depth bound is dropped.
"""

import heapq
import logging
import math
from typing import Dict, List, Optional, Tuple

from lazy_sssp.exceptions import UnreachableError
from lazy_sssp.graph import Distance, DynGraph, InsertOutcome
from lazy_sssp.stats import ScanStats

logger = logging.getLogger(__name__)


class BucketQueue:
    """
    Monotone bucket queue over integer priorities.

    Buckets are created on demand and a heap of occupied priorities locates
    the minimum, so sparse priority ranges cost nothing.

    Examples:
        >>> q = BucketQueue()
        >>> q.push(3, 7)
        >>> q.push(1, 9)
        >>> q.pop()
        (1, 9)
    """

    def __init__(self) -> None:
        self._buckets: Dict[int, List[int]] = {}
        self._keys: List[int] = []
        self._size = 0

    def push(self, priority: int, item: int) -> None:
        bucket = self._buckets.get(priority)
        if bucket is None:
            bucket = self._buckets[priority] = []
            heapq.heappush(self._keys, priority)
        bucket.append(item)
        self._size += 1

    def pop(self) -> Tuple[int, int]:
        """Remove and return ``(priority, item)`` with the smallest priority."""
        priority = self._keys[0]
        bucket = self._buckets[priority]
        item = bucket.pop()
        if not bucket:
            del self._buckets[priority]
            heapq.heappop(self._keys)
        self._size -= 1
        return priority, item

    def __len__(self) -> int:
        return self._size

    def __bool__(self) -> bool:
        return self._size > 0


class EsTree:
    """
    Exact single-source distances truncated at a depth bound.

    Attributes:
        n: Vertex count
        source: Source vertex
        depth_bound: Largest distance kept; ``None`` keeps everything
        dist: Per-vertex distance, ``math.inf`` beyond the bound
        parent: Per-vertex tree parent

    Examples:
        >>> g = DynGraph(3)
        >>> t = EsTree(3, 0, depth_bound=1)
        >>> g.insert_or_relax(0, 1, 1).kind.value
        'new'
        >>> t.insert(g, 0, 1, 1)
        >>> g.insert_or_relax(1, 2, 1).kind.value
        'new'
        >>> t.insert(g, 1, 2, 1)
        >>> t.dist(2)
        inf
    """

    def __init__(
        self,
        n: int,
        source: int = 0,
        depth_bound: Optional[int] = None,
        stats: Optional[ScanStats] = None,
    ):
        self.n = n
        self.source = source
        self.depth_bound = depth_bound
        self.stats = stats if stats is not None else ScanStats()
        self._dist: List[Distance] = [math.inf] * n
        self._dist[source] = 0
        self.parent: List[Optional[int]] = [None] * n

    def _within(self, d: int) -> bool:
        return self.depth_bound is None or d <= self.depth_bound

    def insert(self, g: DynGraph, u: int, v: int, w: int) -> None:
        """
        Account for edge ``(u, v, w)``, which ``g`` must already contain.

        Work is proportional to the out-degrees of the vertices whose
        distance decreased.
        """
        dist = self._dist
        start = dist[u] + w
        if start >= dist[v] or not self._within(start):  # type: ignore[arg-type]
            return
        dist[v] = start
        self.parent[v] = u
        self.stats.decrements += 1
        self.stats.workset_inserts += 1

        queue = BucketQueue()
        queue.push(int(start), v)
        while queue:
            d, x = queue.pop()
            if d != dist[x]:
                continue
            for y, wy in g.out_adj[x].items():
                self.stats.relaxations += 1
                nd = d + wy
                if nd < dist[y] and self._within(nd):
                    dist[y] = nd
                    self.parent[y] = x
                    self.stats.decrements += 1
                    self.stats.workset_inserts += 1
                    queue.push(nd, y)

    def dist(self, v: int) -> Distance:
        return self._dist[v]

    def distances(self) -> List[Distance]:
        return list(self._dist)

    def path(self, t: int) -> List[int]:
        """
        Tree path from the source to ``t``.

        Raises:
            UnreachableError: If ``t`` has no finite distance
        """
        if self._dist[t] == math.inf:
            raise UnreachableError(f"Vertex {t} is not reachable within depth {self.depth_bound}")
        path = [t]
        while path[-1] != self.source:
            p = self.parent[path[-1]]
            assert p is not None
            path.append(p)
        path.reverse()
        return path

    def __repr__(self) -> str:
        reached = sum(1 for d in self._dist if d != math.inf)
        return f"EsTree(n={self.n}, depth_bound={self.depth_bound}, reached={reached})"


class ExactEngine:
    """
    Exact incremental distances: a graph paired with one :class:`EsTree`.

    Args:
        n: Vertex count
        source: Source vertex
        depth: Depth bound; ``None`` keeps every distance

    Examples:
        >>> e = ExactEngine(3)
        >>> _ = e.insert(0, 1, 2)
        >>> _ = e.insert(1, 2)
        >>> e.dist(2), e.path(2)
        (3, [0, 1, 2])
    """

    def __init__(self, n: int, source: int = 0, depth: Optional[int] = None):
        self.graph = DynGraph(n, source)
        self.tree = EsTree(n, source, depth_bound=depth)

    @property
    def stats(self) -> ScanStats:
        return self.tree.stats

    def insert(self, u: int, v: int, w: int = 1) -> InsertOutcome:
        outcome = self.graph.insert_or_relax(u, v, w)
        if outcome.changed:
            self.tree.insert(self.graph, u, v, w)
        return outcome

    def dist(self, t: int) -> Distance:
        self.graph.check_vertex(t)
        return self.tree.dist(t)

    def path(self, t: int) -> List[int]:
        self.graph.check_vertex(t)
        return self.tree.path(t)

    def __repr__(self) -> str:
        return f"ExactEngine(n={self.graph.n}, m={self.graph.m}, depth={self.tree.depth_bound})"
