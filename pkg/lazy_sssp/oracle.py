"""
Ground-truth solvers used to check the engines.

Nothing here shares code with the incremental trees: distances come from a
plain heap-based Dijkstra run on a snapshot, and the gadget answers come from
direct enumeration.
"""

import math
from dataclasses import dataclass
from heapq import heappop, heappush
from itertools import count
from typing import List, Optional, Sequence

from lazy_sssp.exceptions import GadgetError, UnreachableError
from lazy_sssp.graph import Distance, DynGraph


@dataclass
class OracleResult:
    """
    Exact shortest-path tree.

    Attributes:
        source: Source vertex
        dist: Per-vertex distance, ``math.inf`` when unreachable
        parent: Per-vertex predecessor on a shortest path
    """

    source: int
    dist: List[Distance]
    parent: List[Optional[int]]

    def path(self, t: int) -> List[int]:
        if self.dist[t] == math.inf:
            raise UnreachableError(f"Vertex {t} is not reachable")
        path = [t]
        while path[-1] != self.source:
            p = self.parent[path[-1]]
            assert p is not None
            path.append(p)
        path.reverse()
        return path

    def is_fixpoint(self, g: DynGraph) -> bool:
        """True if no edge of ``g`` can still be relaxed."""
        return all(self.dist[v] <= self.dist[u] + w for u, v, w in g.edges())


def dijkstra(g: DynGraph, s: Optional[int] = None) -> OracleResult:
    """
    Exact distances from ``s`` (the graph's source by default).

    Examples:
        >>> g = DynGraph(3)
        >>> for u, v, w in [(0, 1, 1), (1, 2, 1), (0, 2, 3)]:
        ...     _ = g.insert_or_relax(u, v, w)
        >>> dijkstra(g).dist
        [0, 1, 2]
    """
    source = g.source if s is None else s
    dist: List[Distance] = [math.inf] * g.n
    parent: List[Optional[int]] = [None] * g.n
    dist[source] = 0
    c = count()
    fringe = [(0, next(c), source)]
    done = [False] * g.n
    while fringe:
        d, _, u = heappop(fringe)
        if done[u]:
            continue
        done[u] = True
        for v, w in g.out_adj[u].items():
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                parent[v] = u
                heappush(fringe, (nd, next(c), v))
    return OracleResult(source, dist, parent)


def truncated(dist: Sequence[Distance], depth: Optional[int]) -> List[Distance]:
    """Replace every distance above ``depth`` by ``math.inf``."""
    if depth is None:
        return list(dist)
    return [d if d <= depth else math.inf for d in dist]


def _check_partition(g: DynGraph, k: int, partition: Sequence[int]) -> None:
    if len(partition) != g.n:
        raise GadgetError(f"Partition covers {len(partition)} of {g.n} vertices")
    for v, part in enumerate(partition):
        if not 1 <= part <= k:
            raise GadgetError(f"Vertex {v} has part {part}, expected 1..{k}")


def brute_k_cycle(
    g: DynGraph, k: int, partition: Sequence[int], through: Optional[int] = None
) -> bool:
    """
    Whether ``g`` has a cycle ``v1 -> v2 -> ... -> vk -> v1`` with ``vi`` in part ``i``.

    Args:
        g: Directed graph
        k: Cycle length
        partition: ``partition[v]`` is the part of ``v``, in ``1..k``
        through: Restrict ``v1`` to this vertex

    Raises:
        GadgetError: If the partition is not total
    """
    _check_partition(g, k, partition)
    if through is not None:
        starts = [through] if partition[through] == 1 else []
    else:
        starts = [v for v in range(g.n) if partition[v] == 1]

    def extend(v: int, part: int, start: int) -> bool:
        if part == k:
            return start in g.out_adj[v]
        return any(
            partition[y] == part + 1 and extend(y, part + 1, start) for y in g.out_adj[v]
        )

    return any(extend(v, 1, v) for v in starts)


def brute_omv3(
    A: Sequence[Sequence[bool]],
    u: Sequence[bool],
    v: Sequence[bool],
    w: Sequence[bool],
    row: Optional[int] = None,
) -> bool:
    """
    Triple-loop evaluation of ``OR_{i,j,k} u[i] v[j] w[k] A[i][j] A[j][k] A[k][i]``.

    Args:
        A: Square boolean matrix
        u: Vector over the first coordinate
        v: Vector over the second coordinate
        w: Vector over the third coordinate
        row: Restrict ``i`` to this index (0-based)

    Raises:
        GadgetError: On dimension mismatch
    """
    n = len(A)
    if any(len(r) != n for r in A) or not len(u) == len(v) == len(w) == n:
        raise GadgetError("OMv3 matrix and vectors must share one dimension")
    rows = range(n) if row is None else [row]
    for i in rows:
        if not u[i]:
            continue
        for j in range(n):
            if not (v[j] and A[i][j]):
                continue
            for c in range(n):
                if w[c] and A[j][c] and A[c][i]:
                    return True
    return False
