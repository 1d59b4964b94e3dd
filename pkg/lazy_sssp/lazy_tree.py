"""
Lazy Even-Shiloach tree for one distance band.

A :class:`LazyTree` maintains estimates ``est[v] >= d(s, v)`` that are within
an additive ``eps * tau`` of the truth for vertices whose distance lies in
``[tau, 2 * tau)``. Each vertex ``u`` keeps its out-neighbours in a cache
indexed by the estimate they had when ``u`` last looked at them. Only the
suffix of that cache starting at ``CacheIndex(u)`` (the forward neighbourhood
``FN(u)``) is rescanned, and only when ``est[u]`` crosses a multiple of
``2 ** h[u]``. The heaviness level ``h[u]`` grows with the size of the cache
suffix, so vertices with many nearby out-neighbours rescan less often.

Out-neighbours that fall out of ``FN(u)`` are reported back through the
``expire`` lists: ``u`` is registered at ``expire[v][CacheIndex(u)]`` and is
notified when ``est[v]`` drops below that index.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Set, Tuple

from lazy_sssp.exceptions import UnreachableError
from lazy_sssp.graph import Distance, DynGraph, floor_multiple
from lazy_sssp.slot_tree import SlotTree
from lazy_sssp.stats import ScanStats

logger = logging.getLogger(__name__)


def weight_class(w: int) -> int:
    """Class ``j`` with ``w`` in ``(2**j, 2**(j+1)]``; weight 1 is class -1."""
    return (w - 1).bit_length() - 1


@dataclass(frozen=True)
class LazyTreeParams:
    """
    Parameters of one band tree.

    Attributes:
        n: Vertex count
        tau: Band threshold, a power of two
        eps: Approximation parameter in (0, 1]
        depth_limit: Largest finite estimate; ``depth_limit + 1`` means unreached
        weighted: Count only light edges per heaviness level and scan heavy
            edges periodically
        test_constant: Replace the threshold units with this constant and half
            of it; production trees leave it unset

    Examples:
        >>> p = LazyTreeParams.for_band(16, tau=4, eps=1.0)
        >>> p.threshold_hi(1)
        192
        >>> p.max_level
        0
    """

    n: int
    tau: int
    eps: float
    depth_limit: int
    weighted: bool = False
    test_constant: Optional[float] = None
    n_pad: int = field(init=False)
    logn: int = field(init=False)
    hi_unit: float = field(init=False)
    lo_unit: float = field(init=False)
    max_level: int = field(init=False)

    def __post_init__(self):
        if not 0 < self.eps <= 1:
            raise ValueError(f"eps must lie in (0, 1], got {self.eps}")
        if self.tau < 1 or self.tau & (self.tau - 1):
            raise ValueError(f"tau must be a power of two, got {self.tau}")
        n_pad = 2
        while n_pad < self.n:
            n_pad <<= 1
        logn = n_pad.bit_length() - 1
        if self.test_constant is not None:
            hi_unit = float(self.test_constant)
        else:
            hi_unit = 12 * n_pad * logn / (self.eps * self.tau)
        object.__setattr__(self, "n_pad", n_pad)
        object.__setattr__(self, "logn", logn)
        object.__setattr__(self, "hi_unit", hi_unit)
        object.__setattr__(self, "lo_unit", hi_unit / 2)

        top = 0
        while top < logn and self.threshold_hi(top + 1) <= self.n - 1:
            top += 1
        object.__setattr__(self, "max_level", top)

    @classmethod
    def for_band(
        cls, n: int, tau: int, eps: float, test_constant: Optional[float] = None
    ) -> "LazyTreeParams":
        """Unweighted band ``[tau, 2 * tau)`` with ``depth_limit = ceil(2 * tau * (1 + eps))``."""
        return cls(
            n=n,
            tau=tau,
            eps=eps,
            depth_limit=math.ceil(2 * tau * (1 + eps)),
            test_constant=test_constant,
        )

    @property
    def tau_max(self) -> int:
        return self.depth_limit

    def threshold_hi(self, level: int) -> int:
        return math.ceil(((1 << level) - 1) * self.hi_unit)

    def threshold_lo(self, level: int) -> int:
        return math.ceil(((1 << level) - 1) * self.lo_unit)

    def scan_period(self, wclass: int) -> int:
        """Estimate period at which heavy edges of a weight class are rescanned."""
        if wclass < 0:
            return 1
        return max(1, math.floor(self.eps * (1 << wclass)))


class WorkSet:
    """
    LIFO set of edges whose guard must be rechecked.

    Pushing an edge that is already present is a no-op.
    """

    __slots__ = ("_stack", "_members", "_stats")

    def __init__(self, stats: ScanStats):
        self._stack: List[Tuple[int, int]] = []
        self._members: Set[Tuple[int, int]] = set()
        self._stats = stats

    def push(self, x: int, y: int) -> None:
        pair = (x, y)
        if pair in self._members:
            return
        self._stack.append(pair)
        self._members.add(pair)
        self._stats.workset_inserts += 1

    def top(self) -> Tuple[int, int]:
        return self._stack[-1]

    def discard_top(self) -> None:
        self._members.discard(self._stack.pop())

    def __len__(self) -> int:
        return len(self._stack)

    def __bool__(self) -> bool:
        return bool(self._stack)


class LazyTree:
    """
    Band tree maintaining approximate distances from ``source``.

    Attributes:
        params: Band parameters
        est: Per-vertex estimate; ``sentinel`` marks unreached vertices
        h: Per-vertex heaviness level
        weights: Per-vertex out-edge weights as seen by this tree
        cache: ``cache[u][slot]`` maps out-neighbour to weight
        cache_pos: ``cache_pos[u][v]`` is the slot holding ``v`` in ``cache[u]``
        expire: ``expire[v][i]`` holds every ``u`` with ``v`` in ``FN(u)`` and
            ``CacheIndex(u) == i``
        parent: Per-vertex ``(tail, weight)`` of the edge that last lowered it
        stats: Work counters

    Examples:
        >>> t = LazyTree(3, 0, LazyTreeParams.for_band(3, tau=1, eps=0.5))
        >>> t.insert_edge(0, 1, 1)
        >>> t.dist(1), t.dist(2)
        (1, inf)
    """

    def __init__(
        self,
        n: int,
        source: int,
        params: LazyTreeParams,
        stats: Optional[ScanStats] = None,
    ):
        self.n = n
        self.source = source
        self.params = params
        self.stats = stats if stats is not None else ScanStats()
        self.sentinel = params.depth_limit + 1

        self.est: List[int] = [self.sentinel] * n
        self.est[source] = 0
        self.h: List[int] = [0] * n
        self.weights: List[Dict[int, int]] = [{} for _ in range(n)]
        self.cache: List[Dict[int, Dict[int, int]]] = [{} for _ in range(n)]
        self.cache_pos: List[Dict[int, int]] = [{} for _ in range(n)]
        self.expire: List[Dict[int, Set[int]]] = [{} for _ in range(n)]
        self.expire_pos: List[Dict[int, int]] = [{} for _ in range(n)]
        self.parent: List[Optional[Tuple[int, int]]] = [None] * n
        self._trees: List[Optional[List[SlotTree]]] = [None] * n
        self._heavy: List[Dict[int, Dict[int, int]]] = [{} for _ in range(n)]

    # Derived notions

    def cache_index(self, u: int, level: Optional[int] = None) -> int:
        """``floor_multiple(est[u] - 1, 2 ** level)``, at ``h[u]`` by default."""
        lvl = self.h[u] if level is None else level
        return floor_multiple(self.est[u] - 1, 1 << lvl)

    def eligible(self, w: int, level: int) -> bool:
        """Whether an edge of weight ``w`` counts towards heaviness ``level``."""
        return not self.params.weighted or w < (1 << level)

    def in_fn(self, u: int, v: int) -> bool:
        return self.cache_pos[u][v] >= self.cache_index(u) and self.eligible(
            self.weights[u][v], self.h[u]
        )

    def fn_members(self, u: int) -> List[Tuple[int, int]]:
        """Snapshot of ``FN(u)`` as ``(vertex, weight)`` pairs in slot order."""
        level = self.h[u]
        return [
            (v, w)
            for v, w in self._entries_from(u, self.cache_index(u))
            if self.eligible(w, level)
        ]

    def _slot_of(self, v: int) -> int:
        return min(self.est[v], self.params.depth_limit)

    def _slots_from(self, u: int, start: int) -> List[int]:
        cache = self.cache[u]
        start = max(start, 0)
        span = self.params.depth_limit - start + 1
        if span <= 0:
            return []
        if len(cache) < span:
            return sorted(s for s in cache if s >= start)
        return [s for s in range(start, self.params.depth_limit + 1) if s in cache]

    def _entries_from(self, u: int, start: int) -> List[Tuple[int, int]]:
        cache = self.cache[u]
        return [(v, w) for s in self._slots_from(u, start) for v, w in cache[s].items()]

    # Suffix counts

    def suffix_count(self, u: int, level: int, start: int, record: bool = True) -> int:
        """Entries of ``cache[u]`` at slots ``>= start`` counted at ``level``."""
        if record:
            self.stats.suffix_queries += 1
        trees = self._trees[u]
        if trees is not None and 1 <= level <= self.params.max_level:
            tree = trees[0] if not self.params.weighted else trees[level - 1]
            return tree.suffix(start)
        return sum(1 for _, w in self._entries_from(u, start) if self.eligible(w, level))

    def _argmax(self, u: int, threshold: Callable[[int], int], upto: int) -> int:
        for level in range(min(upto, self.params.max_level), 0, -1):
            if self.suffix_count(u, level, self.cache_index(u, level)) >= threshold(level):
                return level
        return 0

    def _count(self, u: int, w: int, slot: int, delta: int) -> None:
        trees = self._trees[u]
        if trees is None:
            return
        if not self.params.weighted:
            trees[0].add(slot, delta)
            return
        for level in range(1, self.params.max_level + 1):
            if w < (1 << level):
                trees[level - 1].add(slot, delta)

    # Cache and expire bookkeeping

    def _place(self, u: int, v: int, w: int, slot: int) -> None:
        if self._trees[u] is None and self.params.max_level >= 1:
            count = 1 if not self.params.weighted else self.params.max_level
            self._trees[u] = [SlotTree(self.params.depth_limit + 1) for _ in range(count)]
        self.cache[u].setdefault(slot, {})[v] = w
        self.cache_pos[u][v] = slot
        self._count(u, w, slot, 1)
        if self.params.weighted:
            self._heavy[u].setdefault(weight_class(w), {})[v] = w

    def _reweight(self, u: int, v: int, old: int, w: int) -> None:
        self.weights[u][v] = w
        slot = self.cache_pos[u][v]
        self.cache[u][slot][v] = w
        if not self.params.weighted:
            return
        trees = self._trees[u]
        if trees is not None:
            for level in range(1, self.params.max_level + 1):
                if w < (1 << level) <= old:
                    trees[level - 1].add(slot, 1)
        bucket = self._heavy[u][weight_class(old)]
        del bucket[v]
        if not bucket:
            del self._heavy[u][weight_class(old)]
        self._heavy[u].setdefault(weight_class(w), {})[v] = w

    def _move(self, u: int, v: int, slot: int) -> None:
        old = self.cache_pos[u][v]
        if slot >= old:
            return
        bucket = self.cache[u][old]
        w = bucket.pop(v)
        if not bucket:
            del self.cache[u][old]
        self.cache[u].setdefault(slot, {})[v] = w
        self.cache_pos[u][v] = slot
        self._count(u, w, old, -1)
        self._count(u, w, slot, 1)

    def _refresh(self, u: int, v: int) -> None:
        self._move(u, v, self._slot_of(v))

    def _register(self, u: int, v: int) -> None:
        index = self.cache_index(u)
        pos = self.expire_pos[v].get(u)
        if pos == index:
            return
        if pos is not None:
            self._drop_expire(v, u, pos)
        self.expire[v].setdefault(index, set()).add(u)
        self.expire_pos[v][u] = index

    def _unregister(self, u: int, v: int) -> None:
        pos = self.expire_pos[v].pop(u, None)
        if pos is not None:
            bucket = self.expire[v][pos]
            bucket.discard(u)
            if not bucket:
                del self.expire[v][pos]

    def _drop_expire(self, v: int, u: int, pos: int) -> None:
        bucket = self.expire[v][pos]
        bucket.discard(u)
        if not bucket:
            del self.expire[v][pos]
        del self.expire_pos[v][u]

    def _sync_expire(self, u: int, v: int) -> None:
        if self.in_fn(u, v):
            self._register(u, v)
        else:
            self._unregister(u, v)

    # Updates

    def insert_edge(self, u: int, v: int, w: int = 1) -> None:
        """
        Insert edge ``(u, v)`` or lower its weight, then restore all estimates.

        Args:
            u: Tail vertex
            v: Head vertex
            w: Weight in this tree's (possibly scaled) units
        """
        ws = WorkSet(self.stats)
        old = self.weights[u].get(v)
        if old is not None:
            if w >= old:
                return
            self._reweight(u, v, old, w)
        else:
            self.weights[u][v] = w
            self._place(u, v, w, self._slot_of(v))
        self._sync_expire(u, v)
        self._increase_heaviness(u, ws)
        if self.est[v] > self.est[u] + w:
            ws.push(u, v)
        self._drain(ws)

    def _drain(self, ws: WorkSet) -> None:
        est = self.est
        weights = self.weights
        while ws:
            x, y = ws.top()
            if est[y] > est[x] + weights[x][y]:
                self._decrement(x, y, ws)
            else:
                ws.discard_top()

    def _decrement(self, x: int, v: int, ws: WorkSet) -> None:
        w = self.weights[x][v]
        assert self.est[v] > self.est[x] + w, "decrement guard violated"
        self.est[v] -= 1
        e = self.est[v]
        self.parent[v] = (x, w)
        self.stats.decrements += 1

        if e % (1 << self.h[v]) == 0:
            self._increase_heaviness(v, ws)
            self._scan_forward(v, ws)
        if self.params.weighted:
            self._scan_heavy(v, e, ws)
        self._process_expire(v, e, ws)

    def _scan_forward(self, v: int, ws: WorkSet) -> None:
        members = self.fn_members(v)
        self.stats.record_iscan(v, self.h[v])
        index = self.cache_index(v)
        shrank = False
        for y, _ in members:
            self._refresh(v, y)
            if self.cache_pos[v][y] >= index:
                self._register(v, y)
            else:
                self._unregister(v, y)
                shrank = True
            ws.push(v, y)
        if shrank:
            self._decrease_heaviness(v, ws)

    def _scan_heavy(self, v: int, e: int, ws: WorkSet) -> None:
        light_below = 1 << self.h[v]
        for wclass, edges in self._heavy[v].items():
            if e % self.params.scan_period(wclass):
                continue
            for y, wy in edges.items():
                if wy < light_below:
                    continue
                self.stats.heavy_scans += 1
                if self.est[y] > e + wy:
                    ws.push(v, y)

    def _process_expire(self, v: int, e: int, ws: WorkSet) -> None:
        bucket = self.expire[v].pop(e + 1, None)
        if not bucket:
            return
        for u in sorted(bucket):
            self.expire_pos[v].pop(u, None)
            if self.cache_index(u) != e + 1:
                self._sync_expire(u, v)
                continue
            self._refresh(u, v)
            self._decrease_heaviness(u, ws)

    def _increase_heaviness(self, u: int, ws: WorkSet) -> None:
        top = self._argmax(u, self.params.threshold_hi, self.params.max_level)
        if top > self.h[u]:
            self._relevel(u, top, ws)

    def _decrease_heaviness(self, u: int, ws: WorkSet) -> None:
        level = self.h[u]
        if level == 0:
            return
        params = self.params
        if self.suffix_count(u, level, self.cache_index(u)) >= params.threshold_lo(level):
            return
        self._relevel(u, self._argmax(u, params.threshold_lo, params.max_level), ws)

    def _relevel(self, u: int, top: int, ws: WorkSet) -> None:
        """
        Refresh the cache suffix covering levels up to ``max(top, h[u])`` and
        settle ``h[u]`` on the highest level ``<= top`` meeting ``threshold_lo``.

        ``top`` may lie above ``h[u]`` on the way down as well: suffix counts are
        not monotone across levels, so the current level can fail its lower
        threshold while a wider one still meets its own.
        """
        params = self.params
        old = self.h[u]
        span = max(top, old)
        entries = self._entries_from(u, self.cache_index(u, span))
        self.stats.record_iscan(u, span)
        for y, _ in entries:
            self._refresh(u, y)
            self._unregister(u, y)

        self.h[u] = self._argmax(u, params.threshold_lo, top)
        logger.debug(f"tau={params.tau}: h({u}) {old} -> {self.h[u]} (candidate {top})")
        for y, _ in self.fn_members(u):
            self._register(u, y)
        if self.h[u] < old:
            for y, _ in entries:
                ws.push(u, y)

    # Queries

    def dist(self, v: int) -> Distance:
        """Estimate for ``v``; the sentinel reads as ``math.inf``."""
        e = self.est[v]
        return math.inf if e > self.params.depth_limit else e

    def path(self, t: int) -> List[int]:
        """
        Follow parent pointers from ``t`` back to the source.

        Raises:
            UnreachableError: If ``t`` has no finite estimate
        """
        if self.est[t] > self.params.depth_limit:
            raise UnreachableError(f"Vertex {t} unreached in band tau={self.params.tau}")
        path = [t]
        while path[-1] != self.source:
            link = self.parent[path[-1]]
            assert link is not None
            path.append(link[0])
        path.reverse()
        return path

    def snapshot_graph(self) -> DynGraph:
        """The edge set this tree has seen, with its own weights."""
        g = DynGraph(self.n, self.source)
        for u, heads in enumerate(self.weights):
            for v, w in heads.items():
                g.insert_or_relax(u, v, w)
        return g

    def __repr__(self) -> str:
        return (
            f"LazyTree(tau={self.params.tau}, depth_limit={self.params.depth_limit}, "
            f"weighted={self.params.weighted}, max_level={self.params.max_level})"
        )
