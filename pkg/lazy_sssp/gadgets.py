"""
Update-script generators for the k-cycle and OMv3 reduction gadgets.

Each generator returns an :class:`UpdateScript` whose queries have closed-form
thresholds: the exact distance equals the threshold exactly when the encoded
static problem has a witness for that query, and is strictly larger
otherwise. The expected bits are computed with the brute-force solvers in
:mod:`lazy_sssp.oracle`. All gadget edges have weight 1 and are emitted in
both directions.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from lazy_sssp.exceptions import GadgetError
from lazy_sssp.graph import (
    Answer,
    DistQuery,
    DynGraph,
    Insert,
    ThresholdAnswer,
    UpdateEvent,
    UpdateScript,
)
from lazy_sssp.oracle import brute_k_cycle, brute_omv3

logger = logging.getLogger(__name__)

BoolMatrix = List[List[bool]]
QueryTriple = Tuple[List[bool], List[bool], List[bool]]


def _both_ways(u: int, v: int) -> List[UpdateEvent]:
    return [Insert(u, v), Insert(v, u)]


@dataclass
class KCycleInstance:
    """
    Layered gadget for partitioned k-cycle detection.

    Vertex ids: each input vertex keeps its own id as its layer copy; the
    second copy of part-1 vertices, then the s-path, then the t-path follow.

    Attributes:
        g: Input digraph
        k: Cycle length
        partition: ``partition[v]`` is the part of ``v`` in ``1..k``
        firsts: Part-1 vertices in stage order
        copy: Second copy of each part-1 vertex
        s_path: ``s_path[i - 1]`` is ``s_i``
        t_path: ``t_path[i - 1]`` is ``t_i``
    """

    g: DynGraph
    k: int
    partition: List[int]
    firsts: List[int] = field(init=False)
    copy: Dict[int, int] = field(init=False)
    s_path: List[int] = field(init=False)
    t_path: List[int] = field(init=False)

    def __post_init__(self):
        if self.k < 3:
            raise GadgetError(f"k must be at least 3, got {self.k}")
        if len(self.partition) != self.g.n:
            raise GadgetError(f"Partition covers {len(self.partition)} of {self.g.n} vertices")
        if any(not 1 <= p <= self.k for p in self.partition):
            raise GadgetError(f"Partition values must lie in 1..{self.k}")
        self.firsts = [v for v in range(self.g.n) if self.partition[v] == 1]
        nxt = self.g.n
        self.copy = {}
        for v in self.firsts:
            self.copy[v] = nxt
            nxt += 1
        stages = len(self.firsts)
        self.s_path = list(range(nxt, nxt + stages))
        self.t_path = list(range(nxt + stages, nxt + 2 * stages))

    @property
    def stages(self) -> int:
        return len(self.firsts)

    @property
    def vertex_count(self) -> int:
        return self.g.n + 3 * self.stages

    @property
    def source(self) -> int:
        return self.s_path[0]

    @property
    def target(self) -> int:
        return self.t_path[0]

    def threshold(self, stage: int) -> int:
        """Distance from ``s_1`` to ``t_1`` at a stage whose vertex lies on a k-cycle."""
        return 2 * (self.stages - stage) + self.k + 2

    def static_edges(self) -> List[UpdateEvent]:
        out: List[UpdateEvent] = []
        for u, v, _ in self.g.edges():
            pu, pv = self.partition[u], self.partition[v]
            if pv == pu + 1:
                out.extend(_both_ways(u, v))
            elif pu == self.k and pv == 1:
                out.extend(_both_ways(u, self.copy[v]))
        for a, b in zip(self.s_path, self.s_path[1:]):
            out.extend(_both_ways(a, b))
        for a, b in zip(self.t_path, self.t_path[1:]):
            out.extend(_both_ways(b, a))
        return out

    def to_script(self) -> UpdateScript:
        events = self.static_edges()
        expected: List[Answer] = []
        n = self.stages
        for stage in range(1, n + 1):
            v = self.firsts[n - stage]
            events.extend(_both_ways(self.s_path[n - stage], v))
            events.extend(_both_ways(self.copy[v], self.t_path[n - stage]))
            events.append(DistQuery(self.target))
            hit = brute_k_cycle(self.g, self.k, self.partition, through=v)
            expected.append(ThresholdAnswer(self.target, self.threshold(stage), hit))
        logger.debug(
            f"k-cycle gadget k={self.k}: {self.vertex_count} vertices, "
            f"{len(events) - n} insertions, {n} queries"
        )
        return UpdateScript(
            n=max(1, self.vertex_count),
            source=self.source if n else 0,
            events=events,
            expected=expected,
        )


def gen_kcycle(g: DynGraph, k: int, partition: Sequence[int]) -> UpdateScript:
    """
    Script whose stage-``i`` query hits its threshold iff stage ``i``'s part-1
    vertex lies on a partition-respecting k-cycle.

    Raises:
        GadgetError: If ``k < 3`` or the partition is not total
    """
    return KCycleInstance(g, k, list(partition)).to_script()


@dataclass
class Omv3Instance:
    """
    Four-gadget construction for OMv3.

    Gadgets ``U``, ``V``, ``W`` and ``U2`` (the second copy of ``U``) each own
    vertices ``(i, j)`` for rows ``i = 1..n`` and copies ``j = 0..n``. Row
    chains ``(i, 1) - ... - (i, n)`` exist from the start; query ``l`` adds
    ``(i, 0) - (i, l)`` for every set bit ``i`` of its vector. Matrix edges join
    ``(i, n)`` of one gadget to ``(j, 0)`` of the next.

    Attributes:
        A: Square boolean matrix
        queries: Vector triples ``(u, v, w)``, at most ``n`` of them
    """

    A: BoolMatrix
    queries: List[QueryTriple]

    GADGETS = ("U", "V", "W", "U2")

    def __post_init__(self):
        n = len(self.A)
        if n < 1 or any(len(row) != n for row in self.A):
            raise GadgetError("OMv3 matrix must be square and non-empty")
        if len(self.queries) > n:
            raise GadgetError(f"At most {n} queries fit an n={n} gadget")
        for index, triple in enumerate(self.queries):
            if len(triple) != 3 or any(len(vec) != n for vec in triple):
                raise GadgetError(f"Query {index} must hold three vectors of length {n}")

    @property
    def n(self) -> int:
        return len(self.A)

    def node(self, gadget: str, i: int, j: int) -> int:
        """Vertex id of ``(i, j)`` in a gadget, with 1-based ``i``."""
        n = self.n
        return self.GADGETS.index(gadget) * n * (n + 1) + (i - 1) * (n + 1) + j

    def s(self, l: int, i: int) -> int:  # noqa: E741
        n = self.n
        return 4 * n * (n + 1) + (l - 1) * n + (i - 1)

    def t(self, l: int, i: int) -> int:  # noqa: E741
        n = self.n
        return 4 * n * (n + 1) + n * n + (l - 1) * n + (i - 1)

    @property
    def vertex_count(self) -> int:
        return 4 * self.n * (self.n + 1) + 2 * self.n * self.n

    @property
    def source(self) -> int:
        return self.s(self.n, self.n)

    @property
    def target(self) -> int:
        return self.t(self.n, self.n)

    def threshold(self, query: int, row: int) -> int:
        """Distance from ``s_{n,n}`` to ``t_{n,n}`` in round ``row`` of ``query`` with a witness."""
        n = self.n
        return 2 * (n - query) * n + 2 * (n - row + 1) + 3 + 4 * (n + 1 - query)

    def local_threshold(self, query: int) -> int:
        """Distance from ``(i, 0)`` in ``U`` to ``(i, n)`` in ``U2`` through a witness."""
        return 3 + 4 * (self.n + 1 - query)

    def static_edges(self) -> List[UpdateEvent]:
        n = self.n
        out: List[UpdateEvent] = []
        for gadget in self.GADGETS:
            for i in range(1, n + 1):
                for j in range(1, n):
                    out.extend(_both_ways(self.node(gadget, i, j), self.node(gadget, i, j + 1)))
        for left, right in zip(self.GADGETS, self.GADGETS[1:]):
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if self.A[i - 1][j - 1]:
                        out.extend(_both_ways(self.node(left, i, n), self.node(right, j, 0)))
        for path in (self.s, self.t):
            for l in range(1, n + 1):  # noqa: E741
                for i in range(1, n):
                    out.extend(_both_ways(path(l, i), path(l, i + 1)))
                if l < n:
                    out.extend(_both_ways(path(l, n), path(l + 1, 1)))
        return out

    def to_script(self) -> UpdateScript:
        n = self.n
        events = self.static_edges()
        expected: List[Answer] = []
        for q, (u, v, w) in enumerate(self.queries, start=1):
            for gadget, vec in (("U", u), ("U2", u), ("V", v), ("W", w)):
                for i in range(1, n + 1):
                    if vec[i - 1]:
                        events.extend(
                            _both_ways(self.node(gadget, i, 0), self.node(gadget, i, q))
                        )
            for a in range(1, n + 1):
                events.extend(_both_ways(self.s(q, a), self.node("U", a, 0)))
                events.extend(_both_ways(self.node("U2", a, n), self.t(q, a)))
                events.append(DistQuery(self.target))
                hit = brute_omv3(self.A, u, v, w, row=a - 1)
                expected.append(ThresholdAnswer(self.target, self.threshold(q, a), hit))
        logger.debug(
            f"OMv3 gadget n={n}: {self.vertex_count} vertices, {len(self.queries)} queries"
        )
        return UpdateScript(
            n=self.vertex_count, source=self.source, events=events, expected=expected
        )


def gen_omv3(A: Sequence[Sequence[bool]], queries: Sequence[QueryTriple]) -> UpdateScript:
    """
    Script whose round ``(l, a)`` query hits its threshold iff the OMv3 instance
    of query ``l`` has a triangle through row ``a``.

    Raises:
        GadgetError: On ragged or mismatched input
    """
    matrix = [[bool(x) for x in row] for row in A]
    triples = [
        ([bool(x) for x in u], [bool(x) for x in v], [bool(x) for x in w]) for u, v, w in queries
    ]
    return Omv3Instance(matrix, triples).to_script()


def random_partitioned_graph(
    n: int, k: int, density: float, seed: int
) -> Tuple[DynGraph, List[int]]:
    """
    Random digraph with a balanced ``k``-partition.

    Only edges between consecutive parts (and from part ``k`` back to part 1)
    are drawn, each with probability ``density``.
    """
    if k < 3:
        raise GadgetError(f"k must be at least 3, got {k}")
    rng = random.Random(seed)
    partition = [1 + v % k for v in range(n)]
    rng.shuffle(partition)
    g = DynGraph(max(1, n))
    for u in range(n):
        for v in range(n):
            if partition[v] == partition[u] % k + 1 and rng.random() < density:
                g.insert_or_relax(u, v, 1)
    return g, partition


def random_omv3(
    n: int, density: float, seed: int, queries: int = 0
) -> Tuple[BoolMatrix, List[QueryTriple]]:
    """
    Random matrix and query triples; ``queries`` defaults to ``n``.
    """
    rng = random.Random(seed)

    def bits() -> List[bool]:
        return [rng.random() < density for _ in range(n)]

    A = [bits() for _ in range(n)]
    triples = [(bits(), bits(), bits()) for _ in range(queries or n)]
    return A, triples
