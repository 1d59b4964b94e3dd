"""
Graph model for incremental shortest-path maintenance.

This module provides the dynamic weighted digraph shared by every algorithm,
the update-event dataclasses, and the parsed form of an update script with its
optional expected answers.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Tuple, Union

from lazy_sssp.exceptions import (
    SelfLoopError,
    VertexRangeError,
    WeightRangeError,
)

Distance = Union[int, float]
"""An integer distance, or ``math.inf`` for unreachable vertices."""


def floor_multiple(x: int, y: int) -> int:
    """
    Return the largest multiple of ``y`` that is at most ``x``.

    Args:
        x: Any integer, negative values included
        y: Positive modulus

    Returns:
        The largest ``k * y <= x``

    Raises:
        ValueError: If ``y`` is not positive

    Examples:
        >>> floor_multiple(7, 4)
        4
        >>> floor_multiple(-1, 4)
        -4
    """
    if y < 1:
        raise ValueError(f"floor_multiple needs a positive modulus, got {y}")
    return (x // y) * y


class InsertKind(Enum):
    """Which case an insertion fell into."""

    NEW = "new"
    RELAXED = "relaxed"
    NOOP = "noop"


@dataclass(frozen=True)
class InsertOutcome:
    """
    Result of :meth:`DynGraph.insert_or_relax`.

    Attributes:
        kind: New edge, weight decrease, or no-op
        old_weight: Previous weight for ``RELAXED`` and ``NOOP`` outcomes
    """

    kind: InsertKind
    old_weight: Optional[int] = None

    @property
    def changed(self) -> bool:
        return self.kind is not InsertKind.NOOP


class DynGraph:
    """
    Weighted digraph under edge insertions and weight decreases.

    At most one edge is stored per ordered pair and it always carries the
    minimum weight ever inserted for that pair. Self-loops are rejected.

    Attributes:
        n: Number of vertices, fixed for the lifetime of the graph
        source: Source vertex of the shortest-path problem
        out_adj: Per-vertex mapping head -> weight
        in_adj: Per-vertex mapping tail -> weight, mirroring ``out_adj``
        m: Current number of stored edges

    Examples:
        >>> g = DynGraph(3)
        >>> g.insert_or_relax(0, 1, 3).kind
        <InsertKind.NEW: 'new'>
        >>> g.insert_or_relax(0, 1, 2).old_weight
        3
    """

    def __init__(self, n: int, source: int = 0):
        if n < 1:
            raise VertexRangeError(f"Graph needs at least one vertex, got n={n}")
        self.n = n
        self.out_adj: List[Dict[int, int]] = [{} for _ in range(n)]
        self.in_adj: List[Dict[int, int]] = [{} for _ in range(n)]
        self.m = 0
        self.check_vertex(source)
        self.source = source

    def check_vertex(self, v: int) -> None:
        """Raise :class:`VertexRangeError` unless ``0 <= v < n``."""
        if not 0 <= v < self.n:
            raise VertexRangeError(f"Vertex {v} outside [0, {self.n})")

    def insert_or_relax(self, u: int, v: int, w: int = 1) -> InsertOutcome:
        """
        Insert edge ``(u, v)`` or lower its weight.

        Args:
            u: Tail vertex
            v: Head vertex
            w: Positive integer weight

        Returns:
            The outcome; ``m`` grows only for ``NEW``

        Raises:
            SelfLoopError: If ``u == v``
            VertexRangeError: If an id is out of range
            WeightRangeError: If ``w < 1``
        """
        self.check_vertex(u)
        self.check_vertex(v)
        if u == v:
            raise SelfLoopError(f"Self-loop on vertex {u} rejected")
        if w < 1:
            raise WeightRangeError(f"Edge weight must be >= 1, got {w}")

        old = self.out_adj[u].get(v)
        if old is None:
            self.out_adj[u][v] = w
            self.in_adj[v][u] = w
            self.m += 1
            return InsertOutcome(InsertKind.NEW)
        if w >= old:
            return InsertOutcome(InsertKind.NOOP, old)
        self.out_adj[u][v] = w
        self.in_adj[v][u] = w
        return InsertOutcome(InsertKind.RELAXED, old)

    def weight(self, u: int, v: int) -> Optional[int]:
        """Weight of ``(u, v)``, or None when the edge is absent."""
        return self.out_adj[u].get(v)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.out_adj[u]

    def edges(self) -> Iterator[Tuple[int, int, int]]:
        """Iterate ``(u, v, w)`` in tail order, then insertion order."""
        for u, heads in enumerate(self.out_adj):
            for v, w in heads.items():
                yield u, v, w

    def max_weight(self) -> int:
        return max((w for _, _, w in self.edges()), default=1)

    def path_weight(self, path: List[int]) -> Distance:
        """
        Total weight of a vertex sequence, or ``math.inf`` if an edge is missing.
        """
        total = 0
        for a, b in zip(path, path[1:]):
            w = self.out_adj[a].get(b)
            if w is None:
                return math.inf
            total += w
        return total

    def copy(self) -> "DynGraph":
        g = DynGraph(self.n, self.source)
        for u, v, w in self.edges():
            g.insert_or_relax(u, v, w)
        return g

    def __len__(self) -> int:
        return self.m

    def __repr__(self) -> str:
        return f"DynGraph(n={self.n}, m={self.m}, source={self.source})"


@dataclass(frozen=True)
class Insert:
    """
    Edge insertion or weight decrease.

    Attributes:
        u: Tail vertex
        v: Head vertex
        w: Edge weight, at least 1
    """

    u: int
    v: int
    w: int = 1

    def __post_init__(self):
        """Validate the event after initialization."""
        if self.u < 0 or self.v < 0:
            raise VertexRangeError(f"Negative vertex id in insert ({self.u}, {self.v})")
        if self.u == self.v:
            raise SelfLoopError(f"Self-loop on vertex {self.u} rejected")
        if self.w < 1:
            raise WeightRangeError(f"Edge weight must be >= 1, got {self.w}")

    def vertices(self) -> Tuple[int, ...]:
        return (self.u, self.v)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "insert", "u": self.u, "v": self.v, "w": self.w}


@dataclass(frozen=True)
class DistQuery:
    """Distance query for target ``t``."""

    t: int

    def __post_init__(self):
        if self.t < 0:
            raise VertexRangeError(f"Negative vertex id in query: {self.t}")

    def vertices(self) -> Tuple[int, ...]:
        return (self.t,)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "dist", "t": self.t}


@dataclass(frozen=True)
class PathQuery:
    """Path query for target ``t``."""

    t: int

    def __post_init__(self):
        if self.t < 0:
            raise VertexRangeError(f"Negative vertex id in query: {self.t}")

    def vertices(self) -> Tuple[int, ...]:
        return (self.t,)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "path", "t": self.t}


UpdateEvent = Union[Insert, DistQuery, PathQuery]


def event_from_dict(data: Dict[str, Any]) -> UpdateEvent:
    """Create an event from its dictionary representation."""
    kind = data.get("kind")
    if kind == "insert":
        return Insert(int(data["u"]), int(data["v"]), int(data.get("w", 1)))
    if kind == "dist":
        return DistQuery(int(data["t"]))
    if kind == "path":
        return PathQuery(int(data["t"]))
    raise ValueError(f"Unknown event kind: {kind!r}")


@dataclass(frozen=True)
class DistAnswer:
    """Answer to a distance query: ``d <t> <value|inf>``."""

    t: int
    value: Distance


@dataclass(frozen=True)
class PathAnswer:
    """Answer to a path query: ``P <t> <k> <v0> ... <vk>``."""

    t: int
    path: Tuple[int, ...]


@dataclass(frozen=True)
class ThresholdAnswer:
    """
    Expectation for a gadget query: ``e <t> <threshold> <0|1>``.

    With ``hit`` the exact distance equals ``threshold``; otherwise it is
    strictly larger.
    """

    t: int
    threshold: int
    hit: bool

    def accepts_exact(self, value: Distance) -> bool:
        return value == self.threshold if self.hit else value > self.threshold


Answer = Union[DistAnswer, PathAnswer, ThresholdAnswer]


@dataclass
class UpdateScript:
    """
    A parsed update script.

    Attributes:
        n: Vertex count
        source: Source vertex
        events: Ordered insert and query events
        expected: Optional expected answers, one per query event

    Examples:
        >>> s = UpdateScript(3, 0, [Insert(0, 1), DistQuery(1)])
        >>> s.query_count
        1
    """

    n: int
    source: int = 0
    events: List[UpdateEvent] = field(default_factory=list)
    expected: Optional[List[Answer]] = None

    def __post_init__(self):
        """Validate every vertex id against ``n``."""
        if self.n < 1:
            raise VertexRangeError(f"Script needs at least one vertex, got n={self.n}")
        if not 0 <= self.source < self.n:
            raise VertexRangeError(f"Source {self.source} outside [0, {self.n})")
        for index, event in enumerate(self.events):
            for v in event.vertices():
                if v >= self.n:
                    raise VertexRangeError(
                        f"Event {index} uses vertex {v} outside [0, {self.n})"
                    )

    @property
    def query_count(self) -> int:
        return sum(1 for e in self.events if not isinstance(e, Insert))

    @property
    def insert_count(self) -> int:
        return sum(1 for e in self.events if isinstance(e, Insert))

    def max_weight(self) -> int:
        return max((e.w for e in self.events if isinstance(e, Insert)), default=1)

    def final_graph(self) -> DynGraph:
        """Graph after applying every insertion."""
        g = DynGraph(self.n, self.source)
        for event in self.events:
            if isinstance(event, Insert):
                g.insert_or_relax(event.u, event.v, event.w)
        return g

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "source": self.source,
            "events": [e.to_dict() for e in self.events],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "UpdateScript":
        return cls(
            n=int(data["n"]),
            source=int(data.get("source", 0)),
            events=[event_from_dict(d) for d in data.get("events", [])],
        )

    def __repr__(self) -> str:
        return (
            f"UpdateScript(n={self.n}, source={self.source}, "
            f"inserts={self.insert_count}, queries={self.query_count})"
        )
