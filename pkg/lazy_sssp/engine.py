"""
Approximate single-source shortest paths under edge insertions.

This module contains the SsspEngine class, which keeps a family of band trees
and answers distance and path queries with the minimum over bands.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, List, Optional

from lazy_sssp.exceptions import UnreachableError, WeightRangeError
from lazy_sssp.graph import Distance, DynGraph, InsertOutcome
from lazy_sssp.lazy_tree import LazyTree, LazyTreeParams
from lazy_sssp.stats import ScanStats

logger = logging.getLogger(__name__)


def ceil_log2(x: int) -> int:
    """``ceil(log2(x))`` for positive integers, with ``ceil_log2(1) == 0``."""
    return (x - 1).bit_length()


@dataclass
class Band:
    """
    One band tree and the weight scaling it runs under.

    Attributes:
        index: Position in the engine's band list, used for tie-breaks
        tau_hop: Hop-count threshold (the band threshold for unweighted engines)
        tau_dep: Weighted-distance threshold, None for unweighted engines
        alpha: Weight scale; edges enter the tree as ``ceil(w / alpha)``
        tree: The band tree
    """

    index: int
    tau_hop: int
    tau_dep: Optional[int]
    alpha: int
    tree: LazyTree

    def scale(self, w: int) -> int:
        return -(-w // self.alpha)

    def insert(self, u: int, v: int, w: int) -> None:
        self.tree.insert_edge(u, v, self.scale(w))

    def estimate(self, v: int) -> Distance:
        d = self.tree.dist(v)
        return d if d == math.inf else d * self.alpha

    @property
    def eps_effective(self) -> float:
        """Rounding slack actually granted by the integral ``alpha``."""
        if self.tau_dep is None:
            return 0.0
        return self.alpha * self.tau_hop / self.tau_dep

    @property
    def label(self) -> str:
        if self.tau_dep is None:
            return f"tau={self.tau_hop}"
        return (
            f"hop={self.tau_hop},dep={self.tau_dep},alpha={self.alpha},"
            f"eps'={self.eps_effective:.3g}"
        )


@dataclass(frozen=True)
class Estimate:
    """
    A distance estimate and the band that produced it.

    Attributes:
        value: Estimate scaled back to original weights, ``math.inf`` if unreachable
        band: Index of the winning band, None for the source or unreachable targets
    """

    value: Distance
    band: Optional[int] = None


class SsspEngine:
    """
    Incremental ``(1 + eps)``-approximate single-source shortest paths.

    With ``max_weight == 1`` the engine keeps one band tree per threshold
    ``tau = 1, 2, 4, ...``. Otherwise it keeps one tree per pair of a hop
    threshold and a distance threshold, each on a copy of the graph whose
    weights are rounded up to multiples of ``alpha`` and divided by it.

    Attributes:
        graph: The current graph
        eps: Approximation parameter
        max_weight: Largest accepted edge weight
        bands: Band trees in query tie-break order

    Examples:
        >>> engine = SsspEngine(3, eps=0.5)
        >>> _ = engine.insert(0, 1)
        >>> _ = engine.insert(1, 2)
        >>> engine.dist(2), engine.path(2)
        (2, [0, 1, 2])

        >>> with SsspEngine.session(4, eps=0.25, max_weight=8) as engine:
        ...     _ = engine.insert(0, 3, 5)
        ...     engine.dist(3) <= 5 * 1.25
        True
    """

    def __init__(
        self,
        n: int,
        source: int = 0,
        eps: float = 0.1,
        max_weight: int = 1,
        test_constant: Optional[float] = None,
        parallel: bool = False,
        workers: Optional[int] = None,
    ):
        """
        Initialize the engine with an empty graph.

        Args:
            n: Vertex count
            source: Source vertex
            eps: Approximation parameter in (0, 1]
            max_weight: Aspect ratio W; insertions above it are rejected
            test_constant: Threshold override for exercising heaviness on
                small graphs
            parallel: Update bands from a thread pool
            workers: Pool size for parallel updates
        """
        if not 0 < eps <= 1:
            raise ValueError(f"eps must lie in (0, 1], got {eps}")
        if max_weight < 1:
            raise WeightRangeError(f"max_weight must be >= 1, got {max_weight}")
        self.graph = DynGraph(n, source)
        self.eps = eps
        self.max_weight = max_weight
        self.test_constant = test_constant
        self.bands: List[Band] = (
            self._unweighted_bands() if max_weight == 1 else self._weighted_bands()
        )
        self._pool: Optional[ThreadPoolExecutor] = (
            ThreadPoolExecutor(max_workers=workers, thread_name_prefix="band")
            if parallel
            else None
        )
        if test_constant is not None:
            logger.warning(f"threshold override {test_constant} in effect")
        logger.debug(f"engine n={n} W={max_weight} eps={eps}: {len(self.bands)} bands")
        for band in self.bands:
            logger.debug(f"band {band.index}: {band.label}")

    @classmethod
    @contextmanager
    def session(cls, *args, **kwargs) -> Iterator["SsspEngine"]:
        """
        Create an engine as a context manager; the thread pool is released on exit.

        Examples:
            >>> with SsspEngine.session(8, eps=0.5) as engine:
            ...     _ = engine.insert(0, 1)
        """
        engine = cls(*args, **kwargs)
        try:
            yield engine
        finally:
            engine.close()
            logger.info(
                f"engine session completed: m={engine.graph.m}, "
                f"decrements={engine.stats.decrements}"
            )

    def close(self) -> None:
        if self._pool is not None:
            self._pool.shutdown(wait=True)
            self._pool = None

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def source(self) -> int:
        return self.graph.source

    @property
    def weighted(self) -> bool:
        return self.max_weight > 1

    def _unweighted_bands(self) -> List[Band]:
        n = self.graph.n
        bands = []
        for k in range(max(1, ceil_log2(n))):
            params = LazyTreeParams.for_band(n, 1 << k, self.eps, self.test_constant)
            tree = LazyTree(n, self.graph.source, params)
            bands.append(Band(len(bands), 1 << k, None, 1, tree))
        return bands

    def _weighted_bands(self) -> List[Band]:
        n = self.graph.n
        eps_int = self.eps / 4
        bands = []
        for i in range(max(1, ceil_log2(n))):
            tau_hop = 1 << i
            for j in range(i, max(i + 1, ceil_log2(n * self.max_weight))):
                tau_dep = 1 << j
                alpha = max(1, math.floor(eps_int * tau_dep / tau_hop))
                depth = max(
                    math.ceil(8 * tau_hop / self.eps),
                    math.ceil((1 + eps_int) * (2 * tau_dep / alpha + 2 * tau_hop)),
                )
                params = LazyTreeParams(
                    n=n,
                    tau=tau_hop,
                    eps=eps_int,
                    depth_limit=depth,
                    weighted=True,
                    test_constant=self.test_constant,
                )
                tree = LazyTree(n, self.graph.source, params)
                bands.append(Band(len(bands), tau_hop, tau_dep, alpha, tree))
        return bands

    def insert(self, u: int, v: int, w: int = 1) -> InsertOutcome:
        """
        Insert edge ``(u, v)`` or lower its weight.

        Args:
            u: Tail vertex
            v: Head vertex
            w: Weight in ``[1, max_weight]``

        Returns:
            The graph-level outcome; band trees are only touched on a change

        Raises:
            WeightRangeError: If ``w`` is outside ``[1, max_weight]``
        """
        if not 1 <= w <= self.max_weight:
            raise WeightRangeError(f"Edge weight {w} outside [1, {self.max_weight}]")
        outcome = self.graph.insert_or_relax(u, v, w)
        if not outcome.changed:
            return outcome
        if self._pool is not None:
            for future in [self._pool.submit(b.insert, u, v, w) for b in self.bands]:
                future.result()
        else:
            for band in self.bands:
                band.insert(u, v, w)
        return outcome

    def estimate(self, t: int) -> Estimate:
        """Minimum over bands, ties going to the lowest band index."""
        self.graph.check_vertex(t)
        if t == self.graph.source:
            return Estimate(0)
        best = Estimate(math.inf)
        for band in self.bands:
            value = band.estimate(t)
            if value < best.value:
                best = Estimate(value, band.index)
        return best

    def dist(self, t: int) -> Distance:
        """Approximate distance; never below the true distance."""
        return self.estimate(t).value

    def path(self, t: int) -> List[int]:
        """
        A current-graph path from the source to ``t`` whose weight is at most ``dist(t)``.

        Raises:
            UnreachableError: If ``t`` is unreachable
        """
        est = self.estimate(t)
        if est.value == math.inf:
            raise UnreachableError(f"Vertex {t} is not reachable from {self.graph.source}")
        if est.band is None:
            return [t]
        return self.bands[est.band].tree.path(t)

    @property
    def stats(self) -> ScanStats:
        """Counters summed over all bands."""
        total = ScanStats()
        for band in self.bands:
            total.merge(band.tree.stats)
        return total

    def __len__(self) -> int:
        return len(self.bands)

    def __repr__(self) -> str:
        return (
            f"SsspEngine(n={self.graph.n}, m={self.graph.m}, eps={self.eps}, "
            f"W={self.max_weight}, bands={len(self.bands)})"
        )
