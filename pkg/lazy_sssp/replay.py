"""
Replaying update scripts through an algorithm, with optional verification.

:func:`run_script` feeds a script's events to one algorithm and collects the
answers. :func:`verify_script` replays in lockstep with an exact Dijkstra
recomputation, checks every vertex after every event and every query
against the sidecar, and stops at the first mismatch.
"""

import logging
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Union

from lazy_sssp.config import Algorithm, EngineConfig
from lazy_sssp.engine import SsspEngine
from lazy_sssp.es_tree import ExactEngine
from lazy_sssp.exceptions import ConfigError, UnreachableError, VerificationError, WeightRangeError
from lazy_sssp.graph import (
    Answer,
    DistAnswer,
    DistQuery,
    Distance,
    DynGraph,
    Insert,
    InsertOutcome,
    PathAnswer,
    PathQuery,
    ThresholdAnswer,
    UpdateScript,
)
from lazy_sssp.invariants import LazyTreeChecker, WarmupChecker
from lazy_sssp.oracle import OracleResult, dijkstra, truncated
from lazy_sssp.script import format_distance, random_script
from lazy_sssp.stats import ScanStats
from lazy_sssp.warmup import WarmupTree

logger = logging.getLogger(__name__)


class OracleEngine:
    """Recomputes Dijkstra on the current graph whenever it changed since the last query."""

    def __init__(self, n: int, source: int = 0):
        self.graph = DynGraph(n, source)
        self.stats = ScanStats()
        self._result: Optional[OracleResult] = None

    def insert(self, u: int, v: int, w: int = 1) -> InsertOutcome:
        outcome = self.graph.insert_or_relax(u, v, w)
        if outcome.changed:
            self._result = None
        return outcome

    def _current(self) -> OracleResult:
        if self._result is None:
            self._result = dijkstra(self.graph)
        return self._result

    def dist(self, t: int) -> Distance:
        self.graph.check_vertex(t)
        return self._current().dist[t]

    def path(self, t: int) -> List[int]:
        self.graph.check_vertex(t)
        return self._current().path(t)


class WarmupEngine:
    """:class:`WarmupTree` behind the common insert interface; rejects non-unit weights."""

    def __init__(self, n: int, source: int = 0, eps: float = 0.1, gamma: Optional[int] = None):
        self.tree = WarmupTree(n, source, eps=eps, gamma=gamma)

    @property
    def graph(self) -> DynGraph:
        return self.tree.graph

    @property
    def stats(self) -> ScanStats:
        return self.tree.stats

    def insert(self, u: int, v: int, w: int = 1) -> None:
        if w != 1:
            raise WeightRangeError(f"Warm-up tree takes unit weights only, got {w}")
        self.tree.graph.check_vertex(u)
        self.tree.graph.check_vertex(v)
        self.tree.insert(u, v)

    def dist(self, t: int) -> Distance:
        self.graph.check_vertex(t)
        return self.tree.dist(t)

    def path(self, t: int) -> List[int]:
        self.graph.check_vertex(t)
        return self.tree.path(t)


Engine = Union[SsspEngine, ExactEngine, WarmupEngine, OracleEngine]


def make_algorithm(config: EngineConfig, n: int, source: int = 0, max_weight: int = 1) -> Engine:
    """
    Build the algorithm a config names.

    Args:
        config: Algorithm and parameters
        n: Vertex count
        source: Source vertex
        max_weight: Largest weight the script inserts

    Raises:
        ConfigError: If the warm-up tree is asked to handle weights above 1
    """
    algo = config.algo
    if algo is Algorithm.LAZY:
        return SsspEngine(
            n,
            source,
            eps=config.eps,
            max_weight=max_weight,
            test_constant=config.test_constants,
            parallel=config.parallel,
        )
    if algo is Algorithm.ES:
        return ExactEngine(n, source, depth=config.depth)
    if algo is Algorithm.WARMUP:
        if max_weight > 1:
            raise ConfigError(f"Warm-up algorithm needs unit weights, script has W={max_weight}")
        gamma = None if config.test_constants is None else math.ceil(config.test_constants)
        return WarmupEngine(n, source, eps=config.eps, gamma=gamma)
    return OracleEngine(n, source)


def _close(algo: Engine) -> None:
    if isinstance(algo, SsspEngine):
        algo.close()


def _answer(algo: Engine, event: Union[DistQuery, PathQuery]) -> Answer:
    if isinstance(event, DistQuery):
        return DistAnswer(event.t, algo.dist(event.t))
    try:
        return PathAnswer(event.t, tuple(algo.path(event.t)))
    except UnreachableError:
        return PathAnswer(event.t, ())


@dataclass
class ReplayResult:
    """
    Answers and counters from one replay.

    Attributes:
        answers: One answer per query, in order
        stats: Work counters of the algorithm
        wall_ns: Wall-clock time spent applying events
        m_final: Edge count after the last insertion
    """

    answers: List[Answer]
    stats: ScanStats
    wall_ns: int
    m_final: int


def run_script(script: UpdateScript, config: EngineConfig) -> ReplayResult:
    """
    Replay a script and answer its queries.

    Unreachable path queries answer with an empty path.

    Examples:
        >>> s = UpdateScript(3, 0, [Insert(0, 1), Insert(1, 2), DistQuery(2)])
        >>> run_script(s, EngineConfig(algo="es")).answers
        [DistAnswer(t=2, value=2)]
    """
    algo = make_algorithm(config, script.n, script.source, script.max_weight())
    answers: List[Answer] = []
    start = time.perf_counter_ns()
    try:
        for event in script.events:
            if isinstance(event, Insert):
                algo.insert(event.u, event.v, event.w)
            else:
                answers.append(_answer(algo, event))
    finally:
        _close(algo)
    wall_ns = max(1, time.perf_counter_ns() - start)
    logger.info(
        f"replayed {len(script.events)} events with {config.label}: "
        f"{len(answers)} answers in {wall_ns / 1e6:.1f} ms"
    )
    return ReplayResult(answers, algo.stats, wall_ns, algo.graph.m)


@dataclass
class Mismatch:
    """
    First disagreement found by :func:`verify_script`.

    Attributes:
        event: Index of the event after which it was found, -1 for whole-script checks
        vertex: Vertex concerned, -1 when none applies
        expected: Reference value, rendered
        actual: Algorithm value, rendered
        kind: ``distance``, ``path``, ``sidecar`` or ``invariant``
    """

    event: int
    vertex: int
    expected: str
    actual: str
    kind: str

    def __str__(self) -> str:
        return (
            f"{self.kind} mismatch after event {self.event} at vertex {self.vertex}: "
            f"expected {self.expected}, got {self.actual}"
        )


@dataclass
class VerificationReport:
    """
    Outcome of a lockstep verification.

    Attributes:
        ok: True when no mismatch was found
        events: Events replayed
        queries: Queries answered
        checks: Individual comparisons made
        mismatch: First mismatch, if any
        invariant_dump: Rendered checker output at the point of failure
    """

    algo: str
    ok: bool = True
    events: int = 0
    queries: int = 0
    checks: int = 0
    mismatch: Optional[Mismatch] = None
    invariant_dump: List[str] = field(default_factory=list)

    def raise_for_mismatch(self) -> None:
        """
        Raises:
            VerificationError: If the report holds a mismatch
        """
        if not self.ok:
            raise VerificationError(str(self.mismatch), report=self)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["mismatch"] = None if self.mismatch is None else asdict(self.mismatch)
        return data


def _stretch_ok(value: Distance, exact: Distance, eps: float) -> bool:
    if exact == math.inf:
        return value == math.inf
    return exact <= value <= (1 + eps) * exact + 1e-9


class _Verifier:
    """Lockstep state for one verification run."""

    def __init__(self, script: UpdateScript, config: EngineConfig, sample_every: int):
        self.script = script
        self.config = config
        self.sample_every = max(1, sample_every)
        self.algo = make_algorithm(config, script.n, script.source, script.max_weight())
        self.graph = DynGraph(script.n, script.source)
        self.report = VerificationReport(algo=config.label)
        self.bounded = not config.algo.approximate or config.test_constants is None
        self._exact: Optional[List[Distance]] = None
        self._checkers: List[Union[LazyTreeChecker, WarmupChecker]] = []
        if isinstance(self.algo, SsspEngine):
            self._checkers = [LazyTreeChecker(band.tree) for band in self.algo.bands]
        elif isinstance(self.algo, WarmupEngine):
            self._checkers = [WarmupChecker(self.algo.tree)]

    def exact(self) -> List[Distance]:
        if self._exact is None:
            self._exact = dijkstra(self.graph).dist
        return self._exact

    def reference(self) -> List[Distance]:
        """What the algorithm must report exactly, for the exact algorithms."""
        if self.config.algo is Algorithm.ES:
            return truncated(self.exact(), self.config.depth)
        return self.exact()

    def agrees(self, value: Distance, t: int) -> bool:
        self.report.checks += 1
        if self.config.algo.approximate:
            if not self.bounded:
                return value >= self.exact()[t]
            return _stretch_ok(value, self.exact()[t], self.config.eps)
        return value == self.reference()[t]

    def fail(self, event: int, vertex: int, expected: Any, actual: Any, kind: str) -> None:
        if isinstance(expected, (int, float)):
            expected = format_distance(expected)
        if isinstance(actual, (int, float)):
            actual = format_distance(actual)
        self.report.ok = False
        self.report.mismatch = Mismatch(event, vertex, str(expected), str(actual), kind)
        self.report.invariant_dump = [str(v) for c in self._checkers for v in c.check()]
        logger.warning(f"verification failed: {self.report.mismatch}")

    def check_all(self, index: int) -> bool:
        n = self.script.n
        for t in range(n):
            value = self.algo.dist(t)
            if not self.agrees(value, t):
                expected = self.exact()[t] if self.config.algo.approximate else self.reference()[t]
                self.fail(index, t, expected, value, "distance")
                return False
        if self.config.check_invariants:
            exact = self.exact()
            for checker in self._checkers:
                if isinstance(checker, WarmupChecker):
                    violations = checker.check(exact)
                else:
                    violations = checker.check()
                if violations:
                    first = violations[0]
                    self.fail(index, first.vertex, first.check, first.detail, "invariant")
                    return False
        return True

    def check_path(self, index: int, t: int, path: Sequence[int]) -> bool:
        self.report.checks += 1
        value = self.algo.dist(t)
        if not path:
            if self.exact()[t] != math.inf:
                self.fail(index, t, self.exact()[t], "empty path", "path")
                return False
            return True
        weight = self.graph.path_weight(list(path))
        if path[0] != self.script.source or path[-1] != t or weight == math.inf:
            self.fail(index, t, "a source-to-target path", list(path), "path")
            return False
        if weight > value:
            self.fail(index, t, f"weight <= {format_distance(value)}", weight, "path")
            return False
        return True

    def check_expected(self, index: int, answer: Answer, expected: Answer) -> bool:
        self.report.checks += 1
        eps = self.config.eps if self.config.algo.approximate else 0.0
        if expected.t != answer.t:
            self.fail(index, answer.t, f"query on {expected.t}", f"query on {answer.t}", "sidecar")
            return False
        t = answer.t
        if isinstance(expected, ThresholdAnswer):
            exact = self.exact()[t]
            if not expected.accepts_exact(exact):
                relation = "==" if expected.hit else ">"
                self.fail(index, t, f"{relation} {expected.threshold}", exact, "sidecar")
                return False
            value = self.algo.dist(t)
            upper = math.inf
            if expected.hit and self.bounded:
                upper = (1 + eps) * expected.threshold + 1e-9
            if not expected.threshold <= value <= upper:
                self.fail(index, t, f"threshold {expected.threshold}", value, "sidecar")
                return False
            return True
        if isinstance(expected, DistAnswer):
            value = answer.value if isinstance(answer, DistAnswer) else self.algo.dist(t)
            if not self.bounded and value >= expected.value:
                return True
            if not _stretch_ok(value, expected.value, eps):
                self.fail(index, t, expected.value, value, "sidecar")
                return False
            return True
        if not isinstance(answer, PathAnswer):
            self.fail(index, t, "a path answer", "a distance answer", "sidecar")
            return False
        reference = (
            self.graph.path_weight(list(expected.path)) if expected.path else math.inf
        )
        actual = self.graph.path_weight(list(answer.path)) if answer.path else math.inf
        if not self.bounded and actual >= reference:
            return True
        if not _stretch_ok(actual, reference, eps):
            self.fail(index, t, reference, actual, "sidecar")
            return False
        return True

    def run(self) -> VerificationReport:
        script = self.script
        report = self.report
        expected = script.expected
        query = 0
        try:
            if expected is not None and len(expected) != script.query_count:
                have = f"{len(expected)} answers"
                self.fail(-1, -1, f"{script.query_count} answers", have, "sidecar")
                return report
            for index, event in enumerate(script.events):
                report.events += 1
                if isinstance(event, Insert):
                    if self.graph.insert_or_relax(event.u, event.v, event.w).changed:
                        self._exact = None
                    self.algo.insert(event.u, event.v, event.w)
                else:
                    answer = _answer(self.algo, event)
                    report.queries += 1
                    if isinstance(answer, PathAnswer) and not self.check_path(
                        index, answer.t, answer.path
                    ):
                        return report
                    if expected is not None and not self.check_expected(
                        index, answer, expected[query]
                    ):
                        return report
                    query += 1
                if index % self.sample_every == 0 or index == len(script.events) - 1:
                    if not self.check_all(index):
                        return report
        finally:
            _close(self.algo)
        logger.info(
            f"verified {report.events} events, {report.queries} queries, "
            f"{report.checks} checks with {report.algo}"
        )
        return report


def verify_script(
    script: UpdateScript, config: EngineConfig, sample_every: int = 1
) -> VerificationReport:
    """
    Replay a script against an exact Dijkstra recomputation.

    After every ``sample_every``-th event (and after the last one) all vertices
    are compared: exact algorithms must match, approximate ones must lie in
    ``[d, (1 + eps) * d]``. Path answers must be valid current-graph paths
    whose weight is at most the reported distance. Sidecar answers are
    checked as they come; ``e`` lines are checked against the exact distance
    and bound the approximate answer.

    Args:
        script: Script, optionally with expected answers
        config: Algorithm under test
        sample_every: Full comparison period in events

    Returns:
        Report with the first mismatch, if any, and an invariant dump for the
        lazy and warm-up algorithms
    """
    return _Verifier(script, config, sample_every).run()


def fuzz_verify(
    config: EngineConfig,
    n: int,
    events: int,
    runs: int = 1,
    max_weight: int = 1,
    sample_every: int = 1,
) -> VerificationReport:
    """
    Verify ``runs`` random scripts seeded from ``config.seed`` onwards.

    Returns:
        The first failing report, or a combined report when every run passed
    """
    total = VerificationReport(algo=config.label)
    for run in range(runs):
        script = random_script(n, events, config.seed + run, max_weight=max_weight)
        report = verify_script(script, config, sample_every)
        if not report.ok:
            logger.warning(f"fuzz run {run} (seed {config.seed + run}) failed")
            return report
        total.events += report.events
        total.queries += report.queries
        total.checks += report.checks
    return total
