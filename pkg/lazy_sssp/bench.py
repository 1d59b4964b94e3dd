"""
Instrumented benchmarks over generated update scripts.

Each repetition replays one generated script and records wall time together
with the algorithm's work counters. Repetitions are independent and can be
spread over worker processes; results come back in submission order.
"""

import csv
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, Iterator, List, Sequence, TextIO, Tuple

from lazy_sssp.config import EngineConfig
from lazy_sssp.gadgets import gen_kcycle, gen_omv3, random_omv3, random_partitioned_graph
from lazy_sssp.graph import UpdateScript
from lazy_sssp.replay import run_script
from lazy_sssp.script import dense_script

logger = logging.getLogger(__name__)

CSV_COLUMNS = (
    "n",
    "m_final",
    "eps",
    "algo",
    "wall_ns",
    "decrements",
    "workset_inserts",
    "iscan_total",
)


class Generator(Enum):
    """Script families the bench can generate."""

    DENSE = "dense"  # Every ordered pair once, unit weights
    KCYCLE = "kcycle"  # k-cycle gadget over a random 3-partitioned graph
    OMV3 = "omv3"  # OMv3 gadget over a random matrix

    def script(self, n: int, seed: int) -> UpdateScript:
        if self is Generator.DENSE:
            return dense_script(n, seed)
        if self is Generator.KCYCLE:
            g, partition = random_partitioned_graph(n, 3, 0.5, seed)
            return gen_kcycle(g, 3, partition)
        matrix, queries = random_omv3(n, 0.5, seed)
        return gen_omv3(matrix, queries)


@dataclass
class BenchRecord:
    """
    One benchmark repetition.

    Attributes:
        n: Vertex count of the replayed script
        m_final: Edge count after the last insertion
        eps: Approximation parameter
        algo: Algorithm label
        wall_ns: Replay wall time
        decrements: Estimate decrements
        workset_inserts: WorkSet pushes
        iscan_total: Level scans over all vertices and levels
        per_i_scans: Level scans by level; not written to CSV
        relaxations: ES-tree edge relaxations; not written to CSV
    """

    n: int
    m_final: int
    eps: float
    algo: str
    wall_ns: int
    decrements: int
    workset_inserts: int
    iscan_total: int
    per_i_scans: List[int] = field(default_factory=list)
    relaxations: int = 0

    def __post_init__(self):
        for name in ("n", "m_final", "wall_ns", "decrements", "workset_inserts", "iscan_total"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative, got {getattr(self, name)}")

    @property
    def work(self) -> int:
        return self.decrements + self.workset_inserts + self.iscan_total + self.relaxations

    def to_row(self) -> List[str]:
        return [
            str(self.n),
            str(self.m_final),
            f"{self.eps:g}",
            self.algo,
            str(self.wall_ns),
            str(self.decrements),
            str(self.workset_inserts),
            str(self.iscan_total),
        ]


def _bench_one(task: Tuple[str, int, int, Dict[str, Any]]) -> BenchRecord:
    generator, size, seed, config_data = task
    config = EngineConfig.from_dict(config_data)
    script = Generator(generator).script(size, seed)
    result = run_script(script, config)
    stats = result.stats
    return BenchRecord(
        n=script.n,
        m_final=result.m_final,
        eps=config.eps,
        algo=config.label,
        wall_ns=result.wall_ns,
        decrements=stats.decrements,
        workset_inserts=stats.workset_inserts,
        iscan_total=stats.iscan_total,
        per_i_scans=stats.per_i_scans(),
        relaxations=stats.relaxations,
    )


def run_bench(
    generator: str,
    sizes: Sequence[int],
    config: EngineConfig,
    reps: int = 1,
    workers: int = 1,
) -> Iterator[BenchRecord]:
    """
    Benchmark ``reps`` generated scripts per size.

    Repetition ``r`` of every size uses seed ``config.seed + r``, so the
    counter columns are reproducible.

    Args:
        generator: ``dense``, ``kcycle`` or ``omv3``
        sizes: Generator size parameters
        config: Algorithm and parameters
        reps: Repetitions per size
        workers: Worker processes; 1 runs in-process

    Yields:
        Records ordered by size, then repetition
    """
    family = Generator(generator)
    tasks = [
        (family.value, size, config.seed + rep, config.to_dict())
        for size in sizes
        for rep in range(reps)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for record in pool.map(_bench_one, tasks):
                logger.info(f"bench {family.value} n={record.n}: work={record.work}")
                yield record
        return
    for task in tasks:
        record = _bench_one(task)
        logger.info(f"bench {family.value} n={record.n}: work={record.work}")
        yield record


def write_csv(records: Iterable[BenchRecord], out: TextIO) -> int:
    """Write the fixed-schema CSV; returns the number of data rows."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    count = 0
    for record in records:
        writer.writerow(record.to_row())
        count += 1
    return count


def loglog_slope(records: Sequence[BenchRecord], column: str = "work") -> float:
    """
    Least-squares slope of ``log(column)`` against ``log(n)``.

    Args:
        records: Bench records spanning at least two sizes
        column: A counter column, ``wall_ns`` or ``work``

    Raises:
        ImportError: If numpy is not installed
        ValueError: With fewer than two distinct sizes or a zero counter
    """
    try:
        import numpy as np
    except ImportError:
        raise ImportError(
            "numpy is required for slope fitting. Install with: pip install lazy-sssp[bench]"
        )
    points = [(r.n, getattr(r, column)) for r in records]
    if len({n for n, _ in points}) < 2:
        raise ValueError("Slope fitting needs at least two distinct sizes")
    if any(value <= 0 for _, value in points):
        raise ValueError(f"Column {column} has non-positive values")
    xs = np.log([n for n, _ in points])
    ys = np.log([value for _, value in points])
    slope, _intercept = np.polyfit(xs, ys, 1)
    return float(slope)

