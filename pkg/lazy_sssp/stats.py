"""
Work counters shared by the tree implementations.

The counters are part of the public output: bench rows and budget tests read
them directly.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple


@dataclass
class ScanStats:
    """
    Instrumentation for one tree or an aggregate of trees.

    Attributes:
        iscans: Number of i-scans per ``(vertex, level)``
        decrements: Unit estimate decrements
        workset_inserts: Successful insertions into a WorkSet
        suffix_queries: Suffix-count queries answered by slot trees
        heavy_scans: Edges examined by the weighted periodic scans
        relaxations: Out-edge relaxations performed by ES trees
    """

    iscans: Counter = field(default_factory=Counter)
    decrements: int = 0
    workset_inserts: int = 0
    suffix_queries: int = 0
    heavy_scans: int = 0
    relaxations: int = 0

    def record_iscan(self, u: int, level: int) -> None:
        self.iscans[(u, level)] += 1

    @property
    def iscan_total(self) -> int:
        return sum(self.iscans.values())

    def per_i_scans(self) -> List[int]:
        """Total i-scans per level, indexed by level."""
        if not self.iscans:
            return []
        top = max(level for _, level in self.iscans)
        totals = [0] * (top + 1)
        for (_, level), count in self.iscans.items():
            totals[level] += count
        return totals

    def max_iscans(self) -> Dict[int, Tuple[int, int]]:
        """For each level, the busiest vertex and its i-scan count."""
        best: Dict[int, Tuple[int, int]] = {}
        for (u, level), count in self.iscans.items():
            if level not in best or count > best[level][1]:
                best[level] = (u, count)
        return best

    @property
    def work(self) -> int:
        """Aggregate work measure used by the scaling benchmark."""
        return self.decrements + self.workset_inserts + self.iscan_total + self.relaxations

    def merge(self, other: "ScanStats") -> "ScanStats":
        """Add ``other``'s counters into this one and return self."""
        self.iscans.update(other.iscans)
        self.decrements += other.decrements
        self.workset_inserts += other.workset_inserts
        self.suffix_queries += other.suffix_queries
        self.heavy_scans += other.heavy_scans
        self.relaxations += other.relaxations
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "decrements": self.decrements,
            "workset_inserts": self.workset_inserts,
            "iscan_total": self.iscan_total,
            "per_i_scans": self.per_i_scans(),
            "suffix_queries": self.suffix_queries,
            "heavy_scans": self.heavy_scans,
            "relaxations": self.relaxations,
        }
