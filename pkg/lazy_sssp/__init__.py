"""
lazy-sssp: incremental approximate single-source shortest paths

Maintains (1 + eps)-approximate distances from a fixed source under edge
insertions and weight decreases, using a family of lazy Even-Shiloach trees
that rescan an out-neighbourhood only after the vertex's estimate has fallen
far enough. Exact baselines, brute-force oracles and reduction-gadget
generators are included for verification and benchmarking.
"""

from lazy_sssp.config import Algorithm, ConfigLoader, EngineConfig
from lazy_sssp.engine import Estimate, SsspEngine
from lazy_sssp.es_tree import EsTree, ExactEngine
from lazy_sssp.exceptions import (
    ConfigError,
    GadgetError,
    GraphError,
    ScriptParseError,
    SelfLoopError,
    SsspError,
    UnreachableError,
    VerificationError,
    VertexRangeError,
    WeightRangeError,
)
from lazy_sssp.gadgets import gen_kcycle, gen_omv3
from lazy_sssp.graph import (
    DistAnswer,
    DistQuery,
    DynGraph,
    Insert,
    InsertKind,
    InsertOutcome,
    PathAnswer,
    PathQuery,
    ThresholdAnswer,
    UpdateScript,
    floor_multiple,
)
from lazy_sssp.lazy_tree import LazyTree, LazyTreeParams
from lazy_sssp.oracle import brute_k_cycle, brute_omv3, dijkstra
from lazy_sssp.replay import run_script, verify_script
from lazy_sssp.script import ScriptSerializer
from lazy_sssp.stats import ScanStats
from lazy_sssp.warmup import WarmupTree

__version__ = "0.1.0"
__author__ = "lazy-sssp Contributors"
__license__ = "MIT"

__all__ = [
    "Algorithm",
    "ConfigError",
    "ConfigLoader",
    "DistAnswer",
    "DistQuery",
    "DynGraph",
    "EngineConfig",
    "EsTree",
    "Estimate",
    "ExactEngine",
    "GadgetError",
    "GraphError",
    "Insert",
    "InsertKind",
    "InsertOutcome",
    "LazyTree",
    "LazyTreeParams",
    "PathAnswer",
    "PathQuery",
    "ScanStats",
    "ScriptParseError",
    "ScriptSerializer",
    "SelfLoopError",
    "SsspEngine",
    "SsspError",
    "ThresholdAnswer",
    "UnreachableError",
    "UpdateScript",
    "VerificationError",
    "VertexRangeError",
    "WarmupTree",
    "WeightRangeError",
    "brute_k_cycle",
    "brute_omv3",
    "dijkstra",
    "floor_multiple",
    "gen_kcycle",
    "gen_omv3",
    "run_script",
    "verify_script",
]
