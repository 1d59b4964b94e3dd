"""Shared fixtures and helpers for the lazy-sssp test suite."""

import math
from typing import Callable, List, Sequence

import pytest
from hypothesis import HealthCheck, settings

from lazy_sssp.graph import Distance, DynGraph, UpdateScript
from lazy_sssp.script import random_script

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def build_graph(n: int, edges: Sequence[tuple], source: int = 0) -> DynGraph:
    g = DynGraph(n, source)
    for edge in edges:
        u, v = edge[0], edge[1]
        w = edge[2] if len(edge) > 2 else 1
        g.insert_or_relax(u, v, w)
    return g


def within_stretch(value: Distance, exact: Distance, eps: float) -> bool:
    if exact == math.inf:
        return value == math.inf
    return exact <= value <= (1 + eps) * exact + 1e-9


def assert_stretch(values: List[Distance], exact: List[Distance], eps: float) -> None:
    for t, (value, d) in enumerate(zip(values, exact)):
        assert within_stretch(value, d, eps), f"vertex {t}: estimate {value}, distance {d}"


@pytest.fixture
def path_graph() -> DynGraph:
    """0 -> 1 -> 2 -> 3 with unit weights."""
    return build_graph(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def diamond() -> DynGraph:
    """Two routes to vertex 3: 0-1-3 of weight 5 and 0-2-3 of weight 3."""
    return build_graph(4, [(0, 1, 1), (1, 3, 4), (0, 2, 2), (2, 3, 1)])


@pytest.fixture
def script_factory() -> Callable[..., UpdateScript]:
    """Seeded random scripts; keyword arguments go to :func:`random_script`."""

    def make(n: int = 12, events: int = 80, seed: int = 0, **kwargs) -> UpdateScript:
        return random_script(n, events, seed, **kwargs)

    return make
