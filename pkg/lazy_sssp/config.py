"""
Run configuration for the command-line front end.

An :class:`EngineConfig` selects the algorithm and its parameters. Values are
resolved in order: explicit command-line flags, then a JSON or YAML config
file, then ``SSSP_SEED`` from the environment for the seed, then defaults.
"""

import json
import logging
import os
from dataclasses import asdict, dataclass, fields
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Union

from lazy_sssp.exceptions import ConfigError

logger = logging.getLogger(__name__)

SEED_ENV = "SSSP_SEED"
_YAML_HINT = (
    "PyYAML is required for YAML configs. Install with: pip install lazy-sssp[serialization]"
)


class Algorithm(Enum):
    """Algorithms a script can be replayed through."""

    LAZY = "lazy"  # Band family of lazy trees
    ES = "es"  # Exact ES tree, optionally depth-bounded
    WARMUP = "warmup"  # Two-level tree, unit weights only
    ORACLE = "oracle"  # Dijkstra recomputed per query

    @property
    def approximate(self) -> bool:
        return self in (Algorithm.LAZY, Algorithm.WARMUP)


@dataclass
class EngineConfig:
    """
    Algorithm choice and parameters for one replay.

    Attributes:
        algo: Algorithm to run
        eps: Approximation parameter in (0, 1]
        depth: Depth bound for the ES tree, None for unbounded
        test_constants: Threshold override for the lazy and warm-up trees
        parallel: Update lazy bands from a thread pool
        check_invariants: Run the full-state checkers after every event in ``verify``
        seed: Seed for generated scripts

    Examples:
        >>> EngineConfig(algo="es", depth=4).algo
        <Algorithm.ES: 'es'>
    """

    algo: Algorithm = Algorithm.LAZY
    eps: float = 0.1
    depth: Optional[int] = None
    test_constants: Optional[float] = None
    parallel: bool = False
    check_invariants: bool = False
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.algo, Algorithm):
            try:
                self.algo = Algorithm(str(self.algo).lower())
            except ValueError:
                choices = ", ".join(a.value for a in Algorithm)
                raise ConfigError(f"Unknown algorithm {self.algo!r}; choose from {choices}")
        if not 0 < self.eps <= 1:
            raise ConfigError(f"eps must lie in (0, 1], got {self.eps}")
        if self.depth is not None and self.depth < 0:
            raise ConfigError(f"depth must be non-negative, got {self.depth}")
        if self.test_constants is not None and self.test_constants <= 0:
            raise ConfigError(f"test constants must be positive, got {self.test_constants}")

    @property
    def label(self) -> str:
        """Algorithm name as it appears in bench output."""
        if self.test_constants is None:
            return self.algo.value
        return f"{self.algo.value}[test-constants={self.test_constants:g}]"

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["algo"] = self.algo.value
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EngineConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"Unknown config keys: {', '.join(sorted(unknown))}")
        return cls(**data)


class ConfigLoader:
    """Reads and writes :class:`EngineConfig` files."""

    @staticmethod
    def _load_yaml(text: str) -> Any:
        try:
            import yaml
        except ImportError:
            raise ImportError(_YAML_HINT)
        return yaml.safe_load(text)

    @staticmethod
    def read_values(filepath: Union[str, Path]) -> Dict[str, Any]:
        """
        Raw key/value pairs of a config file.

        Raises:
            ConfigError: If the suffix is not recognized or the file is not a mapping
        """
        filepath = Path(filepath)
        text = filepath.read_text(encoding="utf-8")
        if filepath.suffix == ".json":
            data = json.loads(text)
        elif filepath.suffix in (".yaml", ".yml"):
            data = ConfigLoader._load_yaml(text)
        else:
            raise ConfigError(f"Unsupported config format: {filepath.suffix}")
        if data is None:
            return {}
        if not isinstance(data, dict):
            raise ConfigError(f"{filepath} must hold a mapping, got {type(data).__name__}")
        return data

    @staticmethod
    def load_from_file(filepath: Union[str, Path]) -> EngineConfig:
        return EngineConfig.from_dict(ConfigLoader.read_values(filepath))

    @staticmethod
    def save_to_file(config: EngineConfig, filepath: Union[str, Path]) -> None:
        filepath = Path(filepath)
        if filepath.suffix == ".json":
            text = json.dumps(config.to_dict(), indent=2)
        elif filepath.suffix in (".yaml", ".yml"):
            try:
                import yaml
            except ImportError:
                raise ImportError(_YAML_HINT)
            text = yaml.dump(config.to_dict(), default_flow_style=False)
        else:
            raise ConfigError(f"Unsupported config format: {filepath.suffix}")
        filepath.write_text(text, encoding="utf-8")

    @staticmethod
    def resolve(filepath: Optional[Union[str, Path]] = None, **overrides: Any) -> EngineConfig:
        """
        Build a config from flags, an optional file, the environment and defaults.

        Args:
            filepath: Optional JSON or YAML file
            **overrides: Flag values; ``None`` means the flag was not given

        Returns:
            The resolved configuration

        Examples:
            >>> ConfigLoader.resolve(algo="oracle", eps=None).algo
            <Algorithm.ORACLE: 'oracle'>
        """
        values: Dict[str, Any] = {}
        if filepath is not None:
            values.update(ConfigLoader.read_values(filepath))
        if "seed" not in values and os.environ.get(SEED_ENV):
            try:
                values["seed"] = int(os.environ[SEED_ENV])
            except ValueError:
                raise ConfigError(f"{SEED_ENV} must be an integer, got {os.environ[SEED_ENV]!r}")
        values.update({k: v for k, v in overrides.items() if v is not None})
        config = EngineConfig.from_dict(values)
        logger.debug(f"resolved config: {config.to_dict()}")
        return config
