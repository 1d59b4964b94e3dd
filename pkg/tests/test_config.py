"""Tests for run configuration and its resolution order."""

import json

import pytest

from lazy_sssp.config import SEED_ENV, Algorithm, ConfigLoader, EngineConfig
from lazy_sssp.exceptions import ConfigError


class TestEngineConfig:
    def test_defaults(self):
        cfg = EngineConfig()
        assert cfg.algo is Algorithm.LAZY
        assert cfg.eps == 0.1
        assert cfg.label == "lazy"

    def test_algorithm_from_string(self):
        assert EngineConfig(algo="WarmUp").algo is Algorithm.WARMUP
        with pytest.raises(ConfigError, match="Unknown algorithm"):
            EngineConfig(algo="bellman-ford")

    @pytest.mark.parametrize(
        "kwargs", [{"eps": 0}, {"eps": 1.5}, {"depth": -1}, {"test_constants": 0}]
    )
    def test_rejects_bad_values(self, kwargs):
        with pytest.raises(ConfigError):
            EngineConfig(**kwargs)

    def test_label_with_test_constants(self):
        assert EngineConfig(test_constants=3).label == "lazy[test-constants=3]"
        assert EngineConfig(algo="warmup", test_constants=0.5).label == (
            "warmup[test-constants=0.5]"
        )

    def test_approximate_flags(self):
        assert [a.approximate for a in Algorithm] == [True, False, True, False]

    def test_dict_form(self):
        cfg = EngineConfig(algo="es", depth=7, seed=3)
        data = cfg.to_dict()
        assert data["algo"] == "es"
        assert EngineConfig.from_dict(data) == cfg

    def test_unknown_keys(self):
        with pytest.raises(ConfigError, match="colour"):
            EngineConfig.from_dict({"colour": "blue"})


class TestConfigLoader:
    def test_json_file(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"algo": "oracle", "eps": 0.5}))
        cfg = ConfigLoader.load_from_file(path)
        assert cfg.algo is Algorithm.ORACLE
        assert cfg.eps == 0.5

    def test_yaml_file(self, tmp_path):
        pytest.importorskip("yaml")
        path = tmp_path / "run.yaml"
        path.write_text("algo: es\ndepth: 4\n")
        assert ConfigLoader.load_from_file(path) == EngineConfig(algo="es", depth=4)

    def test_yaml_save_and_load(self, tmp_path):
        pytest.importorskip("yaml")
        cfg = EngineConfig(algo="warmup", eps=0.25, test_constants=2.0)
        path = tmp_path / "run.yml"
        ConfigLoader.save_to_file(cfg, path)
        assert ConfigLoader.load_from_file(path) == cfg

    def test_empty_yaml_is_defaults(self, tmp_path):
        pytest.importorskip("yaml")
        path = tmp_path / "empty.yaml"
        path.write_text("")
        assert ConfigLoader.load_from_file(path) == EngineConfig()

    def test_unsupported_suffix(self, tmp_path):
        path = tmp_path / "run.toml"
        path.write_text("algo = 'es'\n")
        with pytest.raises(ConfigError, match="Unsupported"):
            ConfigLoader.load_from_file(path)
        with pytest.raises(ConfigError):
            ConfigLoader.save_to_file(EngineConfig(), path)

    def test_non_mapping(self, tmp_path):
        path = tmp_path / "list.json"
        path.write_text("[1, 2]")
        with pytest.raises(ConfigError, match="mapping"):
            ConfigLoader.read_values(path)


class TestResolve:
    def test_flags_override_file(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"algo": "es", "eps": 0.5, "seed": 9}))
        cfg = ConfigLoader.resolve(path, algo="oracle", eps=None, seed=None)
        assert cfg.algo is Algorithm.ORACLE
        assert cfg.eps == 0.5
        assert cfg.seed == 9

    def test_environment_seed(self, monkeypatch):
        monkeypatch.setenv(SEED_ENV, "42")
        assert ConfigLoader.resolve().seed == 42
        assert ConfigLoader.resolve(seed=7).seed == 7

    def test_file_seed_beats_environment(self, tmp_path, monkeypatch):
        monkeypatch.setenv(SEED_ENV, "42")
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"seed": 5}))
        assert ConfigLoader.resolve(path).seed == 5

    def test_bad_environment_seed(self, monkeypatch):
        monkeypatch.setenv(SEED_ENV, "soon")
        with pytest.raises(ConfigError, match=SEED_ENV):
            ConfigLoader.resolve()

    def test_no_environment(self, monkeypatch):
        monkeypatch.delenv(SEED_ENV, raising=False)
        assert ConfigLoader.resolve().seed == 0
