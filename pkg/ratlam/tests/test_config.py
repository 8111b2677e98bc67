import copy
import json

import pytest

from ratlam.config import DEFAULT_CONFIG, get_module_config, load_config, validate_config


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("RATLAM_CONFIG", raising=False)
    monkeypatch.delenv("RATLAM_LOG_LEVEL", raising=False)


class TestLoadConfig:
    """Test cases for load_config."""

    def test_defaults(self):
        config = load_config()
        assert config == DEFAULT_CONFIG
        assert config is not DEFAULT_CONFIG

    def test_deep_merge_keeps_sibling_keys(self):
        config = load_config(config_dict={"cpo": {"cell_budget": 5000}})
        assert config["cpo"]["cell_budget"] == 5000
        assert config["cpo"]["max_tower_height"] == DEFAULT_CONFIG["cpo"]["max_tower_height"]

    def test_defaults_are_not_mutated(self):
        before = copy.deepcopy(DEFAULT_CONFIG)
        load_config(config_dict={"cli": {"default_depth": 1}})
        assert DEFAULT_CONFIG == before

    def test_file(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"rational": {"dot_graph_name": "g"}}), encoding="utf-8")
        assert load_config(str(path))["rational"]["dot_graph_name"] == "g"

    def test_dict_overrides_file(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"cli": {"default_depth": 3}}), encoding="utf-8")
        config = load_config(str(path), {"cli": {"default_depth": 4}})
        assert config["cli"]["default_depth"] == 4

    def test_environment(self, tmp_path, monkeypatch):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"scheme": {"inline_aliases": True}}), encoding="utf-8")
        monkeypatch.setenv("RATLAM_CONFIG", str(path))
        monkeypatch.setenv("RATLAM_LOG_LEVEL", "DEBUG")
        config = load_config()
        assert config["scheme"]["inline_aliases"] is True
        assert config["global"]["log_level"] == "DEBUG"

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_config(str(tmp_path / "missing.json"))

    def test_module_config(self):
        config = load_config()
        assert get_module_config(config, "cli") == {"default_depth": 8}
        assert get_module_config(config, "nothing") == {}


class TestValidateConfig:
    """Test cases for validate_config."""

    def test_defaults_are_valid(self):
        assert validate_config(load_config())

    @pytest.mark.parametrize("update, message", [
        ({"cpo": {"default_tower_height": 0}}, "default_tower_height"),
        ({"cpo": {"max_tower_height": 1}}, "max_tower_height"),
        ({"cpo": {"base_chain": 1}}, "base_chain"),
        ({"cpo": {"cell_budget": 0}}, "cell_budget"),
        ({"cli": {"default_depth": -1}}, "default_depth"),
        ({"global": {"log_level": "LOUD"}}, "log_level"),
    ])
    def test_invalid_values(self, update, message):
        with pytest.raises(ValueError, match=message):
            validate_config(load_config(config_dict=update))

    def test_missing_section(self):
        config = load_config()
        del config["cpo"]
        with pytest.raises(ValueError, match="cpo"):
            validate_config(config)
