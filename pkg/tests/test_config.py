"""Tests for `happylab config get/set/show/list/unset` and config-driven defaults."""

from __future__ import annotations

import json
from pathlib import Path
from unittest.mock import patch

from typer.testing import CliRunner

from happylab.main import app

runner = CliRunner()


def invoke(args: list, config_path: Path):
    with patch("happylab.commands.config.get_config_path", return_value=config_path):
        return runner.invoke(app, args)


# ---------------------------------------------------------------------------
# config set
# ---------------------------------------------------------------------------


class TestConfigSet:
    def test_set_exits_0(self, tmp_path):
        result = invoke(["config", "set", "solver", "float"], tmp_path / "config.json")
        assert result.exit_code == 0

    def test_set_writes_to_file(self, tmp_path):
        cfg_path = tmp_path / "config.json"
        invoke(["config", "set", "budget", "1e6"], cfg_path)
        data = json.loads(cfg_path.read_text())
        assert data["budget"] == 1000000

    def test_set_overwrites_existing_key(self, tmp_path):
        cfg_path = tmp_path / "config.json"
        invoke(["config", "set", "solver", "float"], cfg_path)
        invoke(["config", "set", "solver", "exact"], cfg_path)
        assert json.loads(cfg_path.read_text())["solver"] == "exact"

    def test_set_preserves_other_keys(self, tmp_path):
        cfg_path = tmp_path / "config.json"
        invoke(["config", "set", "solver", "float"], cfg_path)
        invoke(["config", "set", "workers", "2"], cfg_path)
        data = json.loads(cfg_path.read_text())
        assert data == {"solver": "float", "workers": 2}

    def test_set_json_output(self, tmp_path):
        result = invoke(["--output", "json", "config", "set", "hypmc_budget", "10"], tmp_path / "config.json")
        assert json.loads(result.output) == {"key": "hypmc_budget", "value": 10}

    def test_set_quiet_suppresses_output(self, tmp_path):
        result = invoke(["--quiet", "config", "set", "solver", "float"], tmp_path / "config.json")
        assert result.exit_code == 0
        assert result.output.strip() == ""

    def test_set_rejects_bad_value(self, tmp_path):
        cfg_path = tmp_path / "config.json"
        result = invoke(["config", "set", "solver", "gurobi"], cfg_path)
        assert result.exit_code == 2
        assert not cfg_path.exists()

    def test_set_rejects_non_positive_workers(self, tmp_path):
        assert invoke(["config", "set", "workers", "0"], tmp_path / "config.json").exit_code == 2

    def test_set_unknown_key_warns(self, tmp_path):
        cfg_path = tmp_path / "config.json"
        result = invoke(["config", "set", "colour", "blue"], cfg_path)
        assert result.exit_code == 0
        assert json.loads(cfg_path.read_text())["colour"] == "blue"


# ---------------------------------------------------------------------------
# config get / show
# ---------------------------------------------------------------------------


class TestConfigGet:
    def test_get_prints_value(self, tmp_path):
        cfg_path = tmp_path / "config.json"
        invoke(["config", "set", "solver", "float"], cfg_path)
        result = invoke(["config", "get", "solver"], cfg_path)
        assert result.exit_code == 0
        assert "float" in result.output

    def test_get_missing_key_exits_1(self, tmp_path):
        assert invoke(["config", "get", "solver"], tmp_path / "config.json").exit_code == 1

    def test_get_missing_key_json_output(self, tmp_path):
        result = invoke(["--output", "json", "config", "get", "solver"], tmp_path / "config.json")
        assert json.loads(result.output)["value"] is None

    def test_show_with_key(self, tmp_path):
        cfg_path = tmp_path / "config.json"
        invoke(["config", "set", "workers", "3"], cfg_path)
        result = invoke(["config", "show", "workers"], cfg_path)
        assert result.exit_code == 0
        assert "3" in result.output


# ---------------------------------------------------------------------------
# config list
# ---------------------------------------------------------------------------


class TestConfigList:
    def test_list_empty_shows_message(self, tmp_path):
        result = invoke(["config", "list"], tmp_path / "config.json")
        assert result.exit_code == 0
        assert "no configuration" in result.output.lower()

    def test_list_shows_keys_and_values(self, tmp_path):
        cfg_path = tmp_path / "config.json"
        invoke(["config", "set", "solver", "float"], cfg_path)
        result = invoke(["config", "list"], cfg_path)
        assert "solver" in result.output
        assert "float" in result.output

    def test_list_json_output(self, tmp_path):
        cfg_path = tmp_path / "config.json"
        invoke(["config", "set", "output", "csv"], cfg_path)
        result = invoke(["--output", "json", "config", "list"], cfg_path)
        assert json.loads(result.output) == {"output": "csv"}

    def test_show_no_arg_lists_all(self, tmp_path):
        cfg_path = tmp_path / "config.json"
        invoke(["config", "set", "solver", "float"], cfg_path)
        result = invoke(["config", "show"], cfg_path)
        assert "float" in result.output


# ---------------------------------------------------------------------------
# config unset
# ---------------------------------------------------------------------------


class TestConfigUnset:
    def test_unset_removes_key(self, tmp_path):
        cfg_path = tmp_path / "config.json"
        invoke(["config", "set", "solver", "float"], cfg_path)
        result = invoke(["config", "unset", "solver"], cfg_path)
        assert result.exit_code == 0
        assert "solver" not in json.loads(cfg_path.read_text())

    def test_unset_missing_key_exits_1(self, tmp_path):
        assert invoke(["config", "unset", "solver"], tmp_path / "config.json").exit_code == 1

    def test_unset_json_output(self, tmp_path):
        cfg_path = tmp_path / "config.json"
        invoke(["config", "set", "solver", "float"], cfg_path)
        result = invoke(["--output", "json", "config", "unset", "solver"], cfg_path)
        assert json.loads(result.output)["removed"] is True


# ---------------------------------------------------------------------------
# Config-driven defaults
# ---------------------------------------------------------------------------


class TestConfigDefaults:
    def test_output_from_config(self, tmp_path):
        cfg_path = tmp_path / "config.json"
        invoke(["config", "set", "output", "json"], cfg_path)
        result = invoke(["solve", "--gen", "gap:k=3"], cfg_path)
        assert json.loads(result.output)["value"]["exact"] == "2"

    def test_flag_beats_config(self, tmp_path):
        cfg_path = tmp_path / "config.json"
        invoke(["config", "set", "output", "json"], cfg_path)
        result = invoke(["--output", "csv", "solve", "--gen", "gap:k=3"], cfg_path)
        assert result.output.startswith("instance,")

    def test_corrupt_config_exits_2(self, tmp_path):
        cfg_path = tmp_path / "config.json"
        cfg_path.write_text("{not json")
        result = invoke(["solve", "--gen", "gap:k=3"], cfg_path)
        assert result.exit_code == 2

    def test_bad_config_value_exits_2(self, tmp_path):
        cfg_path = tmp_path / "config.json"
        cfg_path.write_text(json.dumps({"solver": "gurobi"}))
        assert invoke(["solve", "--gen", "gap:k=3"], cfg_path).exit_code == 2
