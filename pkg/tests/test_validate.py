"""Tests for `happylab validate`."""

from __future__ import annotations

import json
from pathlib import Path

from typer.testing import CliRunner

from happylab import formats
from happylab.generators import gen_gap_instance, random_hypergraph
from happylab.main import app

runner = CliRunner()


def invoke(args: list):
    return runner.invoke(app, args)


def write(tmp_path: Path, text: str, name: str = "inst.hg") -> Path:
    path = tmp_path / name
    path.write_text(text)
    return path


class TestValidateValid:
    def test_instance_exits_0(self, tmp_path: Path):
        path = tmp_path / "gap.hg"
        formats.write_instance(gen_gap_instance(3), path)
        result = invoke(["validate", str(path)])
        assert result.exit_code == 0
        assert "Valid" in result.output

    def test_instance_json(self, tmp_path: Path):
        path = tmp_path / "gap.hg"
        formats.write_instance(gen_gap_instance(3, "1/2", 0), path)
        out = json.loads(invoke(["--output", "json", "validate", str(path)]).output)
        assert out["valid"] is True
        assert out["errors"] == []
        assert out["summary"]["kind"] == "instance"
        assert out["summary"]["total_weight"] == "3/2"
        assert out["summary"]["terminals"] == {"1": 1, "2": 1, "3": 1}

    def test_hypergraph_json(self, tmp_path: Path):
        path = tmp_path / "h.hyp"
        formats.write_hypergraph(random_hypergraph(5, 3, 2, seed=1), path)
        out = json.loads(invoke(["--output", "json", "validate", str(path)]).output)
        assert out["summary"]["kind"] == "hypergraph"
        assert out["summary"]["hyperedges"] == 3

    def test_quiet(self, tmp_path: Path):
        path = tmp_path / "gap.hg"
        formats.write_instance(gen_gap_instance(2), path)
        result = invoke(["--quiet", "validate", str(path)])
        assert result.exit_code == 0
        assert result.output.strip() == ""


class TestValidateInvalid:
    def test_missing_file(self, tmp_path: Path):
        result = invoke(["validate", str(tmp_path / "nope.hg")])
        assert result.exit_code == 2

    def test_parse_error_exits_2(self, tmp_path: Path):
        path = write(tmp_path, "# happygraph v1\n3 0 2\n1 1\n")
        out = invoke(["--output", "json", "validate", str(path)])
        assert out.exit_code == 2
        data = json.loads(out.output)
        assert data["valid"] is False
        assert data["errors"][0]["field"] == "parse"

    def test_invariant_violation_exits_1(self, tmp_path: Path):
        path = write(tmp_path, "# happygraph v1\n2 0 3\n1 1\n1 2\n")
        result = invoke(["--output", "json", "validate", str(path)])
        assert result.exit_code == 1
        assert json.loads(result.output)["errors"][0]["field"] == "EmptyLabelClass"

    def test_negative_weight(self, tmp_path: Path):
        path = write(tmp_path, "# happygraph v1\n2 0 2\n1 -1\n1 2\n")
        result = invoke(["validate", str(path)])
        assert result.exit_code == 1
        assert "Invalid" in result.output

    def test_bad_hypergraph(self, tmp_path: Path):
        path = write(tmp_path, "# happyhyper v1\n2 0 2\n1 1\n", "h.hyp")
        assert invoke(["validate", str(path)]).exit_code == 1
