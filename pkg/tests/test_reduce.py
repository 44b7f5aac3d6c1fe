"""Tests for `happylab reduce`."""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from happylab import formats
from happylab.commands.reduce import map_path
from happylab.main import app

runner = CliRunner()

TRIANGLE = """\
# happyhyper v1
3 3 2
1 3
3 2 1 2
2 2 2 3
4 2 1 3
"""


def invoke(args: list):
    return runner.invoke(app, args)


@pytest.fixture
def triangle(tmp_path: Path) -> Path:
    path = tmp_path / "tri.hyp"
    path.write_text(TRIANGLE)
    return path


class TestReduce:
    def test_writes_instance_and_map(self, tmp_path: Path, triangle: Path):
        dest = tmp_path / "out" / "tri.hg"
        result = invoke(["reduce", str(triangle), "--dest", str(dest)])
        assert result.exit_code == 0
        inst = formats.read_instance(dest)
        assert inst.num_vertices == 6
        assert inst.precolor[:3] == (1, None, 2)
        assert map_path(dest).read_text() == "# happymap v1\n1 4\n2 5\n3 6\n"

    def test_map_path(self):
        assert map_path(Path("a/out.hg")) == Path("a/out.map")

    def test_solve_json(self, tmp_path: Path, triangle: Path):
        dest = tmp_path / "tri.hg"
        result = invoke(["--output", "json", "reduce", str(triangle), "-d", str(dest), "--solve"])
        assert result.exit_code == 0
        cut = json.loads(result.output)["cut"]
        assert cut["hyperedges"] == [2, 3]
        assert cut["weight"]["exact"] == "6"
        assert cut["muhv_value"]["exact"] == "6"
        assert cut["optimum"]["exact"] == "6"
        assert cut["disconnects"] is True

    def test_solve_table(self, tmp_path: Path, triangle: Path):
        result = invoke(["reduce", str(triangle), "-d", str(tmp_path / "tri.hg"), "--solve"])
        assert result.exit_code == 0
        assert "Disconnects" in result.output

    def test_hypmc_budget(self, tmp_path: Path, triangle: Path):
        result = runner.invoke(
            app,
            ["reduce", str(triangle), "-d", str(tmp_path / "tri.hg"), "--solve"],
            env={"HAPPYLAB_HYPMC_BUDGET": "2"},
        )
        assert result.exit_code == 3

    def test_missing_input(self, tmp_path: Path):
        assert invoke(["reduce", str(tmp_path / "x.hyp"), "-d", str(tmp_path / "y.hg")]).exit_code == 2

    def test_unparseable_input(self, tmp_path: Path):
        path = tmp_path / "bad.hyp"
        path.write_text("# happyhyper v1\n3 1 2\n1 3\n")
        assert invoke(["reduce", str(path), "-d", str(tmp_path / "y.hg")]).exit_code == 2
