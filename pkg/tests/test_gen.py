"""Tests for `happylab gen`."""

from __future__ import annotations

import json
from pathlib import Path

from typer.testing import CliRunner

from happylab import formats
from happylab.generators import gen_gap_instance
from happylab.main import app

runner = CliRunner()


def invoke(args: list):
    return runner.invoke(app, args)


class TestGen:
    def test_stdout(self):
        result = invoke(["gen", "gap:k=3"])
        assert result.exit_code == 0
        assert formats.loads_instance(result.output) == gen_gap_instance(3)

    def test_dest(self, tmp_path: Path):
        dest = tmp_path / "sub" / "g.hg"
        result = invoke(["gen", "gap:k=2,wt=3", "--dest", str(dest)])
        assert result.exit_code == 0
        assert formats.read_instance(dest) == gen_gap_instance(2, 3)
        assert "written" in result.output

    def test_dest_json(self, tmp_path: Path):
        dest = tmp_path / "h.hyp"
        result = invoke(["--output", "json", "gen", "hyper:nv=6,ne=4,k=3,seed=2", "-d", str(dest)])
        assert json.loads(result.output) == {"spec": "hyper:nv=6,ne=4,k=3,seed=2", "kind": "hypergraph", "dest": str(dest)}
        assert len(formats.read_hypergraph(dest).hyperedges) == 4

    def test_seeded_output_is_stable(self):
        args = ["gen", "rand:n=10,k=3,p=0.3,seed=9"]
        assert invoke(args).output == invoke(args).output

    def test_bad_spec(self):
        result = invoke(["gen", "petersen"])
        assert result.exit_code == 2
