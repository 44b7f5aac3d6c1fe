"""Tests for `happylab check`."""

from __future__ import annotations

import json
from pathlib import Path
from unittest.mock import patch

from typer.testing import CliRunner

from happylab.checks import Failure, SuiteResult
from happylab.errors import BudgetExceeded, SolverFailure
from happylab.generators import gen_gap_instance
from happylab.main import app

runner = CliRunner()


def invoke(args: list):
    return runner.invoke(app, args)


def failing_run(name: str, trials: int, seed: int) -> SuiteResult:
    return SuiteResult(name, trials, seed, 1, (Failure(0, "f([x]) broke", gen_gap_instance(2)),))


class TestCheckPasses:
    def test_exits_0(self, tmp_path: Path):
        result = invoke(["check", "submodular", "--trials", "3", "--dump-dir", str(tmp_path)])
        assert result.exit_code == 0
        assert "All properties hold" in result.output

    def test_json(self, tmp_path: Path):
        result = invoke(["--output", "json", "check", "boundary", "-n", "3", "--dump-dir", str(tmp_path)])
        out = json.loads(result.output)
        assert out["passed"] is True
        assert out["suites"][0]["suite"] == "boundary"
        assert out["suites"][0]["trials"] == 3
        assert out["suites"][0]["dumped"] is None

    def test_all(self, tmp_path: Path):
        result = invoke(["--output", "csv", "check", "all", "-n", "1", "--dump-dir", str(tmp_path)])
        assert result.exit_code == 0
        assert len(result.output.splitlines()) == 1 + 7

    def test_quiet(self, tmp_path: Path):
        result = invoke(["--quiet", "check", "lovasz-forms", "-n", "2", "--dump-dir", str(tmp_path)])
        assert result.exit_code == 0
        assert result.output.strip() == ""


class TestCheckFails:
    def test_unknown_suite(self):
        result = invoke(["check", "nope"])
        assert result.exit_code == 2

    def test_failure_exits_1_and_dumps(self, tmp_path: Path):
        with patch("happylab.commands.check.run_suite", side_effect=failing_run):
            result = invoke(["check", "submodular", "--dump-dir", str(tmp_path)])
        assert result.exit_code == 1
        assert (tmp_path / "submodular-seed0-trial0.hg").exists()
        assert "f([x]) broke" in result.output

    def test_failure_json(self, tmp_path: Path):
        with patch("happylab.commands.check.run_suite", side_effect=failing_run):
            result = invoke(["--output", "json", "check", "boundary", "--dump-dir", str(tmp_path)])
        assert result.exit_code == 1
        out = json.loads(result.output)
        assert out["passed"] is False
        assert out["suites"][0]["failures"] == [{"trial": 0, "message": "f([x]) broke"}]
        assert out["suites"][0]["dumped"].endswith("boundary-seed0-trial0.hg")

    def test_budget_exceeded_exits_3(self, tmp_path: Path):
        with patch("happylab.commands.check.run_suite", side_effect=BudgetExceeded(15, 3, 1000)):
            result = invoke(["--output", "json", "check", "reduction", "--dump-dir", str(tmp_path)])
        assert result.exit_code == 3
        assert "3^15" in json.loads(result.output)["error"]

    def test_solver_failure_exits_1(self, tmp_path: Path):
        with patch("happylab.commands.check.run_suite", side_effect=SolverFailure("lp_mhv came back infeasible")):
            result = invoke(["check", "lovasz-lp-mhv", "--dump-dir", str(tmp_path)])
        assert result.exit_code == 1
