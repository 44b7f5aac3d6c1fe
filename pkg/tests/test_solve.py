"""Tests for `happylab solve`."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from typer.testing import CliRunner

from happylab import formats
from happylab.generators import gen_contraction_pair
from happylab.main import app

runner = CliRunner()


def invoke(args: list):
    return runner.invoke(app, args)


def solve_json(*args: str) -> dict:
    result = invoke(["--output", "json", "solve", *args])
    assert result.exit_code == 0, result.output
    return json.loads(result.output)


# ---------------------------------------------------------------------------
# Values
# ---------------------------------------------------------------------------


class TestSolveValues:
    def test_gap_muhv_exact_quiet(self):
        result = invoke(["--quiet", "solve", "--gen", "gap:k=3", "--problem", "muhv", "--algo", "exact"])
        assert result.exit_code == 0
        assert result.output.strip() == "2"

    def test_gap_mhv_exact_quiet(self):
        result = invoke(["--quiet", "solve", "--gen", "gap:k=3", "--problem", "mhv"])
        assert result.output.strip() == "1"

    def test_defaults_are_muhv_exact(self):
        out = solve_json("--gen", "gap:k=3")
        assert out["objective"] == "muhv"
        assert out["algorithm"] == "exact"
        assert out["value"]["exact"] == "2"

    def test_from_file(self, tmp_path: Path):
        path = tmp_path / "orig.hg"
        formats.write_instance(gen_contraction_pair(10, 1).original, path)
        out = solve_json("--input", str(path))
        assert out["value"] == {"exact": "6", "decimal": "6"}
        assert out["instance"] == str(path)

    def test_contracted_pair(self):
        assert solve_json("--gen", "pair:contracted=1")["value"]["exact"] == "25"

    def test_round_derand_with_lp_and_exact(self):
        out = solve_json("--gen", "gap:k=3", "--algo", "round-derand", "--with-lp", "--with-exact")
        assert out["value"]["exact"] == "2"
        assert out["lp_value"]["exact"] == "3/2"
        assert out["exact_value"]["exact"] == "2"
        assert out["gap_ratio"] == {"exact": "4/3", "decimal": "1.33333333333"}
        assert out["approx_ratio"]["exact"] == "1"
        assert out["seed"] is None

    def test_round_random_reports_seed(self):
        out = solve_json("--gen", "gap:k=3", "--algo", "round-random", "--seed", "11")
        assert out["seed"] == 11
        assert out["algorithm"] == "round-random"

    def test_greedy(self):
        out = solve_json("--gen", "gap:k=3", "--algo", "greedy", "--problem", "mhv")
        assert out["value"]["exact"] == "1"

    def test_float_solver(self):
        result = invoke(["--output", "json", "--solver", "float", "solve", "--gen", "gap:k=3", "--algo", "round-derand", "--with-lp"])
        assert result.exit_code == 0
        out = json.loads(result.output)
        assert float(out["lp_value"]["decimal"]) == 1.5

    def test_workers(self):
        out = solve_json("--gen", "rand:n=8,k=3,seed=2", "--workers", "2")
        single = solve_json("--gen", "rand:n=8,k=3,seed=2")
        assert out["value"] == single["value"]
        assert out["coloring"] == single["coloring"]


# ---------------------------------------------------------------------------
# Output formats
# ---------------------------------------------------------------------------


class TestSolveOutput:
    def test_json_is_deterministic(self):
        args = ["--output", "json", "solve", "--gen", "rand:n=7,k=3,seed=5", "--algo", "round-random", "--seed", "3"]
        assert invoke(args).output == invoke(args).output

    def test_json_flag(self):
        result = invoke(["solve", "--gen", "gap:k=3", "--json"])
        assert json.loads(result.output)["value"]["exact"] == "2"

    def test_csv_flag(self):
        result = invoke(["solve", "--gen", "gap:k=3", "--csv", "--with-lp"])
        rows = list(csv.DictReader(io.StringIO(result.output)))
        assert rows[0]["value"] == "2"
        assert rows[0]["lp_value"] == "3/2"
        assert rows[0]["lp_value_decimal"] == "1.5"

    def test_json_and_csv_conflict(self):
        result = invoke(["solve", "--gen", "gap:k=3", "--json", "--csv"])
        assert result.exit_code == 2

    def test_table(self):
        result = invoke(["solve", "--gen", "gap:k=3", "--with-lp"])
        assert result.exit_code == 0
        assert "MUHV" in result.output
        assert "3/2" in result.output

    def test_timing(self):
        out = solve_json("--gen", "gap:k=3", "--timing")
        assert out["wall_time"] >= 0

    def test_no_timing_by_default(self):
        assert "wall_time" not in solve_json("--gen", "gap:k=3")

    def test_export_lp(self, tmp_path: Path):
        dest = tmp_path / "model.lp"
        result = invoke(["--quiet", "solve", "--gen", "gap:k=3", "--problem", "mhv", "--export-lp", str(dest)])
        assert result.exit_code == 0
        text = dest.read_text()
        assert "Maximize" in text
        assert text.rstrip().endswith("End")


# ---------------------------------------------------------------------------
# Config files and budgets
# ---------------------------------------------------------------------------


class TestSolveConfig:
    def test_config_file(self, tmp_path: Path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("gen = gap:k=3\nproblem = mhv\n# comment\nalgo = round-derand\n")
        out = solve_json("--config", str(cfg))
        assert out["objective"] == "mhv"
        assert out["algorithm"] == "round-derand"
        assert out["value"]["exact"] == "1"

    def test_flags_override_config(self, tmp_path: Path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("gen = gap:k=3\nproblem = mhv\n")
        assert solve_json("--config", str(cfg), "--problem", "muhv")["value"]["exact"] == "2"

    def test_config_unknown_key(self, tmp_path: Path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("colour = blue\n")
        assert invoke(["solve", "--config", str(cfg)]).exit_code == 2

    def test_config_bad_value(self, tmp_path: Path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("gen = gap:k=3\nalgo = magic\n")
        assert invoke(["solve", "--config", str(cfg)]).exit_code == 2

    def test_config_missing(self, tmp_path: Path):
        assert invoke(["solve", "--config", str(tmp_path / "nope.cfg")]).exit_code == 2

    def test_budget_exceeded(self):
        result = invoke(["--budget", "1", "solve", "--gen", "gap:k=3"])
        assert result.exit_code == 3

    def test_budget_exceeded_json(self):
        result = invoke(["--budget", "1", "--output", "json", "solve", "--gen", "gap:k=3"])
        assert result.exit_code == 3
        assert "budget" in json.loads(result.output)["error"]

    def test_budget_from_environment(self):
        result = runner.invoke(app, ["solve", "--gen", "gap:k=3"], env={"HAPPYLAB_BUDGET": "5"})
        assert result.exit_code == 3

    def test_budget_from_user_config(self, isolated: Path):
        isolated.parent.mkdir(parents=True)
        isolated.write_text(json.dumps({"budget": 5}))
        assert invoke(["solve", "--gen", "gap:k=3"]).exit_code == 3


# ---------------------------------------------------------------------------
# Bad input
# ---------------------------------------------------------------------------


class TestSolveErrors:
    def test_missing_file(self, tmp_path: Path):
        assert invoke(["solve", "--input", str(tmp_path / "missing.hg")]).exit_code == 2

    def test_unparseable_file(self, tmp_path: Path):
        path = tmp_path / "bad.hg"
        path.write_text("# happygraph v1\n2 1\n")
        assert invoke(["solve", "--input", str(path)]).exit_code == 2

    def test_invalid_instance(self, tmp_path: Path):
        path = tmp_path / "bad.hg"
        path.write_text("# happygraph v1\n2 0 3\n1 1\n1 2\n")
        assert invoke(["solve", "--input", str(path)]).exit_code == 2

    def test_neither_input_nor_gen(self):
        assert invoke(["solve"]).exit_code == 2

    def test_both_input_and_gen(self, tmp_path: Path):
        assert invoke(["solve", "--input", "x.hg", "--gen", "gap:k=3"]).exit_code == 2

    def test_bad_gen_spec(self):
        assert invoke(["solve", "--gen", "gap:k=1"]).exit_code == 2

    def test_hypergraph_gen_rejected(self):
        assert invoke(["solve", "--gen", "hyper:nv=4,ne=2,k=2"]).exit_code == 2

    def test_unknown_algorithm(self):
        assert invoke(["solve", "--gen", "gap:k=3", "--algo", "magic"]).exit_code == 2
