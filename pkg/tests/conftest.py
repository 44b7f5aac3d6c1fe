from __future__ import annotations

from pathlib import Path
from unittest.mock import patch

import pytest

from happylab.reduction import HYPMC_BUDGET_ENV
from happylab.solvers import BUDGET_ENV
from happylab.state import OutputFormat, SolverName, state


@pytest.fixture(autouse=True)
def isolated(tmp_path: Path, monkeypatch):
    """Point the config file into tmp_path and reset the global state."""
    for name in (BUDGET_ENV, HYPMC_BUDGET_ENV, "HAPPYLAB_OUTPUT", "HAPPYLAB_SOLVER"):
        monkeypatch.delenv(name, raising=False)
    state.solver = SolverName.exact
    state.output = OutputFormat.table
    state.quiet = state.verbose = False
    state.budget = state.hypmc_budget = None
    state.workers = 1
    config_path = tmp_path / "home" / "config.json"
    with patch("happylab.commands.config.get_config_path", return_value=config_path):
        yield config_path
