from __future__ import annotations

from enum import Enum
from typing import Optional


class OutputFormat(str, Enum):
    table = "table"
    json = "json"
    csv = "csv"


class SolverName(str, Enum):
    exact = "exact"
    float = "float"
    highs = "highs"


class AppState:
    """Global mutable state populated by the root CLI callback."""

    def __init__(self) -> None:
        self.solver: SolverName = SolverName.exact
        self.output: OutputFormat = OutputFormat.table
        self.quiet: bool = False
        self.verbose: bool = False
        self.budget: Optional[int] = None
        self.hypmc_budget: Optional[int] = None
        self.workers: int = 1

    @property
    def is_machine_readable(self) -> bool:
        return self.output in (OutputFormat.json, OutputFormat.csv)


# Singleton accessed by every command module.
state = AppState()
